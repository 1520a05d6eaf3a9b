"""Formal group laws ``F(x, y) = L^{-1}(L(x) + L(y))`` and their audits."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from sympy import primefactors

from .formal_log import LogSeries, _ratstr, log_series
from .laurent import LaurentPolynomial
from .series import TruncatedSeries, compose, identity, invert_composition


@dataclass(frozen=True)
class GroupLaw:
    """``N`` series in the ``2N`` variables ``(x_1..x_N, y_1..y_N)``."""

    components: tuple
    D: int
    labels: tuple = field(default=())

    @property
    def N(self) -> int:
        return len(self.components)

    def to_json(self) -> list:
        N = self.N
        labels = self.labels or tuple(range(N))
        out = []
        for lab, comp in zip(labels, self.components):
            for mono, c in comp.items():
                out.append({
                    "component": list(lab) if isinstance(lab, tuple) else lab,
                    "monomial": {"x": list(mono[:N]), "y": list(mono[N:])},
                    "coeff": _ratstr(c),
                })
        return out


def group_law_from_log(L, labels=()) -> GroupLaw:
    """Group law of the logarithm ``L`` (N series in N variables with identity linear part)."""
    L = list(L)
    N = len(L)
    D = min(s.D for s in L)
    Linv = invert_composition(L)
    Lx = [s.embed(2 * N, list(range(N))) for s in L]
    Ly = [s.embed(2 * N, list(range(N, 2 * N))) for s in L]
    summed = [a + b for a, b in zip(Lx, Ly)]
    return GroupLaw(tuple(compose(Linv, summed)), D, tuple(labels))


def group_law(f: LaurentPolynomial, D: int, log: LogSeries | None = None) -> GroupLaw:
    if D < 2:
        raise ValueError("group law needs truncation degree at least 2")
    log = log or log_series(f, D)
    return group_law_from_log(log.components, log.points)


@dataclass(frozen=True)
class IntegralityReport:
    D: int
    offending: tuple  # (component index, monomial, coefficient)

    @property
    def integral(self) -> bool:
        return not self.offending

    @property
    def denominator_primes(self) -> tuple:
        primes = set()
        for _, _, c in self.offending:
            primes.update(primefactors(Fraction(c).denominator))
        return tuple(sorted(primes))

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "integral": self.integral,
            "denominator_primes": list(self.denominator_primes),
            "offending": [{"component": i, "monomial": list(m), "coeff": _ratstr(c)} for i, m, c in self.offending],
        }


def integrality_report(F: GroupLaw) -> IntegralityReport:
    bad = []
    for i, comp in enumerate(F.components):
        for mono, c in comp.items():
            if isinstance(c, Fraction) and c.denominator != 1:
                bad.append((i, mono, c))
    return IntegralityReport(F.D, tuple(bad))


@dataclass(frozen=True)
class AxiomsReport:
    identity: bool
    commutativity: bool
    associativity: bool

    @property
    def ok(self) -> bool:
        return self.identity and self.commutativity and self.associativity

    def to_json(self) -> dict:
        return {"identity": self.identity, "commutativity": self.commutativity, "associativity": self.associativity, "ok": self.ok}


def axioms_check(F: GroupLaw, associativity: bool = True) -> AxiomsReport:
    """Identity, commutativity and associativity of ``F`` through degree ``D``."""
    N, D = F.N, F.D
    comps = list(F.components)
    x = identity(N, D)
    zero = [TruncatedSeries(N, D) for _ in range(N)]
    ident_ok = compose(comps, x + zero) == x and compose(comps, zero + x) == x
    # F(y, x)
    swapped = identity(2 * N, D)
    swapped = swapped[N:] + swapped[:N]
    comm_ok = compose(comps, swapped) == [c.truncate(D) for c in comps]
    assoc_ok = True
    if associativity:
        three = identity(3 * N, D)
        xs, ys, zs = three[:N], three[N:2 * N], three[2 * N:]
        Fxy = compose(comps, xs + ys)
        Fyz = compose(comps, ys + zs)
        left = compose(comps, Fxy + zs)
        right = compose(comps, xs + Fyz)
        assoc_ok = left == right
    return AxiomsReport(ident_ok, comm_ok, assoc_ok)
