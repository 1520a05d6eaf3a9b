"""Differential operators that are polynomials in ``delta = tau d/dtau``.

Operators are kept in the normal form ``sum c[j, k] tau**k delta**j`` with
every power of ``tau`` to the left, using ``delta tau = tau (delta + 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence

from .grouplaw import GroupLaw, IntegralityReport, group_law_from_log, integrality_report
from .series import TruncatedSeries, _clean


class DegenerateRecurrenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PowerSeries1D:
    coeffs: tuple

    @property
    def D(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def of(cls, coeffs: Iterable) -> "PowerSeries1D":
        return cls(tuple(_clean(Fraction(c)) for c in coeffs))

    @classmethod
    def from_series(cls, s: TruncatedSeries) -> "PowerSeries1D":
        if s.m != 1:
            raise ValueError("expected a univariate series")
        return cls.of(s.coefficient((n,)) for n in range(s.D + 1))

    def __getitem__(self, n):
        return self.coeffs[n]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_series(self) -> TruncatedSeries:
        return TruncatedSeries.univariate(list(self.coeffs))

    def to_json(self) -> list:
        return [str(c) for c in self.coeffs]


def _as_1d(g) -> PowerSeries1D:
    if isinstance(g, PowerSeries1D):
        return g
    if isinstance(g, TruncatedSeries):
        return PowerSeries1D.from_series(g)
    return PowerSeries1D.of(g)


class EulerOperator:
    """``sum c * tau**k * delta**j`` stored as ``{(j, k): c}``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {(int(j), int(k)): _clean(Fraction(c)) for (j, k), c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c) -> "EulerOperator":
        return cls({(0, 0): c})

    @classmethod
    def tau(cls, k: int = 1) -> "EulerOperator":
        return cls({(0, k): 1})

    @classmethod
    def delta(cls, j: int = 1) -> "EulerOperator":
        return cls({(j, 0): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return EulerOperator(out)

    def __neg__(self):
        return EulerOperator({key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, EulerOperator):
            return EulerOperator({key: c * other for key, c in self.terms.items()})
        out: dict = {}
        for (b, a), c1 in self.terms.items():
            for (e, cpow), c2 in other.terms.items():
                # tau^a delta^b tau^cpow delta^e = tau^(a+cpow) (delta+cpow)^b delta^e
                for i in range(b + 1):
                    key = (i + e, a + cpow)
                    out[key] = out.get(key, 0) + c1 * c2 * comb(b, i) * cpow ** (b - i)
        return EulerOperator(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, EulerOperator) and self.terms == other.terms

    def __repr__(self):
        parts = [f"{c}*tau^{k}*delta^{j}" for (j, k), c in sorted(self.terms.items(), key=lambda t: (t[0][1], t[0][0]))]
        return "EulerOperator(" + " + ".join(parts) + ")"

    @property
    def delta_degree(self) -> int:
        return max((j for j, _ in self.terms), default=0)

    @property
    def tau_shift(self) -> int:
        return max((k for _, k in self.terms), default=0)

    def coefficient(self, j: int, k: int):
        return self.terms.get((j, k), 0)

    def tau_part(self, k: int) -> list:
        """Coefficients ``[c_0, c_1, ...]`` of the polynomial ``P_k`` with op = sum tau^k P_k(delta)."""
        deg = max((j for j, kk in self.terms if kk == k), default=-1)
        return [self.terms.get((j, k), 0) for j in range(deg + 1)]

    def conjugate(self, c) -> "EulerOperator":
        """Scale each ``tau**k`` coefficient by ``c**k``.

        If this operator kills ``g(tau)`` then the conjugate kills ``g(c*tau)``.
        """
        c = Fraction(c)
        return EulerOperator({(j, k): v * c**k for (j, k), v in self.terms.items()})

    def to_json(self) -> list:
        return [
            {"tau_pow": k, "delta_pow": j, "coeff": str(c)}
            for (j, k), c in sorted(self.terms.items(), key=lambda t: (t[0][1], t[0][0]))
        ]


def _poly_eval(coeffs: Sequence, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def apply(op: EulerOperator, g) -> PowerSeries1D:
    """``op(g)`` through ``tau**D``; exact there because every tau-shift is nonnegative."""
    g = _as_1d(g)
    D = g.D
    out = [0] * (D + 1)
    for (j, k), c in op.terms.items():
        for n in range(0, D + 1 - k):
            if g[n]:
                out[n + k] += c * n**j * g[n]
    return PowerSeries1D.of(out)


def series_solution(op: EulerOperator, D: int) -> PowerSeries1D:
    """The power-series solution of ``op g = 0`` with ``g(0) = 1``.

    Solves ``P_0(m) c_m = -sum_{k>=1} P_k(m-k) c_{m-k}`` degree by degree.
    """
    P = {k: op.tau_part(k) for k in sorted({k for _, k in op.terms})}
    P0 = P.get(0, [])
    if _poly_eval(P0, 0) != 0:
        raise DegenerateRecurrenceError("tau^0 part does not vanish at delta = 0; no normalized solution")
    c = [Fraction(1)]
    for m in range(1, D + 1):
        lead = _poly_eval(P0, m)
        if lead == 0:
            raise DegenerateRecurrenceError(f"leading factor vanishes at degree {m}")
        rhs = sum((_poly_eval(Pk, m - k) * c[m - k] for k, Pk in P.items() if 1 <= k <= m), Fraction(0))
        c.append(-rhs / lead)
    return PowerSeries1D.of(c)


@dataclass(frozen=True)
class AnnihilationReport:
    annihilated: bool
    checked_degree: int
    first_failure: int | None

    def to_json(self) -> dict:
        return {"annihilated": self.annihilated, "checked_degree": self.checked_degree, "first_failure": self.first_failure}


def annihilation_check(op: EulerOperator, g) -> AnnihilationReport:
    res = apply(op, g)
    first = next((n for n, c in enumerate(res.coeffs) if c), None)
    return AnnihilationReport(first is None, res.D, first)


def scale_variable(g, c) -> PowerSeries1D:
    """``g(c * tau)``."""
    g = _as_1d(g)
    c = Fraction(c)
    return PowerSeries1D.of(a * c**n for n, a in enumerate(g.coeffs))


# ---------------------------------------------------------------------------
# the operator families


def _theta_list(S, N):
    if N < 2:
        raise ValueError("N must be at least 2")
    S = sorted({Fraction(t) for t in S})
    if not S:
        raise ValueError("S must be nonempty")
    for t in S:
        if (t * N).denominator != 1:
            raise ValueError(f"N*theta is not an integer for theta={t}, N={N}")
        if not 1 <= t * N <= N - 1:
            raise ValueError(f"theta={t} is not of the form k/N with 1 <= k <= N-1")
    return S


def honda_operator(S, N: int) -> EulerOperator:
    """``tau**N prod(delta + N*theta) - delta**|S|``."""
    S = _theta_list(S, N)
    prod = EulerOperator.tau(N)
    for t in S:
        prod = prod * (EulerOperator.delta() + EulerOperator.const(int(t * N)))
    return prod - EulerOperator.delta(len(S))


def honda_solution(S, N: int, D: int) -> PowerSeries1D:
    """``g = sum A(n) tau**(N n)`` with ``A(0) = 1``, through ``tau**D``."""
    return series_solution(honda_operator(S, N), D)


def honda_hypothesis(S, N: int) -> bool:
    """Whether ``{N*theta}`` contains every reduced residue mod ``N``."""
    S = _theta_list(S, N)
    residues = {int(t * N) % N for t in S}
    return all(r in residues for r in range(1, N) if gcd(r, N) == 1)


def honda_group_law(S, N: int, D: int) -> tuple[GroupLaw, IntegralityReport]:
    """Group law of ``f(x) = integral of the Honda solution``, with its denominator report."""
    if not honda_hypothesis(S, N):
        raise ValueError("{N*theta : theta in S} must contain all reduced residues mod N")
    g = honda_solution(S, N, D - 1)
    log = TruncatedSeries.univariate([0] + [Fraction(c) / (n + 1) for n, c in enumerate(g.coeffs)], D)
    F = group_law_from_log([log])
    return F, integrality_report(F)


def pf_operator_cyclic(d: int) -> EulerOperator:
    """``(-d)**d tau**d (delta+1)...(delta+d-1) - delta**(d-1)``."""
    if d < 2:
        raise ValueError("d must be at least 2")
    op = EulerOperator({(0, d): (-d) ** d})
    for i in range(1, d):
        op = op * (EulerOperator.delta() + EulerOperator.const(i))
    return op - EulerOperator.delta(d - 1)


def pf_operator_1124() -> EulerOperator:
    """``4**4 tau**4 (delta+1)(delta+3) - delta**2``."""
    op = EulerOperator({(0, 4): 4**4})
    op = op * (EulerOperator.delta() + EulerOperator.const(1)) * (EulerOperator.delta() + EulerOperator.const(3))
    return op - EulerOperator.delta(2)
