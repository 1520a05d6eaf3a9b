"""The coefficients beta(v, w, nu) and the formal logarithm built from them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .extract import FiberSolver, power_cost
from .laurent import LaurentPolynomial, TermLimitError, ZZ, max_terms, multiply, power
from .polytope import interior_points_of
from .series import TruncatedSeries


def _interior(f, v, w):
    pts = interior_points_of(f)
    for x in (v, w):
        if tuple(x) not in pts:
            raise ValueError(f"{tuple(x)} is not an interior lattice point of the Newton polytope")
    return pts


def _target(v, w, nu):
    return tuple(nu * b - a for a, b in zip(v, w))


def beta(f: LaurentPolynomial, v, w, nu: int) -> int:
    """Coefficient of ``t**(nu*w - v)`` in ``f**(nu - 1)``, by direct expansion."""
    if nu < 1:
        raise ValueError("nu must be at least 1")
    _interior(f, v, w)
    return power(f.change_ring(ZZ), nu - 1).coefficient(_target(v, w, nu))


@dataclass(frozen=True)
class BetaTable:
    points: tuple
    max_nu: int
    entries: dict  # (v, w, nu) -> int

    def __getitem__(self, key):
        return self.entries[key]

    def rows(self):
        """``(v, w, nu, beta)`` tuples in a fixed order."""
        return [(v, w, nu, self.entries[(v, w, nu)]) for v in self.points for w in self.points for nu in range(1, self.max_nu + 1)]

    def to_tsv(self) -> str:
        lines = ["v\tw\tnu\tbeta"]
        for v, w, nu, b in self.rows():
            lines.append(f"{','.join(map(str, v))}\t{','.join(map(str, w))}\t{nu}\t{b}")
        return "\n".join(lines) + "\n"


def beta_table(f: LaurentPolynomial, max_nu: int, method: str = "auto") -> BetaTable:
    """All ``beta(v, w, nu)`` for interior ``v, w`` and ``1 <= nu <= max_nu``.

    The ``"power"`` method walks ``f**(nu-1) = f**(nu-2) * f`` once; ``"fiber"``
    reads each entry from the multinomial expansion, which is far cheaper when
    the polytope is a simplex.
    """
    f = f.change_ring(ZZ)
    pts = tuple(interior_points_of(f))
    if method == "auto":
        solver = FiberSolver(f)
        fiber = sum(solver.count_bound(nu - 1) for nu in range(1, max_nu + 1)) * len(pts) ** 2
        walk = sum(power_cost(f, nu - 1) for nu in range(1, max_nu + 1))
        method = "fiber" if fiber <= walk else "power"
    entries = {}
    if method == "fiber":
        solver = FiberSolver(f)
        for nu in range(1, max_nu + 1):
            for v in pts:
                for w in pts:
                    entries[(v, w, nu)] = solver.exact(nu - 1, _target(v, w, nu))
    elif method == "power":
        running = LaurentPolynomial.one(f.d)
        for nu in range(1, max_nu + 1):
            if nu > 1:
                running = multiply(running, f)
                if len(running) > max_terms():
                    raise TermLimitError("beta table power exceeds the term limit")
            for v in pts:
                for w in pts:
                    entries[(v, w, nu)] = running.coefficient(_target(v, w, nu))
    else:
        raise ValueError(f"unknown method {method!r}")
    return BetaTable(pts, max_nu, entries)


@dataclass(frozen=True)
class LogSeries:
    """Components ``L_v`` in the variables ``tau_w`` (one per interior point)."""

    points: tuple
    components: tuple
    D: int

    @property
    def N(self) -> int:
        return len(self.points)

    def to_json(self) -> list:
        out = []
        for v, comp in zip(self.points, self.components):
            for mono, c in comp.items():
                out.append({"component": list(v), "monomial": list(mono), "coeff": _ratstr(c)})
        return out


def _ratstr(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def log_series(f: LaurentPolynomial, D: int, table: BetaTable | None = None) -> LogSeries:
    """``L_v = sum_w sum_nu beta(v, w, nu) tau_w**nu / nu`` truncated at degree ``D``."""
    if D < 1:
        raise ValueError("truncation degree must be at least 1")
    if table is None or table.max_nu < D:
        table = beta_table(f, D)
    pts = table.points
    N = len(pts)
    comps = []
    for v in pts:
        coeffs = {}
        for j, w in enumerate(pts):
            for nu in range(1, D + 1):
                b = table[(v, w, nu)]
                if b:
                    idx = [0] * N
                    idx[j] = nu
                    coeffs[tuple(idx)] = Fraction(b, nu)
        comps.append(TruncatedSeries(N, D, coeffs))
    return LogSeries(pts, tuple(comps), D)


def signed_pf_series(f: LaurentPolynomial, v, w, D: int, signed: bool = True, table: BetaTable | None = None) -> TruncatedSeries:
    """Univariate ``sum_nu (-1)**(nu-1) beta(v, w, nu) tau**(nu-1)`` through ``tau**D``.

    ``signed=False`` drops the alternating sign.
    """
    v, w = tuple(v), tuple(w)
    if table is None:
        _interior(f, v, w)
        table = beta_table(f, D + 1)
    coeffs = []
    for nu in range(1, D + 2):
        b = table[(v, w, nu)]
        coeffs.append(-b if signed and (nu - 1) % 2 else b)
    return TruncatedSeries.univariate(coeffs, D)
