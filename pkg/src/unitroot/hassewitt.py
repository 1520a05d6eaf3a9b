"""Higher Hasse-Witt matrices, their congruences and the unit-root Frobenius limit.

The base ring is Z inside Z_p, so the Frobenius lift is the identity and
``alpha_s^sigma == alpha_s`` throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .extract import power_coefficients
from .laurent import LaurentPolynomial, ZZ
from .padic import NotInvertibleError, PadicMatrix, matrix_inverse_mod
from .polytope import interior_points_of


class NotOrdinaryError(ArithmeticError):
    def __init__(self, p: int):
        super().__init__(f"alpha_1 is not invertible modulo p={p}: the reduction is not ordinary")
        self.p = p


def _entries(f, p, s, M, method):
    pts = interior_points_of(f)
    n = p**s - 1
    q = p**s
    targets = [tuple(q * b - a for a, b in zip(u, v)) for u in pts for v in pts]
    vals = power_coefficients(f, n, targets, p=p if M is not None else None, M=M, method=method)
    N = len(pts)
    return pts, [vals[i * N:(i + 1) * N] for i in range(N)]


@lru_cache(maxsize=256)
def _hasse_witt_cached(f, p, s, M, method):
    pts, rows = _entries(f, p, s, M, method)
    return PadicMatrix(p, M, tuple(map(tuple, rows)), tuple(pts))


def hasse_witt(f: LaurentPolynomial, p: int, s: int, M: int, method: str = "auto") -> PadicMatrix:
    """``alpha_s`` mod ``p**M``: entry ``(u, v)`` is the coefficient of ``t**(p**s*v - u)`` in ``f**(p**s - 1)``."""
    if s < 0 or M < 1:
        raise ValueError("need s >= 0 and M >= 1")
    return _hasse_witt_cached(f.change_ring(ZZ), p, s, M, method)


def hasse_witt_exact(f: LaurentPolynomial, p: int, s: int, method: str = "auto") -> list:
    """``alpha_s`` as a list of rows of exact integers."""
    return _entries(f.change_ring(ZZ), p, s, None, method)[1]


def is_ordinary(f: LaurentPolynomial, p: int) -> bool:
    return hasse_witt(f, p, 1, 1).is_unit()


@dataclass(frozen=True)
class CongruenceReport:
    kind: int
    p: int
    precision: int
    steps: tuple  # (s, required agreement, observed agreement)

    @property
    def passed(self) -> bool:
        return all(obs >= req for _, req, obs in self.steps)

    def to_json(self) -> dict:
        return {
            "congruence": self.kind,
            "p": self.p,
            "precision": self.precision,
            "passed": self.passed,
            "steps": [{"s": s, "required": req, "observed": obs} for s, req, obs in self.steps],
        }


def congruence_check_1(f: LaurentPolynomial, p: int, s_max: int, method: str = "auto") -> CongruenceReport:
    """``alpha_s == alpha_1**s (mod p)`` for ``1 <= s <= s_max``."""
    a1 = hasse_witt(f, p, 1, 1, method)
    acc = a1
    steps = []
    for s in range(1, s_max + 1):
        if s > 1:
            acc = acc @ a1
        steps.append((s, 1, hasse_witt(f, p, s, 1, method).agreement(acc)))
    return CongruenceReport(1, p, 1, tuple(steps))


def congruence_check_2(f: LaurentPolynomial, p: int, s_max: int, M: int | None = None, method: str = "auto") -> CongruenceReport:
    """``alpha_{s+1} alpha_s^{-1} == alpha_s alpha_{s-1}^{-1} (mod p**s)`` for ``1 <= s < s_max``."""
    M = s_max if M is None else M
    if M < s_max:
        raise ValueError("precision M must be at least s_max")
    if not is_ordinary(f, p):
        raise NotOrdinaryError(p)
    alphas = [hasse_witt(f, p, s, M, method) for s in range(s_max + 1)]
    quot = [alphas[s + 1] @ matrix_inverse_mod(alphas[s]) for s in range(s_max)]
    steps = tuple((s, s, quot[s].agreement(quot[s - 1])) for s in range(1, s_max))
    return CongruenceReport(2, p, M, steps)


@dataclass(frozen=True)
class LimitResult:
    alpha: PadicMatrix
    trace: tuple  # (s, agreement of alpha_{s+1} alpha_s^{-1} with the previous quotient)

    def to_json(self) -> dict:
        out = self.alpha.to_json()
        out["trace"] = [{"s": s, "agreement": a} for s, a in self.trace]
        return out


def frobenius_limit(f: LaurentPolynomial, p: int, K: int, method: str = "auto") -> LimitResult:
    """``alpha`` mod ``p**K`` as ``alpha_{K+1} alpha_K^{-1}`` computed at precision ``K``.

    Every ``alpha_s`` has unit determinant once ``alpha_1`` does, so inversion
    mod ``p**K`` loses no digits.
    """
    if K < 1:
        raise ValueError("precision K must be at least 1")
    if not is_ordinary(f, p):
        raise NotOrdinaryError(p)
    alphas = [hasse_witt(f, p, s, K, method) for s in range(K + 2)]
    quot = []
    for s in range(K + 1):
        try:
            quot.append(alphas[s + 1] @ matrix_inverse_mod(alphas[s]))
        except NotInvertibleError as exc:  # pragma: no cover - excluded by ordinarity
            raise NotOrdinaryError(p) from exc
    trace = tuple((s, quot[s].agreement(quot[s - 1])) for s in range(1, K + 1))
    return LimitResult(quot[K], trace)
