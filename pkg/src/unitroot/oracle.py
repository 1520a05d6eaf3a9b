"""Point counts over F_p and the unit root of an ordinary elliptic curve.

These are independent of the Hasse-Witt machinery: nothing here expands a
power of a Laurent polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .catalog import cubic
from .hassewitt import frobenius_limit, is_ordinary
from .laurent import LaurentPolynomial

MAX_TORUS_POINTS = 10**8


class BadReductionError(ArithmeticError):
    pass


class SupersingularError(ArithmeticError):
    pass


def torus_point_count(f: LaurentPolynomial, p: int) -> int:
    """Number of ``t`` in ``((Z/p)^*)^d`` with ``f(t) == 0``."""
    if (p - 1) ** f.d > MAX_TORUS_POINTS:
        raise ValueError(f"{(p - 1) ** f.d} torus points exceed the brute-force bound {MAX_TORUS_POINTS}")
    if f.is_zero():
        return (p - 1) ** f.d
    exps, coeffs = f.arrays()
    return _kernels.torus_zeros(exps, [int(c) % p for c in coeffs], p)


def _cubic_form(x, y, z, p):
    return (x * x % p * y + x * y % p * y + z * z % p * z) % p


def projective_points(p: int) -> np.ndarray:
    """Representatives of P^2(F_p), one row per point."""
    r = np.arange(p, dtype=np.int64)
    xs, ys = np.meshgrid(r, r, indexing="ij")
    affine = np.stack([xs.ravel(), ys.ravel(), np.ones(p * p, dtype=np.int64)], axis=1)
    line = np.stack([r, np.ones(p, dtype=np.int64), np.zeros(p, dtype=np.int64)], axis=1)
    return np.concatenate([affine, line, np.array([[1, 0, 0]], dtype=np.int64)])


def cubic_points(p: int) -> np.ndarray:
    """Points of ``x^2 y + x y^2 + z^3 = 0`` in P^2(F_p); the closure of ``t1 + t2 + 1/(t1 t2) = 0``."""
    pts = projective_points(p)
    vals = _cubic_form(pts[:, 0], pts[:, 1], pts[:, 2], p)
    return pts[vals == 0]


def cubic_is_smooth(p: int) -> bool:
    """True if no point of the cubic over F_p is singular (brute force over the gradient)."""
    pts = cubic_points(p)
    x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
    gx = (2 * x * y + y * y) % p
    gy = (x * x + 2 * x * y) % p
    gz = 3 * z * z % p
    return not np.any((gx == 0) & (gy == 0) & (gz == 0))


def cubic_ap(p: int) -> int:
    """``a_p = p + 1 - #X(F_p)`` for the plane cubic ``x^2 y + x y^2 + z^3 = 0``."""
    if not cubic_is_smooth(p):
        raise BadReductionError(f"the cubic has bad reduction at p={p}")
    return p + 1 - len(cubic_points(p))


def cubic_boundary_count(p: int) -> int:
    """Points of the cubic with ``x*y*z == 0``."""
    pts = cubic_points(p)
    return int(np.count_nonzero((pts[:, 0] * pts[:, 1] * pts[:, 2]) % p == 0))


def unit_root(a_p: int, p: int, K: int) -> int:
    """Root ``u = a_p (mod p)`` of ``T^2 - a_p T + p``, Hensel-lifted to ``p**K``."""
    if a_p % p == 0:
        raise SupersingularError(f"p={p} divides a_p={a_p}: no unit root")
    q = p**K
    u = a_p % p
    prec = 1
    while prec < K:
        prec = min(2 * prec, K)
        mod = p**prec
        fu = (u * u - a_p * u + p) % mod
        du = (2 * u - a_p) % mod
        u = (u - fu * pow(du, -1, mod)) % mod
    return u % q


@dataclass(frozen=True)
class CrosscheckReport:
    p: int
    precision: int
    a_p: int
    unit_root: int | None
    alpha: int | None

    @property
    def match(self) -> bool:
        # both None: the curve is supersingular and alpha_1 is not invertible
        return self.unit_root == self.alpha

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "a_p": self.a_p,
            "unit_root": None if self.unit_root is None else str(self.unit_root),
            "alpha": None if self.alpha is None else str(self.alpha),
            "match": self.match,
            "precision": self.precision,
        }


def crosscheck_unit_root(p: int, K: int) -> CrosscheckReport:
    """Compare the Frobenius limit of ``t1 + t2 + 1/(t1 t2)`` with the curve's unit root mod ``p**K``.

    At a supersingular prime neither side has a value and the report matches
    exactly when both sides agree on that.
    """
    f = cubic()
    a_p = cubic_ap(p)
    u = unit_root(a_p, p, K) if a_p % p else None
    alpha = frobenius_limit(f, p, K).alpha.entries[0][0] if is_ordinary(f, p) else None
    return CrosscheckReport(p, K, a_p, u, alpha)
