"""Coefficients of ``f**n`` at chosen exponents, without expanding ``f**n``.

The coefficient of ``t**e`` in ``f**n`` is a sum of multinomial terms over the
nonnegative integer vectors ``k`` with ``sum(k) == n`` and
``sum(k_i * u_i) == e``, where ``u_i`` runs over the support of ``f``.  Those
vectors form the lattice points of a polytope of dimension ``m - d - 1``
(``m`` support points); for a simplex Newton polytope there is at most one.
Modulo ``p**M`` the multinomials are evaluated from unit parts of factorials,
so ``n`` can reach millions.

``power_coefficients`` picks between this route and plain modular powering.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from . import _kernels
from .laurent import LaurentPolynomial, ModPrimePower, TermLimitError, max_terms, power
from .polytope import HypothesisError, _rank, det


@lru_cache(maxsize=16)
def unit_table(p: int, q: int) -> np.ndarray:
    table = _kernels.unit_prefix(p, q)
    table.setflags(write=False)
    return table


def compositions(n: int, parts: int) -> np.ndarray:
    """All rows of ``parts`` nonnegative integers with sum at most ``n``."""
    rows = np.zeros((1, 0), dtype=np.int64)
    rem = np.array([n], dtype=np.int64)
    for _ in range(parts):
        counts = rem + 1
        owner = np.repeat(np.arange(rows.shape[0]), counts)
        starts = np.repeat(np.cumsum(counts) - counts, counts)
        vals = np.arange(owner.size, dtype=np.int64) - starts
        rows = np.concatenate([rows[owner], vals[:, None]], axis=1)
        rem = rem[owner] - vals
    return rows


class FiberSolver:
    """Enumerates the exponent vectors ``k`` of the multinomial expansion of ``f**n``."""

    def __init__(self, f: LaurentPolynomial):
        exps, coeffs = f.arrays()
        if any(not isinstance(c, int) for c in coeffs):
            raise TypeError("fiber enumeration needs integer coefficients")
        self.d = f.d
        self.m = exps.shape[0]
        self.exps = exps
        self.coeffs = coeffs
        cols = [[1] + [int(x) for x in row] for row in exps]
        basis: list = []
        for i, c in enumerate(cols):
            if _rank([cols[j] for j in basis] + [c]) > len(basis):
                basis.append(i)
            if len(basis) == self.d + 1:
                break
        if len(basis) < self.d + 1:
            raise HypothesisError("support of f is not full-dimensional")
        self.basis = basis
        self.free = [i for i in range(self.m) if i not in basis]
        AB = [[cols[j][r] for j in basis] for r in range(self.d + 1)]
        self.detB = det(AB)
        n = self.d + 1
        # adjugate: adj[i][j] = (-1)^(i+j) * minor(j, i)
        adj = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [row[:i] + row[i + 1:] for k, row in enumerate(AB) if k != j]
                adj[i][j] = (-1) ** (i + j) * det(minor)
        self.adj = np.array(adj, dtype=np.int64)
        self.AF = np.array([[cols[j][r] for j in self.free] for r in range(n)], dtype=np.int64).reshape(n, len(self.free))

    def count_bound(self, n: int) -> int:
        return math.comb(n + len(self.free), len(self.free))

    def solutions(self, n: int, e) -> np.ndarray:
        """Rows ``k`` (length m, support order of ``f.items()``) solving the fiber equations."""
        F = len(self.free)
        bound = self.count_bound(n)
        if bound > max_terms():
            raise TermLimitError(f"fiber enumeration needs {bound} candidates (limit {max_terms()})")
        kf = compositions(n, F)
        b = np.array([n] + [int(x) for x in e], dtype=np.int64)
        rhs = b[:, None] - self.AF @ kf.T
        num = self.adj @ rhs
        ok = np.all(num % self.detB == 0, axis=0)
        kb = num // self.detB
        ok &= np.all(kb >= 0, axis=0)
        out = np.zeros((int(ok.sum()), self.m), dtype=np.int64)
        out[:, self.basis] = kb[:, ok].T
        out[:, self.free] = kf[ok]
        return out

    def exact(self, n: int, e) -> int:
        total = 0
        for row in self.solutions(n, e):
            term, left = 1, n
            for k, a in zip(row, self.coeffs):
                k = int(k)
                term *= math.comb(left, k) * a**k
                left -= k
            total += term
        return total

    def modular(self, n: int, e, p: int, M: int) -> int:
        q = p**M
        if q > _kernels.MAX_MODULUS:
            return self.exact(n, e) % q
        ks = self.solutions(n, e)
        return _kernels.multinomial_sum(n, ks, [c % q for c in self.coeffs], p, M, unit_table(p, q))


def power_cost(f: LaurentPolynomial, n: int) -> int:
    """Bounding-box size of ``f**n``: the memory of one dense modular power."""
    exps, _ = f.arrays()
    widths = exps.max(axis=0) - exps.min(axis=0)
    return int(np.prod([n * int(w) + 1 for w in widths], dtype=object))


def power_coefficients(f: LaurentPolynomial, n: int, targets, p=None, M=None, method="auto") -> list:
    """Coefficients of ``t**e`` in ``f**n`` for each ``e`` in ``targets``.

    Exact integers when ``p`` is None, otherwise residues mod ``p**M``.
    ``method`` is ``"power"``, ``"fiber"`` or ``"auto"``.
    """
    targets = [tuple(e) for e in targets]
    if method == "auto":
        try:
            solver = FiberSolver(f)
            fiber = solver.count_bound(n) * max(1, len(targets))
        except (HypothesisError, TypeError):
            solver, fiber = None, None
        method = "fiber" if fiber is not None and fiber <= power_cost(f, n) else "power"
    if method == "fiber":
        solver = FiberSolver(f)
        if p is None:
            return [solver.exact(n, e) for e in targets]
        return [solver.modular(n, e, p, M) for e in targets]
    if method != "power":
        raise ValueError(f"unknown method {method!r}")
    ring = None if p is None else ModPrimePower(p, M)
    g = power(f, n, ring)
    return [g.coefficient(e) for e in targets]
