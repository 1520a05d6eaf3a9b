"""Newton polytopes: exact facets, vertices and interior lattice points."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .laurent import LaurentPolynomial, glex_sorted

# brute-force facet search inspects every d-subset of the support
MAX_FACET_CANDIDATES = 200_000
MAX_BOX_CELLS = 20_000_000


class HypothesisError(ValueError):
    """The Newton polytope is not full-dimensional or has no interior lattice point."""


class PolytopeError(ValueError):
    pass


def _rank(rows) -> int:
    mat = [[Fraction(x) for x in r] for r in rows]
    if not mat:
        return 0
    rank, ncols = 0, len(mat[0])
    for c in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][c] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][c] != 0:
                k = mat[r][c] / mat[rank][c]
                mat[r] = [a - k * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def det(mat) -> int:
    """Integer determinant by Bareiss elimination."""
    a = [list(map(int, r)) for r in mat]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def affine_dimension(points) -> int:
    base = points[0]
    return _rank([[x - y for x, y in zip(p, base)] for p in points[1:]])


def _normal(points):
    """Primitive integer normal of the hyperplane through ``d`` points in Z^d, or None."""
    base = points[0]
    rows = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    d = len(base)
    normal = []
    for j in range(d):
        minor = [r[:j] + r[j + 1:] for r in rows]
        normal.append((-1) ** j * det(minor))
    g = math.gcd(*normal)
    if g == 0:
        return None
    return tuple(x // g for x in normal)


@dataclass(frozen=True)
class Facet:
    normal: tuple
    offset: int

    def value(self, x) -> int:
        """``<x, normal> + offset``; nonnegative on the polytope, zero on this facet."""
        return sum(a * b for a, b in zip(x, self.normal)) + self.offset


@dataclass(frozen=True)
class NewtonPolytope:
    d: int
    dim: int
    vertices: tuple
    facets: tuple = field(default=())

    @property
    def full_dimensional(self) -> bool:
        return self.dim == self.d

    def contains(self, x, strict=False) -> bool:
        if strict:
            return all(F.value(x) > 0 for F in self.facets)
        return all(F.value(x) >= 0 for F in self.facets)

    def to_json(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "facets": [{"normal": list(F.normal), "offset": F.offset} for F in self.facets],
        }


def _full_facets(points, d):
    n = len(points)
    if math.comb(n, d) > MAX_FACET_CANDIDATES:
        raise PolytopeError(
            f"facet search over {math.comb(n, d)} point subsets exceeds the supported size "
            f"({MAX_FACET_CANDIDATES}); reduce the support or the dimension"
        )
    facets = set()
    for subset in combinations(points, d):
        nrm = _normal(list(subset))
        if nrm is None:
            continue
        c = sum(a * b for a, b in zip(subset[0], nrm))
        vals = [sum(a * b for a, b in zip(p, nrm)) - c for p in points]
        if all(v >= 0 for v in vals):
            facets.add(Facet(nrm, -c))
        elif all(v <= 0 for v in vals):
            facets.add(Facet(tuple(-x for x in nrm), c))
    return sorted(facets, key=lambda F: (F.normal, F.offset), reverse=True)


def _vertices(points, facets, d):
    out = []
    for p in points:
        tight = [F.normal for F in facets if F.value(p) == 0]
        if len(tight) >= d and _rank(tight) == d:
            out.append(p)
    return out


def newton_polytope(f: LaurentPolynomial) -> NewtonPolytope:
    """Convex hull of the support of ``f`` with an irredundant facet list."""
    if f.is_zero():
        raise PolytopeError("the zero polynomial has no Newton polytope")
    points = f.support()
    d = f.d
    dim = affine_dimension(points)
    if dim == 0:
        return NewtonPolytope(d, 0, (points[0],), ())
    if dim == d:
        facets = _full_facets(points, d)
        return NewtonPolytope(d, d, tuple(glex_sorted(_vertices(points, facets, d))), tuple(facets))
    # lower-dimensional: find the extreme points through an injective coordinate projection
    base = points[0]
    diffs = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    for coords in combinations(range(d), dim):
        if _rank([[r[c] for c in coords] for r in diffs]) == dim:
            break
    proj = {tuple(p[c] for c in coords): p for p in points}
    sub = list(proj)
    verts = _vertices(sub, _full_facets(sub, dim), dim) if dim > 1 else [min(sub), max(sub)]
    return NewtonPolytope(d, dim, tuple(glex_sorted(proj[v] for v in verts)), ())


def _box_points(P: NewtonPolytope):
    verts = np.array(P.vertices, dtype=np.int64)
    lo, hi = verts.min(axis=0), verts.max(axis=0)
    cells = int(np.prod((hi - lo + 1).astype(object)))
    if cells > MAX_BOX_CELLS:
        raise PolytopeError(f"bounding box has {cells} lattice points; too large to scan")
    grid = np.indices(tuple(int(x) for x in hi - lo + 1)).reshape(P.d, -1).T + lo
    return grid


def _facet_values(P: NewtonPolytope, grid):
    normals = np.array([F.normal for F in P.facets], dtype=np.int64).reshape(-1, P.d)
    offsets = np.array([F.offset for F in P.facets], dtype=np.int64)
    return grid @ normals.T + offsets


def lattice_points(P: NewtonPolytope) -> list:
    """All lattice points of the closed polytope (full-dimensional case)."""
    if not P.full_dimensional:
        raise HypothesisError("polytope is not full-dimensional")
    grid = _box_points(P)
    keep = np.all(_facet_values(P, grid) >= 0, axis=1)
    return glex_sorted(tuple(int(x) for x in row) for row in grid[keep])


def interior_lattice_points(P: NewtonPolytope) -> list:
    """Lattice points strictly inside every facet, in descending graded-lex order."""
    if not P.full_dimensional:
        raise HypothesisError(f"Newton polytope has dimension {P.dim} < {P.d}")
    grid = _box_points(P)
    keep = np.all(_facet_values(P, grid) > 0, axis=1)
    return glex_sorted(tuple(int(x) for x in row) for row in grid[keep])


@dataclass(frozen=True)
class HypothesisReport:
    d: int
    dim: int
    interior_points: tuple

    @property
    def full_dimensional(self) -> bool:
        return self.dim == self.d

    @property
    def has_interior_point(self) -> bool:
        return len(self.interior_points) >= 1

    @property
    def ok(self) -> bool:
        return self.full_dimensional and self.has_interior_point

    def require(self):
        if not self.full_dimensional:
            raise HypothesisError(f"Newton polytope has dimension {self.dim} < {self.d}")
        if not self.has_interior_point:
            raise HypothesisError("the interior of the Newton polytope contains no lattice point")
        return self

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "dim": self.dim,
            "full_dimensional": self.full_dimensional,
            "N": len(self.interior_points),
            "has_interior_point": self.has_interior_point,
            "ok": self.ok,
        }


def check_hypotheses(f: LaurentPolynomial) -> HypothesisReport:
    P = newton_polytope(f)
    pts: tuple = ()
    if P.full_dimensional:
        pts = tuple(interior_lattice_points(P))
    return HypothesisReport(f.d, P.dim, pts)


def interior_points_of(f: LaurentPolynomial) -> list:
    """Interior lattice points of the Newton polytope of ``f``; raises if a hypothesis fails."""
    return list(check_hypotheses(f).require().interior_points)


def polytope_report(f: LaurentPolynomial) -> dict:
    P = newton_polytope(f)
    out = P.to_json()
    out["dim"] = P.dim
    rep = check_hypotheses(f)
    out["interior_points"] = [list(v) for v in rep.interior_points]
    out["N"] = len(rep.interior_points)
    return out
