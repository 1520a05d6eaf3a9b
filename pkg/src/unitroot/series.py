"""Multivariate power series over Q truncated at a total degree."""

from __future__ import annotations

from fractions import Fraction
from operator import add
from typing import Mapping, Sequence


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class TruncatedSeries:
    """Power series in ``m`` variables known up to total degree ``D`` inclusive.

    Coefficients are Python ints or Fractions keyed by exponent tuples; zero
    coefficients and monomials above degree ``D`` are never stored.
    """

    __slots__ = ("m", "D", "_c", "_buckets")

    def __init__(self, m: int, D: int, coeffs: Mapping | None = None):
        self.m = m
        self.D = D
        out = {}
        for k, c in (coeffs or {}).items():
            k = tuple(k)
            if len(k) != m:
                raise ValueError(f"multi-index {k} has length {len(k)}, expected {m}")
            if sum(k) <= D and c != 0:
                out[k] = _clean(c)
        self._c = out
        self._buckets = None

    @classmethod
    def _raw(cls, m, D, coeffs):
        obj = cls.__new__(cls)
        obj.m, obj.D, obj._c, obj._buckets = m, D, coeffs, None
        return obj

    @classmethod
    def variable(cls, i: int, m: int, D: int) -> "TruncatedSeries":
        idx = [0] * m
        idx[i] = 1
        return cls(m, D, {tuple(idx): 1})

    @classmethod
    def constant(cls, c, m: int, D: int) -> "TruncatedSeries":
        return cls(m, D, {(0,) * m: c})

    @classmethod
    def univariate(cls, coeffs: Sequence, D: int | None = None) -> "TruncatedSeries":
        D = len(coeffs) - 1 if D is None else D
        return cls(1, D, {(n,): c for n, c in enumerate(coeffs)})

    # -- access -------------------------------------------------------------
    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def coefficient(self, idx) -> int | Fraction:
        return self._c.get(tuple(idx), 0)

    def items(self):
        """Terms sorted by total degree, then reverse-lexicographically."""
        return sorted(self._c.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0])))

    def __len__(self):
        return len(self._c)

    def is_zero(self):
        return not self._c

    def constant_term(self):
        return self._c.get((0,) * self.m, 0)

    def buckets(self):
        if self._buckets is None:
            b: dict = {}
            for k, c in self._c.items():
                b.setdefault(sum(k), []).append((k, c))
            self._buckets = sorted(b.items())
        return self._buckets

    def homogeneous(self, deg: int) -> "TruncatedSeries":
        return TruncatedSeries._raw(self.m, self.D, {k: c for k, c in self._c.items() if sum(k) == deg})

    def truncate(self, D: int) -> "TruncatedSeries":
        D = min(D, self.D)
        return TruncatedSeries._raw(self.m, D, {k: c for k, c in self._c.items() if sum(k) <= D})

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.m == other.m and self.D == other.D and self._c == other._c

    def equal_to_degree(self, other: "TruncatedSeries", D: int) -> bool:
        return self.truncate(D)._c == other.truncate(D)._c

    def __repr__(self):
        return f"TruncatedSeries(m={self.m}, D={self.D}, {dict(self.items())!r})"

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if self.m != other.m:
            raise ValueError(f"variable count mismatch: {self.m} != {other.m}")

    def __add__(self, other):
        self._check(other)
        D = min(self.D, other.D)
        out = {k: c for k, c in self._c.items() if sum(k) <= D}
        for k, c in other._c.items():
            if sum(k) <= D:
                v = _clean(out.get(k, 0) + c)
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return TruncatedSeries._raw(self.m, D, out)

    def __neg__(self):
        return TruncatedSeries._raw(self.m, self.D, {k: -c for k, c in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TruncatedSeries":
        if c == 0:
            return TruncatedSeries._raw(self.m, self.D, {})
        return TruncatedSeries._raw(self.m, self.D, {k: _clean(v * c) for k, v in self._c.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        D = min(self.D, other.D)
        out: dict = {}
        get = out.get
        for da, ta in self.buckets():
            if da > D:
                break
            for db, tb in other.buckets():
                if da + db > D:
                    break
                for ka, ca in ta:
                    for kb, cb in tb:
                        k = tuple(map(add, ka, kb))
                        out[k] = get(k, 0) + ca * cb
        return TruncatedSeries._raw(self.m, D, {k: _clean(c) for k, c in out.items() if c})

    __rmul__ = scale

    def __pow__(self, n: int):
        result = TruncatedSeries.constant(1, self.m, self.D)
        for _ in range(n):
            result = result * self
        return result

    def min_degree(self) -> int:
        return min((sum(k) for k in self._c), default=self.D + 1)

    def embed(self, m: int, positions: Sequence[int]) -> "TruncatedSeries":
        """Rename variable ``i`` to ``positions[i]`` inside ``m`` variables."""
        out = {}
        for k, c in self._c.items():
            idx = [0] * m
            for i, e in zip(positions, k):
                idx[i] = e
            out[tuple(idx)] = c
        return TruncatedSeries._raw(m, self.D, out)

    def denominators(self) -> dict:
        return {k: c.denominator for k, c in self._c.items() if isinstance(c, Fraction)}

    def is_integral(self) -> bool:
        return not self.denominators()

    def derivative(self, i: int) -> "TruncatedSeries":
        out = {}
        for k, c in self._c.items():
            if k[i]:
                idx = list(k)
                idx[i] -= 1
                out[tuple(idx)] = c * k[i]
        return TruncatedSeries._raw(self.m, self.D - 1, out)

    def to_json(self) -> list:
        return [{"monomial": list(k), "coeff": str(c)} for k, c in self.items()]


def identity(N: int, D: int) -> list:
    return [TruncatedSeries.variable(i, N, D) for i in range(N)]


def compose(outer: Sequence[TruncatedSeries], inner: Sequence[TruncatedSeries]) -> list:
    """Substitute ``inner[i]`` for variable ``i`` of every series in ``outer``."""
    if not outer:
        return []
    k = outer[0].m
    if any(s.m != k for s in outer) or len(inner) != k:
        raise ValueError("arity mismatch between outer series and inner vector")
    m = inner[0].m
    if any(s.m != m for s in inner):
        raise ValueError("inner series must share one variable count")
    for s in inner:
        if s.constant_term() != 0:
            raise ValueError("inner series must have zero constant term")
    D = min(min(s.D for s in outer), min(s.D for s in inner))
    inner = [s.truncate(D) for s in inner]
    powers: dict = {(0,) * k: TruncatedSeries.constant(1, m, D)}

    def monomial(a):
        if a in powers:
            return powers[a]
        i = max(j for j, x in enumerate(a) if x)
        prev = list(a)
        prev[i] -= 1
        val = monomial(tuple(prev)) * inner[i]
        powers[a] = val
        return val

    result = []
    for s in outer:
        acc: dict = {}
        for a, c in s.items():
            if sum(a) > D:
                continue
            for kk, v in monomial(a)._c.items():
                acc[kk] = acc.get(kk, 0) + c * v
        result.append(TruncatedSeries._raw(m, D, {kk: _clean(v) for kk, v in acc.items() if v}))
    return result


def linear_part(series: Sequence[TruncatedSeries]) -> list:
    m = series[0].m
    rows = []
    for s in series:
        rows.append([s.coefficient(tuple(1 if j == i else 0 for j in range(m))) for i in range(m)])
    return rows


def invert_composition(L: Sequence[TruncatedSeries]) -> list:
    """Compositional inverse of a series vector with identity linear part.

    Degree-by-degree fixed point: writing ``L = id + H``, iterate
    ``G <- id - H(G)``; iteration ``j`` makes ``G`` exact through degree ``j+1``.
    """
    N = len(L)
    if any(s.m != N for s in L):
        raise ValueError("invert_composition needs N series in N variables")
    for s in L:
        if s.constant_term() != 0:
            raise ValueError("series must have zero constant term")
    lin = linear_part(L)
    if lin != [[1 if i == j else 0 for j in range(N)] for i in range(N)]:
        raise ValueError("linear part is not the identity")
    D = min(s.D for s in L)
    ident = identity(N, D)
    H = [s.truncate(D) - x for s, x in zip(L, ident)]
    G = ident
    for j in range(2, D + 1):
        # degrees above j are not yet final; drop them to keep the products small
        Gj = [g.truncate(j) for g in G]
        HG = compose([h.truncate(j) for h in H], Gj)
        G = [TruncatedSeries._raw(N, D, (x - y)._c) for x, y in zip(identity(N, j), HG)]
    return [TruncatedSeries._raw(N, D, g._c) for g in G]
