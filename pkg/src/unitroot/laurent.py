"""Sparse Laurent polynomials over exact and modular coefficient rings."""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from . import _kernels

DEFAULT_MAX_TERMS = 5_000_000


class RingMismatchError(ValueError):
    pass


class TermLimitError(RuntimeError):
    """Raised when a polynomial would exceed ``UNITROOT_MAX_TERMS`` terms."""


class LaurentParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def max_terms() -> int:
    raw = os.environ.get("UNITROOT_MAX_TERMS")
    return int(raw) if raw else DEFAULT_MAX_TERMS


def glex_key(e):
    """Sort key for exponent vectors: total degree, then lexicographic.

    Sorting is done with ``reverse=True`` everywhere, so ``(0, 0)`` precedes
    ``(-1, -1)`` and ``t1`` precedes ``t2``.
    """
    return (sum(e), tuple(e))


def glex_sorted(vectors: Iterable) -> list:
    return sorted(vectors, key=glex_key, reverse=True)


# ---------------------------------------------------------------------------
# coefficient rings


@dataclass(frozen=True)
class ExactInteger:
    modulus = None

    def convert(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x.numerator)
        if isinstance(x, (int, np.integer)):
            return int(x)
        raise TypeError(f"cannot convert {x!r} to an integer")

    def __str__(self):
        return "ZZ"


@dataclass(frozen=True)
class ExactRational:
    modulus = None

    def convert(self, x):
        if isinstance(x, (int, np.integer)):
            return int(x)
        if isinstance(x, Fraction):
            return int(x) if x.denominator == 1 else x
        raise TypeError(f"cannot convert {x!r} to a rational")

    def __str__(self):
        return "QQ"


@dataclass(frozen=True)
class ModPrimePower:
    p: int
    M: int

    def __post_init__(self):
        from sympy import isprime

        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.M < 1:
            raise ValueError("precision M must be at least 1")

    @property
    def modulus(self) -> int:
        return self.p**self.M

    def convert(self, x):
        q = self.modulus
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ValueError(f"{x} is not p-integral for p={self.p}")
            return x.numerator * pow(x.denominator, -1, q) % q
        return int(x) % q

    def __str__(self):
        return f"Z/{self.p}^{self.M}"


ZZ = ExactInteger()
QQ = ExactRational()


def _check_same(a: "LaurentPolynomial", b: "LaurentPolynomial"):
    if a.d != b.d:
        raise ValueError(f"dimension mismatch: {a.d} != {b.d}")
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring} vs {b.ring}")


# ---------------------------------------------------------------------------
# the polynomial type


class LaurentPolynomial:
    """A finite map from exponent vectors in Z^d to nonzero ring elements.

    Instances are treated as immutable.  Zero coefficients are never stored.
    """

    __slots__ = ("d", "ring", "_terms")

    def __init__(self, d: int, terms: Mapping | None = None, ring=ZZ):
        if d < 1:
            raise ValueError("dimension must be at least 1")
        self.d = d
        self.ring = ring
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != d:
                raise ValueError(f"exponent vector {e} has length {len(e)}, expected {d}")
            c = ring.convert(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        if ring.modulus is not None:
            clean = {e: c % ring.modulus for e, c in clean.items()}
        self._terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, d, terms, ring):
        obj = cls.__new__(cls)
        obj.d = d
        obj.ring = ring
        obj._terms = terms
        return obj

    @classmethod
    def one(cls, d, ring=ZZ):
        return cls._raw(d, {(0,) * d: 1}, ring)

    @classmethod
    def monomial(cls, e, c=1, ring=ZZ):
        return cls(len(e), {tuple(e): c}, ring)

    # -- access -------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in descending graded-lex order of exponent."""
        return [(e, self._terms[e]) for e in glex_sorted(self._terms)]

    def support(self) -> list:
        return glex_sorted(self._terms)

    def coefficient(self, e) -> int | Fraction:
        e = tuple(e)
        if len(e) != self.d:
            raise ValueError(f"exponent vector {e} has length {len(e)}, expected {self.d}")
        return self._terms.get(e, 0)

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.d == other.d and self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash((self.d, self.ring, frozenset(self._terms.items())))

    def __repr__(self):
        return f"LaurentPolynomial({self.d}, {self.items()!r}, ring={self.ring})"

    def __str__(self):
        return format_laurent(self)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        _check_same(self, other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(self.d, out, self.ring)

    def __neg__(self):
        return LaurentPolynomial(self.d, {e: -c for e, c in self._terms.items()}, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return multiply(self, other)

    def __pow__(self, n):
        return power(self, n)

    def scale(self, c):
        return LaurentPolynomial(self.d, {e: c * v for e, v in self._terms.items()}, self.ring)

    def shift(self, e):
        """Multiply by the monomial ``t**e``."""
        return LaurentPolynomial._raw(
            self.d, {tuple(a + b for a, b in zip(k, e)): c for k, c in self._terms.items()}, self.ring
        )

    def change_ring(self, ring) -> "LaurentPolynomial":
        return LaurentPolynomial(self.d, self._terms, ring)

    def to_json(self) -> dict:
        return {"d": self.d, "terms": [[str(c), list(e)] for e, c in self.items()]}

    def arrays(self):
        """Support as an ``(m, d)`` int64 array plus a list of coefficients."""
        items = self.items()
        exps = np.array([e for e, _ in items], dtype=np.int64).reshape(len(items), self.d)
        return exps, [c for _, c in items]


def reduce(f: LaurentPolynomial, p: int, M: int) -> LaurentPolynomial:
    return f.change_ring(ModPrimePower(p, M))


# ---------------------------------------------------------------------------
# multiplication and powering


def _mul_dicts(a: dict, b: dict, modulus):
    out: dict = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = get(e, 0) + ca * cb
    if modulus is not None:
        return {e: c % modulus for e, c in out.items() if c % modulus}
    return {e: c for e, c in out.items() if c}


def _use_dense(ring) -> bool:
    return ring.modulus is not None and ring.modulus <= _kernels.MAX_MODULUS


class _ModArray:
    """Array-backed polynomial mod q used inside the modular powering loop."""

    __slots__ = ("exps", "vals")

    def __init__(self, exps, vals):
        self.exps = exps
        self.vals = vals

    @classmethod
    def from_poly(cls, f: LaurentPolynomial):
        exps, coeffs = f.arrays()
        return cls(exps, np.array(coeffs, dtype=np.int64))

    def to_terms(self) -> dict:
        return {tuple(int(x) for x in e): int(c) for e, c in zip(self.exps, self.vals)}

    def mul(self, other: "_ModArray", q: int, limit: int) -> "_ModArray":
        d = self.exps.shape[1]
        if self.exps.shape[0] == 0 or other.exps.shape[0] == 0:
            return _ModArray(np.zeros((0, d), dtype=np.int64), np.zeros(0, dtype=np.int64))
        lo_a, lo_b = self.exps.min(axis=0), other.exps.min(axis=0)
        shape = self.exps.max(axis=0) - lo_a + other.exps.max(axis=0) - lo_b + 1
        size = int(np.prod(shape.astype(object)))
        if size > 4 * limit:
            raise TermLimitError(f"product bounding box has {size} cells (limit {limit})")
        strides = np.ones(d, dtype=np.int64)
        for i in range(d - 2, -1, -1):
            strides[i] = strides[i + 1] * shape[i + 1]
        ia = (self.exps - lo_a) @ strides
        ib = (other.exps - lo_b) @ strides
        buf = np.zeros(size, dtype=np.int64)
        _kernels.conv_mod(ia, self.vals, ib, other.vals, buf, q)
        nz = np.flatnonzero(buf)
        if nz.size > limit:
            raise TermLimitError(f"product has {nz.size} terms (limit {limit})")
        exps = np.stack(np.unravel_index(nz, tuple(int(s) for s in shape)), axis=1) + (lo_a + lo_b)
        return _ModArray(exps.astype(np.int64), buf[nz])


def multiply(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    _check_same(a, b)
    limit = max_terms()
    if len(a) * len(b) > 64 and _use_dense(a.ring):
        q = a.ring.modulus
        prod = _ModArray.from_poly(a).mul(_ModArray.from_poly(b), q, limit)
        return LaurentPolynomial._raw(a.d, prod.to_terms(), a.ring)
    terms = _mul_dicts(a._terms, b._terms, a.ring.modulus)
    if len(terms) > limit:
        raise TermLimitError(f"product has {len(terms)} terms (limit {limit})")
    return LaurentPolynomial._raw(a.d, terms, a.ring)


def power(f: LaurentPolynomial, n: int, ring=None) -> LaurentPolynomial:
    """``f**n`` by binary powering, reducing after every multiplication."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    if ring is not None and ring != f.ring:
        f = f.change_ring(ring)
    if n == 0:
        return LaurentPolynomial.one(f.d, f.ring)
    limit = max_terms()
    if _use_dense(f.ring):
        q = f.ring.modulus
        base = _ModArray.from_poly(f)
        result = None
        while True:
            if n & 1:
                result = base if result is None else result.mul(base, q, limit)
            n >>= 1
            if not n:
                break
            base = base.mul(base, q, limit)
        return LaurentPolynomial._raw(f.d, result.to_terms(), f.ring)
    modulus = f.ring.modulus
    base = f._terms
    result = None
    while True:
        if n & 1:
            result = base if result is None else _mul_dicts(result, base, modulus)
            if len(result) > limit:
                raise TermLimitError(f"power has {len(result)} terms (limit {limit})")
        n >>= 1
        if not n:
            break
        base = _mul_dicts(base, base, modulus)
        if len(base) > limit:
            raise TermLimitError(f"power has {len(base)} terms (limit {limit})")
    return LaurentPolynomial._raw(f.d, result, f.ring)


def coefficient(f: LaurentPolynomial, e) -> int | Fraction:
    return f.coefficient(e)


# ---------------------------------------------------------------------------
# text and JSON forms

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>t(?P<idx>\d+))|(?P<op>[-+*^]))")


def parse_laurent(text: str, d: int, ring=ZZ) -> LaurentPolynomial:
    """Parse ``text`` such as ``"t1 + t2 + t1^-2*t2^-2"`` into a polynomial in ``d`` variables.

    Also accepts the JSON form ``{"d": d, "terms": [[coeff, [e1, ...]], ...]}``.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        return from_json(json.loads(stripped), d, ring)
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise LaurentParseError(f"unexpected character {text[pos]!r}", pos)
        start = pos + len(text[pos:]) - len(text[pos:].lstrip())
        if m.group("int") is not None:
            tokens.append(("int", int(m.group("int")), start))
        elif m.group("var") is not None:
            tokens.append(("var", int(m.group("idx")), start))
        else:
            tokens.append(("op", m.group("op"), start))
        pos = m.end()
    if not tokens:
        raise LaurentParseError("empty polynomial", 0)

    terms: dict = {}
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else None

    def expect_factor():
        nonlocal i
        tok = peek()
        if tok is None:
            raise LaurentParseError("expected a factor", len(text))
        kind, val, where = tok
        if kind == "int":
            i += 1
            return val, None
        if kind == "var":
            if not 1 <= val <= d:
                raise LaurentParseError(f"variable t{val} outside t1..t{d}", where)
            i += 1
            exp = 1
            nxt = peek()
            if nxt is not None and nxt[:2] == ("op", "^"):
                i += 1
                sign = 1
                nxt = peek()
                if nxt is not None and nxt[0] == "op" and nxt[1] in "+-":
                    sign = -1 if nxt[1] == "-" else 1
                    i += 1
                nxt = peek()
                if nxt is None or nxt[0] != "int":
                    raise LaurentParseError("expected an integer exponent", nxt[2] if nxt else len(text))
                exp = sign * nxt[1]
                i += 1
            return 1, (val - 1, exp)
        raise LaurentParseError(f"unexpected {val!r}", where)

    sign = 1
    tok = peek()
    if tok is not None and tok[0] == "op" and tok[1] in "+-":
        sign = -1 if tok[1] == "-" else 1
        i += 1
    while True:
        coeff = 1
        exps = [0] * d
        while True:
            c, var = expect_factor()
            coeff *= c
            if var is not None:
                exps[var[0]] += var[1]
            tok = peek()
            if tok is not None and tok[:2] == ("op", "*"):
                i += 1
                continue
            break
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + sign * coeff
        tok = peek()
        if tok is None:
            break
        if tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            i += 1
            continue
        raise LaurentParseError(f"unexpected {tok[1]!r}", tok[2])
    return LaurentPolynomial(d, terms, ring)


def from_json(obj: dict, d: int | None = None, ring=ZZ) -> LaurentPolynomial:
    dim = int(obj["d"])
    if d is not None and d != dim:
        raise ValueError(f"JSON polynomial has d={dim}, expected {d}")
    terms: dict = {}
    for coeff, exps in obj["terms"]:
        c = Fraction(str(coeff))
        e = tuple(int(x) for x in exps)
        if len(e) != dim:
            raise ValueError(f"exponent vector {e} has length {len(e)}, expected {dim}")
        terms[e] = terms.get(e, 0) + c
    return LaurentPolynomial(dim, terms, ring)


def format_laurent(f: LaurentPolynomial) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for e, c in f.items():
        factors = [f"t{i + 1}" if x == 1 else f"t{i + 1}^{x}" for i, x in enumerate(e) if x]
        mag = abs(c) if f.ring.modulus is None else c
        neg = f.ring.modulus is None and c < 0
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)
