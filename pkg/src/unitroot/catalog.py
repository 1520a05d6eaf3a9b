"""Named polynomials and the polynomial-argument resolver used by the CLI."""

from __future__ import annotations

import json
from pathlib import Path

from .laurent import LaurentPolynomial, parse_laurent


def cyclic(d: int) -> LaurentPolynomial:
    """``t1 + ... + t_{d-1} + 1/(t1 ... t_{d-1})`` in ``d - 1`` variables."""
    if d < 2:
        raise ValueError("cyclic family needs d >= 2")
    n = d - 1
    terms = {tuple(int(i == j) for j in range(n)): 1 for i in range(n)}
    terms[(-1,) * n] = 1
    return LaurentPolynomial(n, terms)


def cubic() -> LaurentPolynomial:
    return cyclic(3)


def quintic_like() -> LaurentPolynomial:
    return LaurentPolynomial(2, {(1, 0): 1, (0, 1): 1, (-2, -2): 1})


BUILTINS = {"cubic": cubic, "quintic-like": quintic_like}


def builtin(name: str) -> LaurentPolynomial:
    if name in BUILTINS:
        return BUILTINS[name]()
    if name.startswith("cyclic-"):
        return cyclic(int(name.split("-", 1)[1]))
    raise KeyError(f"unknown builtin polynomial {name!r}; known: cubic, quintic-like, cyclic-<d>")


def resolve(source: str, d: int | None = None) -> LaurentPolynomial:
    """Polynomial from ``builtin:<name>``, ``@path`` (text or JSON file), JSON text or the text grammar."""
    source = source.strip()
    if source.startswith("builtin:"):
        f = builtin(source[len("builtin:"):])
        if d is not None and d != f.d:
            raise ValueError(f"builtin {source} has d={f.d}, expected {d}")
        return f
    if source.startswith("@"):
        source = Path(source[1:]).read_text().strip()
    if source.startswith("{"):
        obj = json.loads(source)
        return parse_laurent(source, int(obj["d"]) if d is None else d)
    if d is None:
        raise ValueError("the dimension -d/--dim is required for text polynomials")
    return parse_laurent(source, d)


def random_laurent(rng, d: int = 2, box: int = 2, max_terms: int = 5, max_interior: int = 3) -> LaurentPolynomial:
    """Random integer Laurent polynomial whose Newton polytope satisfies the standing hypotheses.

    ``rng`` is a ``numpy.random.Generator``; rejection sampling keeps the
    interior point count between 1 and ``max_interior``.
    """
    from .polytope import check_hypotheses

    while True:
        m = int(rng.integers(d + 1, max_terms + 1))
        pts = {tuple(int(x) for x in rng.integers(-box, box + 1, size=d)) for _ in range(m)}
        coeffs = [int(c) for c in rng.choice([-3, -2, -1, 1, 2, 3], size=len(pts))]
        f = LaurentPolynomial(d, dict(zip(sorted(pts), coeffs)))
        if len(f) < d + 1:
            continue
        rep = check_hypotheses(f)
        if rep.ok and len(rep.interior_points) <= max_interior:
            return f
