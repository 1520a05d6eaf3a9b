import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from unitroot.laurent import (
    QQ,
    ZZ,
    LaurentParseError,
    LaurentPolynomial,
    ModPrimePower,
    RingMismatchError,
    TermLimitError,
    format_laurent,
    from_json,
    glex_sorted,
    multiply,
    parse_laurent,
    power,
    reduce,
)

T1, T2 = sympy.symbols("t1 t2")


def to_sympy(f):
    return sum(int(c) * T1 ** e[0] * T2 ** e[1] for e, c in f.items())


def from_sympy(expr, d=2):
    expr = sympy.expand(expr)
    terms = {}
    for mon, c in sympy.Poly(expr * (T1 * T2) ** 200, T1, T2).terms():
        terms[(mon[0] - 200, mon[1] - 200)] = int(c)
    return LaurentPolynomial(d, terms)


polys = st.dictionaries(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-5, 5), min_size=1, max_size=5
).map(lambda t: LaurentPolynomial(2, t))


def test_parse_worked_example():
    f = parse_laurent("t1+t2+t1^-2*t2^-2", 2)
    assert f.terms == {(1, 0): 1, (0, 1): 1, (-2, -2): 1}


def test_parse_coefficients_and_signs():
    f = parse_laurent("3*t1^2 - t2 + 7 - 2*t1^-1*t2", 2)
    assert f.terms == {(2, 0): 3, (0, 1): -1, (0, 0): 7, (-1, 1): -2}


def test_parse_merges_like_terms():
    assert parse_laurent("t1 + t1 - 2*t1", 1).is_zero()


@pytest.mark.parametrize("bad", ["t1+", "t3", "t1^", "2**t1", "t1 t2", ""])
def test_parse_errors(bad):
    with pytest.raises(LaurentParseError):
        parse_laurent(bad, 2)


def test_parse_error_reports_position():
    with pytest.raises(LaurentParseError) as exc:
        parse_laurent("t1 + t9", 2)
    assert exc.value.position == 5


@given(polys)
def test_text_round_trip(f):
    assert parse_laurent(format_laurent(f), 2) == f


@given(polys)
def test_json_round_trip(f):
    obj = json.loads(json.dumps(f.to_json()))
    assert from_json(obj) == f


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_product_matches_sympy(a, b):
    assert multiply(a, b) == from_sympy(to_sympy(a) * to_sympy(b))


@settings(max_examples=30, deadline=None)
@given(polys, st.integers(0, 6))
def test_power_matches_sympy(f, n):
    assert power(f, n) == from_sympy(to_sympy(f) ** n)


@settings(max_examples=40, deadline=None)
@given(polys, st.integers(0, 12), st.sampled_from([2, 3, 5, 7]), st.integers(1, 4))
def test_modular_power_is_reduced_exact_power(f, n, p, M):
    exact = reduce(power(f, n), p, M)
    assert power(f, n, ModPrimePower(p, M)) == exact


def test_dense_kernel_path_agrees_with_dictionary_path():
    f = parse_laurent("t1 + 2*t2 - t1^-1*t2^-1 + 3", 2)
    ring = ModPrimePower(5, 3)
    big = power(f, 9)
    # 9th power has far more than 64 terms, so this multiplication takes the dense path
    assert len(big) * len(f) > 64
    assert multiply(reduce(big, 5, 3), f.change_ring(ring)) == reduce(multiply(big, f), 5, 3)


def test_ring_mismatch():
    a = LaurentPolynomial(1, {(1,): 1})
    with pytest.raises(RingMismatchError):
        a + a.change_ring(ModPrimePower(3, 2))
    with pytest.raises(ValueError):
        a * LaurentPolynomial(2, {(1, 0): 1})


def test_mod_prime_power_rejects_composites():
    with pytest.raises(ValueError):
        ModPrimePower(6, 2)
    with pytest.raises(ValueError):
        ModPrimePower(5, 0)


def test_rings_convert():
    assert ModPrimePower(3, 2).convert(-1) == 8
    assert QQ.convert(Fraction(2, 6)) == Fraction(1, 3)
    with pytest.raises((TypeError, ValueError)):
        ZZ.convert(Fraction(1, 2))


def test_term_limit(monkeypatch):
    monkeypatch.setenv("UNITROOT_MAX_TERMS", "50")
    f = parse_laurent("t1 + t2 + 1", 2)
    with pytest.raises(TermLimitError):
        power(f, 20)
    with pytest.raises(TermLimitError):
        power(f, 20, ModPrimePower(7, 2))


def test_glex_order_is_descending():
    pts = [(0, 0), (-1, -1), (1, 0), (0, 1), (-2, 0)]
    assert glex_sorted(pts) == [(1, 0), (0, 1), (0, 0), (-1, -1), (-2, 0)]


def test_items_follow_glex_order():
    f = parse_laurent("t1^-2*t2^-2 + t2 + t1", 2)
    assert [e for e, _ in f.items()] == [(1, 0), (0, 1), (-2, -2)]


def test_shift_scale_and_coefficient():
    f = parse_laurent("t1 + 2", 1)
    assert f.shift((2,)).terms == {(3,): 1, (2,): 2}
    assert f.scale(3).coefficient((0,)) == 6
    assert f.coefficient((5,)) == 0
