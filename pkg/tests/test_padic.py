import pytest
import sympy
from hypothesis import given, settings, strategies as st

from unitroot.padic import NotInvertibleError, PadicMatrix, matrix_inverse_mod, valuation


def test_valuation():
    assert valuation(50, 5, 10) == 2
    assert valuation(0, 5, 4) == 4
    assert valuation(5**9, 5, 3) == 3
    assert valuation(7, 5, 3) == 0


def test_entries_reduced_on_construction():
    A = PadicMatrix(3, 2, ((10, -1), (9, 4)))
    assert A.entries == ((1, 8), (0, 4))


def test_agreement_and_congruence():
    A = PadicMatrix(5, 4, ((1, 0), (0, 1)))
    B = PadicMatrix(5, 4, ((1 + 125, 0), (25, 1)))
    assert A.agreement(B) == 2
    assert A.congruent(B, 2) and not A.congruent(B, 3)
    assert A.agreement(A) == 4


def test_non_square_rejected():
    with pytest.raises(ValueError):
        PadicMatrix(3, 1, ((1, 2),))


def test_singular_mod_p():
    with pytest.raises(NotInvertibleError):
        PadicMatrix(7, 3, ((7, 0), (0, 1))).inverse()


def test_reduce_cannot_raise_precision():
    A = PadicMatrix(3, 2, ((1,),))
    assert A.reduce(1).modulus == 3
    with pytest.raises(ValueError):
        A.reduce(3)


unit_matrices = st.tuples(st.sampled_from([2, 3, 5, 7]), st.integers(1, 5), st.integers(1, 3)).flatmap(
    lambda t: st.tuples(
        st.just(t),
        st.lists(st.lists(st.integers(-10**6, 10**6), min_size=t[2], max_size=t[2]), min_size=t[2], max_size=t[2]),
    )
)


@settings(max_examples=80, deadline=None)
@given(unit_matrices)
def test_inverse_against_sympy(case):
    (p, M, n), rows = case
    A = PadicMatrix(p, M, tuple(map(tuple, rows)))
    q = p**M
    if sympy.Matrix(rows).det() % p == 0:
        with pytest.raises(NotInvertibleError):
            matrix_inverse_mod(A)
        return
    inv = matrix_inverse_mod(A)
    assert (A @ inv).entries == PadicMatrix.identity(p, M, n).entries
    want = sympy.Matrix(rows).inv_mod(q)
    assert [list(r) for r in inv.entries] == [[int(want[i, j]) for j in range(n)] for i in range(n)]
    assert A.det() == sympy.Matrix(rows).det() % q
