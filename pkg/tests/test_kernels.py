"""Both kernel backends against each other and against plain Python loops."""

import math
import itertools

import numpy as np
import pytest

from unitroot import _kernels as K

needs_numba = pytest.mark.skipif(not K.numba_available(), reason="numba not installed")


def _rng(seed=0):
    return np.random.default_rng(seed)


def test_env_flag(monkeypatch):
    monkeypatch.setenv("UNITROOT_NUMBA", "0")
    assert not K.numba_enabled()
    monkeypatch.setenv("UNITROOT_NUMBA", "off")
    assert not K.numba_enabled()
    monkeypatch.setenv("UNITROOT_NUMBA", "1")
    assert K.numba_enabled() == K.numba_available()


def test_conv_mod_numpy_against_loops():
    rng = _rng(1)
    q = 7**5
    ia = rng.choice(40, size=12, replace=False).astype(np.int64)
    ib = rng.choice(40, size=9, replace=False).astype(np.int64)
    va = rng.integers(0, q, size=12)
    vb = rng.integers(0, q, size=9)
    want = [0] * 80
    for i, a in zip(ia, va):
        for j, b in zip(ib, vb):
            want[i + j] = (want[i + j] + int(a) * int(b)) % q
    got = K.conv_mod_numpy(ia, va, ib, vb, np.zeros(80, dtype=np.int64), q)
    assert got.tolist() == want


@needs_numba
@pytest.mark.parametrize("q", [2, 3**10, K.MAX_MODULUS - 1])
def test_conv_mod_backends_agree(q):
    rng = _rng(q % 1000)
    ia = rng.choice(500, size=200, replace=False).astype(np.int64)
    ib = rng.choice(500, size=150, replace=False).astype(np.int64)
    va = rng.integers(0, q, size=200)
    vb = rng.integers(0, q, size=150)
    a = K.conv_mod_numpy(ia, va, ib, vb, np.zeros(1000, dtype=np.int64), q)
    b = K.conv_mod_numba(ia, va, ib, vb, np.zeros(1000, dtype=np.int64), q)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("p,M", [(2, 5), (3, 4), (7, 3), (11, 2)])
def test_unit_prefix(p, M):
    q = p**M
    want, acc = [], 1
    for r in range(q):
        if r and r % p:
            acc = acc * r % q
        want.append(acc)
    assert K.unit_prefix_numpy(p, q).tolist() == want
    if K.numba_available():
        assert K.unit_prefix_numba(p, q).tolist() == want


def _multinomial_oracle(n, ks, coeffs, q):
    total = 0
    for row in ks:
        term = math.factorial(n)
        for k in row:
            term //= math.factorial(int(k))
        for k, c in zip(row, coeffs):
            term *= c ** int(k)
        total += term
    return total % q


@pytest.mark.parametrize("p,M,n", [(2, 6, 31), (3, 4, 80), (5, 3, 124), (7, 2, 48), (13, 2, 168)])
def test_multinomial_sum_backends(p, M, n):
    q = p**M
    rng = _rng(n)
    coeffs = [int(c) for c in rng.integers(-4, 5, size=3)]
    ks = np.array([k for k in itertools.product(range(n + 1), repeat=2) if sum(k) <= n], dtype=np.int64)
    ks = np.column_stack([ks, n - ks.sum(axis=1)])[:: max(1, len(ks) // 300)]
    table = K.unit_prefix_numpy(p, q)
    want = _multinomial_oracle(n, ks, coeffs, q)
    cm = [c % q for c in coeffs]
    assert K.multinomial_sum_numpy(n, ks, cm, p, M, table) == want
    if K.numba_available():
        assert K.multinomial_sum_numba(n, ks, cm, p, M, table) == want


@pytest.mark.parametrize("p", [5, 7, 13])
def test_torus_zeros_backends(p):
    exps = np.array([[1, 0], [0, 1], [-2, -2], [1, 1]], dtype=np.int64)
    coeffs = [1, 3, p - 1, 2]
    want = 0
    for x in range(1, p):
        for y in range(1, p):
            val = sum(c * pow(x, int(e[0]), p) * pow(y, int(e[1]), p) for e, c in zip(exps, coeffs))
            want += val % p == 0
    assert K.torus_zeros_numpy(exps, coeffs, p) == want
    if K.numba_available():
        assert K.torus_zeros_numba(exps, coeffs, p) == want


def test_dispatch_respects_flag(monkeypatch):
    monkeypatch.setenv("UNITROOT_NUMBA", "0")
    exps = np.array([[1], [-1]], dtype=np.int64)
    # t + 1/t = 0 over F_p has solutions iff -1 is a square
    assert K.torus_zeros(exps, [1, 1], 13) == 2
    assert K.torus_zeros(exps, [1, 1], 7) == 0
