"""Hot integer kernels.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy
version with identical results.  The numba path is used when numba imports
and ``UNITROOT_NUMBA`` is not set to ``0``; both stay importable so tests and
the benchmark can compare them directly.

All kernels work on int64 residues modulo ``q`` with ``q <= MAX_MODULUS`` so
that a product of two residues fits in a signed 64-bit word.
"""

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba ships with the dev image
    numba = None

MAX_MODULUS = 3_000_000_000


def numba_available():
    return numba is not None


def numba_enabled():
    if numba is None:
        return False
    return os.environ.get("UNITROOT_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


def _njit(func):
    if numba is None:
        return func
    return numba.njit(cache=True)(func)


# ---------------------------------------------------------------------------
# sparse-into-dense convolution mod q


def conv_mod_numpy(ia, va, ib, vb, out, q):
    """Accumulate ``out[ia[i] + ib[j]] += va[i] * vb[j] (mod q)`` in place."""
    if len(ia) < len(ib):
        ia, va, ib, vb = ib, vb, ia, va
    for j in range(len(ib)):
        c = vb[j]
        if c == 0:
            continue
        idx = ia + ib[j]
        out[idx] = (out[idx] + (va * c) % q) % q
    return out


@_njit
def _conv_mod_jit(ia, va, ib, vb, out, q):
    for j in range(ib.shape[0]):
        c = vb[j]
        if c == 0:
            continue
        base = ib[j]
        for i in range(ia.shape[0]):
            k = base + ia[i]
            out[k] = (out[k] + (va[i] * c) % q) % q
    return out


def conv_mod_numba(ia, va, ib, vb, out, q):
    return _conv_mod_jit(ia, va, ib, vb, out, np.int64(q))


# ---------------------------------------------------------------------------
# prefix products of integers prime to p, mod q


def unit_prefix_numpy(p, q):
    """``T[r] = prod(i for 1 <= i <= r if i % p) mod q`` for ``0 <= r < q``."""
    table = np.empty(q, dtype=np.int64)
    acc = 1
    table[0] = 1
    # cumulative products mod q do not vectorise; a plain loop is the fallback
    for r in range(1, q):
        if r % p:
            acc = acc * r % q
        table[r] = acc
    return table


@_njit
def _unit_prefix_jit(p, q):
    table = np.empty(q, dtype=np.int64)
    acc = np.int64(1)
    table[0] = 1
    for r in range(1, q):
        if r % p != 0:
            acc = acc * r % q
        table[r] = acc
    return table


def unit_prefix_numba(p, q):
    return _unit_prefix_jit(np.int64(p), np.int64(q))


# ---------------------------------------------------------------------------
# multinomial terms mod p^M


def _powmod_vec(base, exp, q):
    base = np.asarray(base, dtype=np.int64) % q
    exp = np.array(exp, dtype=np.int64, copy=True)
    result = np.ones(np.broadcast(base, exp).shape, dtype=np.int64)
    base = np.broadcast_to(base, result.shape).copy()
    while np.any(exp > 0):
        odd = (exp & 1) == 1
        result[odd] = result[odd] * base[odd] % q
        base = base * base % q
        exp >>= 1
    return result


def _unit_fact_vec(k, p, q, table, wilson):
    """Unit part of ``k!`` mod q, vectorised over ``k``."""
    k = np.array(k, dtype=np.int64, copy=True)
    res = np.ones(k.shape, dtype=np.int64)
    while np.any(k > 0):
        part = table[k % q]
        flip = ((k // q) & 1) == 1
        part = np.where(flip, part * wilson % q, part)
        res = res * part % q
        k //= p
    return res


def _vp_fact_vec(k, p):
    k = np.array(k, dtype=np.int64, copy=True)
    v = np.zeros(k.shape, dtype=np.int64)
    while np.any(k > 0):
        k //= p
        v += k
    return v


def multinomial_sum_numpy(n, ks, coeffs, p, M, table):
    """Sum over rows ``k`` of ``n!/prod(k_i!) * prod(coeffs_i**k_i)`` mod ``p**M``.

    ``ks`` is an ``(P, m)`` int64 array whose rows each sum to ``n``; ``table``
    comes from ``unit_prefix``.
    """
    q = p**M
    if ks.shape[0] == 0:
        return 0
    wilson = int(table[q - 1])
    phi = q // p * (p - 1)
    val = int(_vp_fact_vec(np.int64(n), p)) - _vp_fact_vec(ks, p).sum(axis=1)
    den = np.ones(ks.shape[0], dtype=np.int64)
    units = _unit_fact_vec(ks, p, q, table, wilson)
    for i in range(ks.shape[1]):
        den = den * units[:, i] % q
    inv = _powmod_vec(den, np.full(den.shape, phi - 1, dtype=np.int64), q)
    top = int(_unit_fact_vec(np.int64(n), p, q, table, wilson))
    term = inv * top % q
    for i in range(ks.shape[1]):
        term = term * _powmod_vec(np.int64(coeffs[i]), ks[:, i], q) % q
    pk = _powmod_vec(np.int64(p), np.minimum(val, M), q)
    term = np.where(val >= M, 0, term * pk % q)
    total = 0
    for start in range(0, term.size, 1 << 20):
        total += int(np.sum(term[start:start + (1 << 20)]))
    return total % q


@_njit
def _powmod_jit(b, e, q):
    r = np.int64(1)
    b = b % q
    while e > 0:
        if e & 1:
            r = r * b % q
        b = b * b % q
        e >>= 1
    return r


@_njit
def _unit_fact_jit(k, p, q, table, wilson):
    r = np.int64(1)
    while k > 0:
        part = table[k % q]
        if (k // q) & 1:
            part = part * wilson % q
        r = r * part % q
        k //= p
    return r


@_njit
def _vp_fact_jit(k, p):
    v = 0
    while k > 0:
        k //= p
        v += k
    return v


@_njit
def _multinomial_sum_jit(n, ks, coeffs, p, M, q, table):
    wilson = table[q - 1]
    phi = q // p * (p - 1)
    vn = _vp_fact_jit(n, p)
    top = _unit_fact_jit(n, p, q, table, wilson)
    total = np.int64(0)
    for r in range(ks.shape[0]):
        val = vn
        den = np.int64(1)
        for i in range(ks.shape[1]):
            val -= _vp_fact_jit(ks[r, i], p)
            den = den * _unit_fact_jit(ks[r, i], p, q, table, wilson) % q
        if val >= M:
            continue
        term = top * _powmod_jit(den, phi - 1, q) % q
        for i in range(ks.shape[1]):
            term = term * _powmod_jit(coeffs[i], ks[r, i], q) % q
        term = term * _powmod_jit(np.int64(p), val, q) % q
        total = (total + term) % q
    return total


def multinomial_sum_numba(n, ks, coeffs, p, M, table):
    q = p**M
    coeffs = np.asarray(coeffs, dtype=np.int64) % q
    return int(_multinomial_sum_jit(np.int64(n), ks, coeffs, np.int64(p), np.int64(M), np.int64(q), table))


# ---------------------------------------------------------------------------
# zero counting of a Laurent polynomial on the torus over F_p


def torus_zeros_numpy(exps, coeffs, p):
    """Count ``t in (F_p^*)^d`` with ``sum coeffs_i * t**exps_i == 0``."""
    m, d = exps.shape
    # powers[r, e] = r ** e mod p for units r and reduced exponents e
    units = np.arange(1, p, dtype=np.int64)
    red = exps % (p - 1)
    count = 0
    lead = units if d >= 1 else np.zeros(0, dtype=np.int64)
    rest_shape = (p - 1,) * (d - 1)
    rest = np.indices(rest_shape).reshape(d - 1, -1) + 1 if d > 1 else np.zeros((0, 1), dtype=np.int64)
    for t1 in lead:
        acc = np.zeros(rest.shape[1], dtype=np.int64)
        for i in range(m):
            mono = np.full(rest.shape[1], pow(int(t1), int(red[i, 0]), p), dtype=np.int64)
            for j in range(1, d):
                mono = mono * _powmod_vec(rest[j - 1], np.int64(red[i, j]), p) % p
            acc = (acc + coeffs[i] % p * mono) % p
        count += int(np.count_nonzero(acc == 0))
    return count


@_njit
def _torus_zeros_jit(red, coeffs, p):
    m, d = red.shape
    total = (p - 1) ** d
    t = np.ones(d, dtype=np.int64)
    count = 0
    for _ in range(total):
        acc = np.int64(0)
        for i in range(m):
            mono = coeffs[i]
            for j in range(d):
                mono = mono * _powmod_jit(t[j], red[i, j], p) % p
            acc = (acc + mono) % p
        if acc == 0:
            count += 1
        j = 0
        while j < d:
            t[j] += 1
            if t[j] < p:
                break
            t[j] = 1
            j += 1
    return count


def torus_zeros_numba(exps, coeffs, p):
    red = np.asarray(exps, dtype=np.int64) % (p - 1)
    c = np.asarray(coeffs, dtype=np.int64) % p
    return int(_torus_zeros_jit(red, c, np.int64(p)))


# ---------------------------------------------------------------------------
# dispatch


def conv_mod(ia, va, ib, vb, out, q):
    if numba_enabled():
        return conv_mod_numba(ia, va, ib, vb, out, q)
    return conv_mod_numpy(ia, va, ib, vb, out, q)


def unit_prefix(p, q):
    if numba_enabled():
        return unit_prefix_numba(p, q)
    return unit_prefix_numpy(p, q)


def multinomial_sum(n, ks, coeffs, p, M, table):
    ks = np.ascontiguousarray(ks, dtype=np.int64)
    if numba_enabled():
        return multinomial_sum_numba(n, ks, coeffs, p, M, table)
    return multinomial_sum_numpy(n, ks, np.asarray(coeffs, dtype=np.int64) % p**M, p, M, table)


def torus_zeros(exps, coeffs, p):
    exps = np.asarray(exps, dtype=np.int64)
    if numba_enabled():
        return torus_zeros_numba(exps, coeffs, p)
    return torus_zeros_numpy(exps, np.asarray(coeffs, dtype=np.int64), p)
