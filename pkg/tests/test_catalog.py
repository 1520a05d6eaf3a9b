import json

import numpy as np
import pytest

from unitroot.catalog import builtin, cubic, cyclic, quintic_like, random_laurent, resolve
from unitroot.polytope import check_hypotheses


def test_builtins():
    assert cubic() == cyclic(3)
    assert builtin("cyclic-5").d == 4
    assert resolve("builtin:quintic-like") == quintic_like()
    with pytest.raises(KeyError):
        builtin("sextic")


def test_resolve_forms():
    text = resolve("t1 + t2 + t1^-1*t2^-1", 2)
    assert text == cubic()
    assert resolve(json.dumps(cubic().to_json())) == cubic()
    with pytest.raises(ValueError):
        resolve("t1 + t2")


def test_random_polynomials_are_valid_and_reproducible():
    a = [random_laurent(np.random.default_rng(3)) for _ in range(2)]
    assert a[0] == a[1]
    rng = np.random.default_rng(11)
    for _ in range(20):
        rep = check_hypotheses(random_laurent(rng, max_interior=2))
        assert rep.ok and 1 <= len(rep.interior_points) <= 2
