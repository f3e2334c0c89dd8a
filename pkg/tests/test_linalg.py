from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinsym import _kernels
from spinsym.field import I, SQRT2, as_field
from spinsym.linalg import (
    bareiss_rank_dense, exact_nullspace, exact_rank, mat_vec, modular_rank, rational_rank, real_rank,
)

matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=1, max_size=7))


@given(matrices)
def test_rank_agrees_across_methods(m):
    r = rational_rank(m)
    assert r == bareiss_rank_dense(m)
    assert r == np.linalg.matrix_rank(np.array(m, dtype=float))
    rows = [dict(enumerate(row)) for row in m]
    assert modular_rank(rows, len(m[0]), backend="numpy") == r


@given(matrices)
def test_backends_agree(m):
    if _kernels._rank_mod_p_numba is None:
        pytest.skip("numba unavailable")
    a = np.array(m, dtype=np.int64) % _kernels.PRIME
    rn, pn = _kernels.rank_mod_p(a, backend="numba")
    rp, pp = _kernels.rank_mod_p(a, backend="numpy")
    assert rn == rp
    assert list(pn[:rn]) == list(pp[:rp])


@given(matrices)
def test_nullspace(m):
    ns = exact_nullspace(m)
    assert len(ns) + rational_rank(m) == len(m[0])
    for v in ns:
        assert all(x == 0 for x in mat_vec(m, v))


def test_nullspace_over_extension():
    m = [[as_field(1), SQRT2], [I, I * SQRT2]]
    ns = exact_nullspace(m)
    assert len(ns) == 1
    assert all(x == 0 for x in mat_vec(m, ns[0]))
    assert exact_rank(m) == 1


def test_real_rank_counts_real_dimensions():
    # v and i v are independent over R
    v = {0: as_field(1), 1: I}
    iv = {c: x * I for c, x in v.items()}
    assert real_rank([v, iv]) == 2
    assert real_rank([v, {c: x * 3 for c, x in v.items()}]) == 1
    # a uniform sqrt(2) rescaling does not change the span
    assert real_rank([v, {c: x * SQRT2 for c, x in v.items()}]) == 1
    # mixed cosets go through elimination over Q(sqrt 2)
    one = as_field(1)
    assert real_rank([{0: one + SQRT2}, {0: one}]) == 1
    assert real_rank([{0: one + SQRT2, 1: one}, {0: one, 1: one}]) == 2


def test_fractions():
    assert rational_rank([[Fraction(1, 2), Fraction(1, 3)], [3, 2]]) == 1
