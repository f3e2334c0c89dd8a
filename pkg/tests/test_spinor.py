from hypothesis import given, strategies as st

from spinsym.conventions import EPS_LOWER, EPS_UPPER, SIGMA, SIGMA_UP, ETA
from spinsym.field import ZERO
from spinsym.poly import Polynomial
from spinsym.spinor import Slot, SpinorArray, epsilon

U, L = True, False
ints = st.integers(-3, 3)


def vec(a, b, primed=False, upper=True):
    return SpinorArray([Slot(primed, upper)], [Polynomial.const(a), Polynomial.const(b)])


def test_lowering_example():
    low = vec(1, 0).eps_move(0, "lower")
    assert [e.constant_term() for e in low.entries] == [ZERO, 1]


@given(ints, ints)
def test_raise_lower_round_trip(a, b):
    v = vec(a, b)
    assert v.eps_move(0, "lower").eps_move(0, "raise").entries == v.entries


@given(ints, ints)
def test_inner_product_is_skew(a, b):
    v = vec(a, b)
    assert v.outer(v.eps_move(0, "lower")).contract(0, 1).entries[0] == Polynomial()


def test_epsilon_identities():
    for a in range(2):
        for c in range(2):
            s = sum(EPS_UPPER[a][b] * EPS_LOWER[c][b] for b in range(2))
            assert s == (1 if a == c else 0)
    e = epsilon(upper=True).outer(epsilon())
    assert e.contract(0, 2).contract(0, 1).entries[0] == Polynomial.const(2)


def test_sigma_completeness():
    for i in range(4):
        for j in range(4):
            s = sum((SIGMA[i][a][ap] * SIGMA_UP[j][a][ap] for a in range(2) for ap in range(2)), ZERO)
            assert s == (1 if i == j else 0)
    for i in range(4):
        assert all(SIGMA[i][a][ap] == SIGMA[i][ap][a].conj() for a in range(2) for ap in range(2))
    assert ETA == (1, -1, -1, -1)


@given(st.lists(ints, min_size=8, max_size=8))
def test_symmetrize_idempotent(vals):
    arr = SpinorArray([Slot(False, L)] * 3, [Polynomial.const(v) for v in vals])
    s = arr.symmetrize("both")
    assert s.symmetrize("both").entries == s.entries
    assert s.is_symmetric()


def test_slot_order_is_canonical():
    arr = SpinorArray([Slot(True, L), Slot(False, L)], [Polynomial.const(v) for v in range(4)])
    assert [s.primed for s in arr.slots] == [False, True]
    assert arr.conjugate().conjugate().entries == arr.entries
