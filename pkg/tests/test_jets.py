import pytest
from hypothesis import given, strategies as st

from spinsym.field import as_field
from spinsym.jets import (
    CapacityError, ContractViolation, JetContext, commutation_check, coord_derivative,
    to_real_coords, to_spinor_coords,
)
from spinsym.poly import Polynomial, conj_jet, coord, jet


@st.composite
def coord_polys(draw):
    acc = Polynomial()
    for _ in range(draw(st.integers(0, 4))):
        pairs = [(coord(i), draw(st.integers(0, 2))) for i in range(4)]
        acc = acc + Polynomial.monomial(pairs, draw(st.integers(-4, 4)))
    return acc


@given(coord_polys())
def test_chart_round_trip(p):
    assert to_real_coords(to_spinor_coords(p)) == p


@given(coord_polys(), st.integers(0, 1), st.integers(0, 1))
def test_derivative_is_chart_independent(p, a, ap):
    assert to_spinor_coords(coord_derivative(p, a, ap)) == coord_derivative(to_spinor_coords(p), a, ap)


@given(coord_polys(), st.integers(0, 1), st.integers(0, 1))
def test_total_derivative_extends_coordinate_derivative(p, a, ap):
    ctx = JetContext(1, 2)
    assert ctx.total_derivative_lower(p, a, ap) == coord_derivative(p, a, ap)


@pytest.mark.parametrize("two_s", [1, 2, 3])
def test_total_derivatives_commute(two_s):
    ctx = JetContext(two_s, 3)
    x = Polynomial.var(coord(1))
    for g in (Polynomial.var(jet("phi", 0, 1, 0)) * x, Polynomial.var(conj_jet("phi", 1, 0, 1)),
              Polynomial.var(jet("phi", 1, two_s, 1)) * Polynomial.var(conj_jet("phi", 0, 0, 0))):
        for (a, ap), (b, bp) in [((0, 0), (1, 1)), ((0, 1), (1, 0)), ((1, 1), (0, 1))]:
            lhs = ctx.total_derivative_lower(ctx.total_derivative_lower(g, a, ap), b, bp)
            rhs = ctx.total_derivative_lower(ctx.total_derivative_lower(g, b, bp), a, ap)
            assert lhs == rhs


def test_on_shell_massless_equation():
    # D^A_{A'} phi_{A B} = 0 for the order-0 spin-1 jet
    ctx = JetContext(2, 1)
    for j in range(2):
        for ap in range(2):
            r = ctx.total_derivative_lower(ctx.phi(0, j + 1, 0), 0, ap) - \
                ctx.total_derivative_lower(ctx.phi(0, j, 0), 1, ap)
            assert r.is_zero()


def test_capacity_error():
    ctx = JetContext(1, 1)
    with pytest.raises(CapacityError):
        ctx.total_derivative_lower(ctx.phi(1, 0, 0), 0, 0)


def test_contract_violation():
    with pytest.raises(ContractViolation):
        coord_derivative(Polynomial.var(jet("phi", 0, 0, 0)), 0, 0)


def test_block_shape():
    ctx = JetContext(2, 3)
    assert ctx.block_size(2) == 5 * 3
    assert len(ctx.block(2, conjugate=True)) == 15
    assert ctx.phibar(0, 1, 0) == ctx.phi(0, 1, 0).conj()
    assert ctx.phi(0, 0, 0).scale(2) == Polynomial.var(jet("phi", 0, 0, 0), as_field(2))


@pytest.mark.parametrize("two_s,p", [(1, 1), (1, 2), (2, 1)])
def test_commutation_formula(two_s, p):
    res = commutation_check(two_s, p)
    assert res["pass"] and res["checked"] > 0
