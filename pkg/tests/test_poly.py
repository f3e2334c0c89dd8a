from hypothesis import given, strategies as st

from spinsym.field import I, as_field
from spinsym.poly import Polynomial, Variable, conj_jet, coord, jet, spinor_coord

VARS = [coord(0), coord(1), spinor_coord(0, 1), jet("phi", 1, 1, 0), conj_jet("phi", 0, 1, 0)]


@st.composite
def polys(draw):
    acc = Polynomial()
    for _ in range(draw(st.integers(0, 4))):
        pairs = [(v, draw(st.integers(0, 2))) for v in VARS if draw(st.booleans())]
        c = as_field(complex(draw(st.integers(-5, 5)), draw(st.integers(-5, 5))))
        acc = acc + Polynomial.monomial(pairs, c)
    return acc


@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert p - p == Polynomial()


@given(polys(), polys(), st.sampled_from(VARS))
def test_leibniz(p, q, v):
    assert (p * q).partial(v) == p.partial(v) * q + p * q.partial(v)


@given(polys(), polys())
def test_conjugation(p, q):
    assert (p * q).conj() == p.conj() * q.conj()
    assert p.conj().conj() == p


@given(polys(), polys())
def test_substitution_is_a_homomorphism(p, q):
    m = {coord(0): Polynomial.var(coord(1)) + 1, VARS[3]: Polynomial.var(VARS[4]).scale(I)}
    assert (p * q).substitute(m) == p.substitute(m) * q.substitute(m)


def test_interning_and_conjugate_variables():
    assert jet("phi", 2, 1, 1) is jet("phi", 2, 1, 1)
    assert jet("phi", 2, 1, 1).conj() is conj_jet("phi", 2, 1, 1)
    assert spinor_coord(0, 1).conj() is spinor_coord(1, 0)
    assert coord(2).conj() is coord(2)
    v = jet("phi", 0, 0, 0)
    assert isinstance(v, Variable) and v.is_jet


def test_filter_and_coefficients():
    x, y = Polynomial.var(coord(0)), Polynomial.var(coord(1))
    p = x * x * y + y.scale(3) + 2
    assert p.degree() == 3
    assert p.constant_term() == as_field(2)
    split = p.coefficient_in(lambda v: v is coord(0))
    assert split[((coord(0), 2),)] == y
    assert p.filter(lambda m: len(m) == 0) == Polynomial.const(2)
