from fractions import Fraction

import pytest

from spinsym.dirac import (
    build_dirac_symmetry, clifford_defects, dirac_constructive_rank, dirac_dimension, dirac_lie_derive,
    gamma5, gamma_matrices, verify_dirac,
)
from spinsym.field import ONE, ZERO
from spinsym.killing import DomainError, conformal_killing_basis, solve_killing
from spinsym.poly import CONJ_JET, JET
from spinsym.symmetries import chiral_coefficient, dimension_d_r

CKVS = conformal_killing_basis()
PIS = solve_killing(0, 2).elements
VARIANTS = [(), ("gamma5",), ("conjugate",), ("i-multiple",), ("conjugate", "gamma5", "i-multiple")]


def test_clifford_relations():
    assert clifford_defects() == []
    g5 = gamma5()
    assert [g5[i][i] for i in range(4)] == [ONE, ONE, -ONE, -ONE]
    assert all(g5[i][j] == ZERO for i in range(4) for j in range(4) if i != j)
    assert len(gamma_matrices()) == 4


@pytest.mark.parametrize("family", ["S", "S_tilde"])
def test_scaling(family):
    for v in VARIANTS:
        assert verify_dirac(build_dirac_symmetry(family, variants=v))["pass"]


def test_conformal():
    for xi in CKVS:
        for v in VARIANTS:
            assert verify_dirac(build_dirac_symmetry("Z", xi, v))["pass"]


def test_chiral():
    assert [chiral_coefficient(1, p) for p in (0, 1)] == [1, Fraction(2, 3)]
    for pi in PIS:
        for v in VARIANTS:
            assert verify_dirac(build_dirac_symmetry("W", pi, v))["pass"]


def test_chiral_halves_pair_the_two_families():
    w = build_dirac_symmetry("W", PIS[-1])
    psi_half, phi_half = w.halves()
    # the psi-half sees conj(phi) and the phi-half sees psi itself
    assert {(v.kind, v.field) for c in psi_half.comps for v in c.variables() if v.kind in (JET, CONJ_JET)} \
        == {(CONJ_JET, "phi")}
    assert {(v.kind, v.field) for c in phi_half.comps for v in c.variables() if v.kind in (JET, CONJ_JET)} \
        == {(CONJ_JET, "psi")}


def test_corrupted_two_thirds_fails():
    failures = sum(not verify_dirac(build_dirac_symmetry("W", pi, coefficients={1: Fraction(1)}))["pass"]
                   for pi in PIS)
    assert failures == 7  # the three constant spinors have no derivative term


def test_gamma5_is_an_involution():
    for q in (build_dirac_symmetry("Z", CKVS[7]), build_dirac_symmetry("W", PIS[4])):
        assert q.gamma5().gamma5().psi == q.psi and q.gamma5().gamma5().phi == q.phi
        assert q.conjugate().conjugate().phi == q.phi


def test_wrong_parameter_types():
    with pytest.raises(DomainError):
        build_dirac_symmetry("W", CKVS[0])
    with pytest.raises(DomainError):
        build_dirac_symmetry("Z", PIS[0])
    with pytest.raises(ValueError):
        build_dirac_symmetry("S", variants=("bogus",))


def test_lie_derivative():
    q = dirac_lie_derive(build_dirac_symmetry("W", PIS[-1]), CKVS[-1])
    assert q.order == 2 and verify_dirac(q)["pass"]


def test_dimensions():
    assert dirac_dimension(1) == 208
    assert all(dirac_dimension(r) == 4 * dimension_d_r(1, r) for r in range(1, 10))
    with pytest.raises(ValueError):
        dirac_dimension(0)


def test_constructive_rank():
    res = dirac_constructive_rank(1)
    assert res["rank"] == 208 == res["expected"]
