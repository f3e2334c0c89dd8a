import json

import pytest

from spinsym.field import I
from spinsym.killing import (
    DomainError, complex_rank, conformal_killing_basis, derivative_exchange_check,
    factorization_span_check, killing_dimension, killing_residual, solve_killing,
    wave_identity_check,
)
from spinsym.poly import Polynomial


@pytest.mark.parametrize("k,l,dim", [(0, 0, 1), (1, 1, 15), (0, 2, 10), (0, 3, 20), (0, 4, 35)])
def test_dimension_formulas(k, l, dim):
    assert killing_dimension(k, l) == dim
    basis = solve_killing(k, l)
    assert basis.dimension == dim
    for ks in basis:
        assert not any(killing_residual(k, l, ks.comps).values())


def test_conjugate_types_have_no_formula():
    with pytest.raises(DomainError):
        killing_dimension(2, 0)


def test_larger_degree_bound_adds_nothing():
    assert solve_killing(1, 1, degree_bound=4).dimension == 15


def test_non_solution_has_residual():
    y = solve_killing(0, 2).elements[-1].comps
    bad = dict(y)
    bad[(0, 1)] = bad[(0, 1)] + Polynomial.const(1) * bad[(0, 0)]
    assert bad[(0, 1)] != y[(0, 1)]
    assert any(killing_residual(0, 2, bad).values())


def test_conformal_killing_vectors():
    ckvs = conformal_killing_basis()
    assert len(ckvs) == 15
    spinors = [x.killing_spinor() for x in ckvs]
    for ks in spinors:
        assert not any(killing_residual(1, 1, ks.comps).values())
    assert complex_rank(spinors) == 15
    assert complex_rank(spinors + [s.scale(I) for s in spinors]) == 15
    d = {x.name: x for x in ckvs}
    assert d["P0"].divergence().is_zero()
    assert d["M12"].divergence().is_zero()
    assert not d["D"].divergence().is_zero()


def test_factorization():
    assert factorization_span_check(1)["pass"]
    assert factorization_span_check(1, two_s=2)["pass"]


def test_second_derivative_identities():
    for pi in solve_killing(0, 4):
        assert wave_identity_check(pi)
        assert derivative_exchange_check(pi)


def test_cache_round_trip(tmp_path):
    first = solve_killing(0, 2, use_cache=True, cache_root=tmp_path)
    files = list(tmp_path.glob("killing_0_2_*.json"))
    assert len(files) == 1
    again = solve_killing(0, 2, use_cache=True, cache_root=tmp_path)
    assert [a.comps for a in again] == [b.comps for b in first]


def test_stale_cache_is_ignored(tmp_path):
    solve_killing(0, 2, use_cache=True, cache_root=tmp_path)
    path = next(tmp_path.glob("killing_0_2_*.json"))
    doc = json.loads(path.read_text())
    doc["convention_hash"] = "stale"
    doc["basis"] = []
    path.write_text(json.dumps(doc))
    assert solve_killing(0, 2, use_cache=True, cache_root=tmp_path).dimension == 10
    path.write_text("{not json")
    assert solve_killing(0, 2, use_cache=True, cache_root=tmp_path).dimension == 10
