from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ehrhart_barvinok import (RationalSimplex, SimplicialAffineCone, WeightPoly, decompose_monomial,
                              ehrhart_quasipolynomial, ehrhart_residue_poly, ehrhart_top_coeffs,
                              generic_lambda, vertex_cones, weighted_cone_series, weighted_sum_oracle)
from ehrhart_barvinok.engine import weight_from_monomials
from ehrhart_barvinok.exceptions import BadArgs, ValidationError

F = Fraction
TRIANGLE = RationalSimplex(((0, 0), (1, 0), (0, 1)))
HALF_SEGMENT = RationalSimplex(((0,), (F(1, 2),)))
RAY = SimplicialAffineCone((0,), ((1,),))


def test_decompose_monomial_examples():
    assert decompose_monomial((1,)) == WeightPoly(((1, (1,), 1),))
    assert decompose_monomial((2,)) == WeightPoly(((1, (1,), 2),))
    xy = decompose_monomial((1, 1))
    assert sorted(xy.terms) == sorted([(F(-1, 2), (0, 1), 2), (F(-1, 2), (1, 0), 2), (F(1, 2), (1, 1), 2)])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=3), st.data())
def test_decompose_monomial_evaluates_to_the_monomial(exps, data):
    h = decompose_monomial(exps)
    x = data.draw(st.lists(st.integers(-5, 5), min_size=len(exps), max_size=len(exps)))
    expected = 1
    for xi, e in zip(x, exps):
        expected *= xi ** e
    assert h(x) == expected


def test_weight_from_monomials():
    h = weight_from_monomials([(2, (1, 0)), (F(1, 3), (0, 2))], 2)
    assert h((3, 4)) == 2 * 3 + F(16, 3)
    with pytest.raises(ValidationError):
        weight_from_monomials([(1, (1,))], 2)
    with pytest.raises(ValidationError):
        decompose_monomial((-1,))


def test_generic_lambda_is_deterministic():
    cones = vertex_cones(TRIANGLE)
    lam = generic_lambda(cones, 0)
    assert lam == generic_lambda(cones, 0)
    assert all(sum(a * b for a, b in zip(lam, g)) != 0 for c in cones for g in c.generators)
    assert generic_lambda([SimplicialAffineCone((0, 0), ((1, 0),))], 3)[0] != 0


def test_weighted_cone_series_unweighted():
    assert weighted_cone_series(RAY, WeightPoly.one(1), lam=(1,), tau_max=1) == {-1: -1, 0: F(1, 2), 1: F(-1, 12)}


def test_weighted_cone_series_linear_weight():
    s = weighted_cone_series(RAY, decompose_monomial((1,)), lam=(1,), tau_max=0)
    assert (s.get(-2, 0), s.get(-1, 0), s.get(0, 0)) == (1, 0, F(-1, 12))


def test_weighted_cone_series_quadrant_separates():
    quad = SimplicialAffineCone((0, 0), ((1, 0), (0, 1)))
    lam = (1, 3)
    s = weighted_cone_series(quad, decompose_monomial((1, 1)), lam=lam, tau_max=0)
    a = weighted_cone_series(RAY, decompose_monomial((1,)), lam=(1,), tau_max=2)
    b = weighted_cone_series(RAY, decompose_monomial((1,)), lam=(3,), tau_max=2)
    prod = {}
    for i, x in a.items():
        for j, y in b.items():
            if i + j <= 0:
                prod[i + j] = prod.get(i + j, 0) + x * y
    assert s == {j: v for j, v in prod.items() if v}


def test_residue_poly_examples():
    one = WeightPoly.one(2)
    assert ehrhart_residue_poly(TRIANGLE, one, 0) == [1, F(3, 2), F(1, 2)]
    assert ehrhart_residue_poly(TRIANGLE, decompose_monomial((1, 0)), 0) == [0, F(1, 3), F(1, 2), F(1, 6)]
    for k in (0, 1):
        assert ehrhart_residue_poly(HALF_SEGMENT, WeightPoly.one(1), k) == [1, 1]
    with pytest.raises(BadArgs):
        ehrhart_residue_poly(HALF_SEGMENT, WeightPoly.one(1), 2)
    with pytest.raises(BadArgs):
        ehrhart_residue_poly(TRIANGLE, one, 0, mode="fast")
    with pytest.raises(BadArgs):
        ehrhart_residue_poly(TRIANGLE, one, 0, mode="top", r=3)


def test_top_coefficient_examples():
    assert ehrhart_top_coeffs(TRIANGLE, None, 0) == {2: [F(1, 2)]}
    assert ehrhart_top_coeffs(TRIANGLE, None, 1) == {1: [F(3, 2)], 2: [F(1, 2)]}
    assert ehrhart_top_coeffs(HALF_SEGMENT, None, 1) == {0: [1, 1], 1: [1, 1]}
    assert ehrhart_top_coeffs(HALF_SEGMENT, None, 1, form="n") == {0: [1, F(1, 2)], 1: [F(1, 2), F(1, 2)]}
    assert ehrhart_top_coeffs(HALF_SEGMENT, None, 0, form="n") == {1: [F(1, 2), F(1, 2)]}


def test_mixed_degree_weight_in_top_mode():
    p = RationalSimplex(((0, 0), (F(3, 2), 0), (F(1, 3), 1)))
    h = WeightPoly.one(2) + decompose_monomial((1, 1))
    exact = ehrhart_quasipolynomial(p, h)
    for r in (0, 1, 2):
        top = ehrhart_top_coeffs(p, h, r)
        assert min(top) == (4 - r if r < 2 else 0)
        for m, values in top.items():
            assert values == [exact.u_coeffs[k][m] for k in range(p.period)]


def test_degree_bound_and_oracle():
    p = RationalSimplex(((F(1, 2), 0, 0), (0, F(2, 3), 0), (0, 0, 1), (1, 1, F(1, 2))))
    h = decompose_monomial((0, 1, 1))
    qp = ehrhart_quasipolynomial(p, h)
    assert qp.degree == 3 + 2
    assert all(qp(n) == weighted_sum_oracle(p, h, n) for n in range(0, 13))


def test_closed_form_linear_weight():
    qp = ehrhart_quasipolynomial(TRIANGLE, decompose_monomial((1, 0)))
    assert all(qp(n) == F(n * (n + 1) * (n + 2), 6) for n in range(30))
    qp = ehrhart_quasipolynomial(RationalSimplex(((0,), (1,))), decompose_monomial((1,)))
    assert qp(4) == 10


def test_seed_independence():
    p = RationalSimplex(((0, F(1, 3)), (2, 0), (F(1, 2), F(5, 2))))
    h = decompose_monomial((2, 0))
    assert ehrhart_quasipolynomial(p, h, seed=0) == ehrhart_quasipolynomial(p, h, seed=9)


def test_weight_poly_simplification():
    h = WeightPoly(((1, (2, 4), 2), (3, (-1, -2), 2), (5, (0, 0), 0)))
    s = h.simplified()
    assert len(s.terms) == 2
    assert all(s((x, y)) == h((x, y)) for x in range(-2, 3) for y in range(-2, 3))
    assert s.homogeneous_parts().keys() == {0, 2}
    assert WeightPoly.linear_form((1, 1), 3)((1, 1)) == 8
