import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ehrhart_barvinok import (SimplicialAffineCone, dual_cone, exp_sum_series, integral_series,
                              unimodular_decompose)
from ehrhart_barvinok.exact_linalg import det, from_columns
from ehrhart_barvinok.exceptions import LambdaNotGeneric, NotSolid
from ehrhart_barvinok.oracle import parallelepiped_cone_series
from support import random_solid_cone

F = Fraction
Z = sympy.Symbol("z")


def test_dual_cone_examples():
    assert dual_cone([(1, 0), (0, 1)]) == [(1, 0), (0, 1)]
    assert set(dual_cone([(1, 0), (1, 2)])) == {(0, 1), (2, -1)}
    gens = [(1, 0, 0), (1, 3, 0), (2, 1, 5)]
    assert set(dual_cone(dual_cone(gens))) == set(gens)
    with pytest.raises(NotSolid):
        dual_cone([(1, 0), (2, 0)])


def test_decompose_unimodular_is_identity():
    out = unimodular_decompose([(1, 0), (0, 1)])
    assert len(out) == 1 and out.cones[0].sign == 1
    assert set(out.ambient_generators(0)) == {(1, 0), (0, 1)}


def _enumerated_z_series(gens, lam, top):
    """Coefficients of z^j for the points x of the cone with <lam, x> = j <= top."""
    counts = [0] * (top + 1)
    V = from_columns(gens)
    dv = det(V)
    bound = top * 4 + 4
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            j = lam[0] * x + lam[1] * y
            if 0 <= j <= top:
                # barycentric coordinates by Cramer's rule
                a = (x * V[1][1] - y * V[0][1]) / dv
                b = (y * V[0][0] - x * V[1][0]) / dv
                if a >= 0 and b >= 0:
                    counts[j] += 1
    return counts


@pytest.mark.parametrize("gens", [[(1, 0), (1, 2)], [(1, 0), (1, 4)], [(1, 0), (3, 7)], [(2, -1), (1, 5)]])
def test_decomposition_against_enumeration(gens):
    lam, top = (1, 1), 8
    cones = unimodular_decompose(gens)
    assert all(abs(det(from_columns(cones.ambient_generators(i)))) == 1 for i in range(len(cones)))
    total = 0
    for i, cone in enumerate(cones.cones):
        term = sympy.Integer(cone.sign)
        for w in cones.ambient_generators(i):
            term /= 1 - Z ** int(lam[0] * w[0] + lam[1] * w[1])
        total += term
    series = sympy.series(sympy.cancel(total), Z, 0, top + 1).removeO()
    expected = _enumerated_z_series(gens, lam, top)
    assert [series.coeff(Z, j) for j in range(top + 1)] == expected


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_exp_sum_matches_parallelepiped(seed, d):
    rng = random.Random(seed)
    a = random_solid_cone(rng, d, entry=4, den=3)
    lam = tuple(rng.randint(-30, 30) for _ in range(d))
    ell = tuple(rng.randint(-3, 3) for _ in range(d))
    try:
        fast = exp_sum_series(a, lam, ell, 3, 1)
    except LambdaNotGeneric:
        return
    assert fast == parallelepiped_cone_series(a, lam, ell, 3, 1)
    assert fast == exp_sum_series(a, lam, ell, 3, 1, pick=1)


def test_exp_sum_rays():
    s = exp_sum_series(SimplicialAffineCone((0,), ((1,),)), (1,), None, 1, 0)
    assert [s.coeff(j) for j in (-1, 0, 1)] == [-1, F(1, 2), F(-1, 12)]
    s = exp_sum_series(SimplicialAffineCone((F(1, 2),), ((1,),)), (1,), None, 1, 0)
    assert [s.coeff(j) for j in (-1, 0, 1)] == [-1, F(-1, 2), F(-1, 12)]


def test_exp_sum_quadrant_is_a_product():
    s = exp_sum_series(SimplicialAffineCone((0, 0), ((1, 0), (0, 1))), (1, 2), None, 2, 0)
    one = exp_sum_series(SimplicialAffineCone((0,), ((1,),)), (1,), None, 4, 0)
    two = exp_sum_series(SimplicialAffineCone((0,), ((1,),)), (2,), None, 4, 0)
    assert s.agrees_with(one.mul(two), 2)


def test_lambda_not_generic():
    with pytest.raises(LambdaNotGeneric):
        exp_sum_series(SimplicialAffineCone((0, 0), ((1, 0), (0, 1))), (0, 1), None, 0, 0)


def test_integral_examples():
    quad = SimplicialAffineCone((0, 0), ((1, 0), (0, 1)))
    assert integral_series(quad, (1, 1), None, 2, 0).coeffs == {(-2, 0): 1}
    assert integral_series(SimplicialAffineCone((0,), ((1,),)), (1,), None, 2, 0).coeffs == {(-1, 0): -1}
    s = integral_series(SimplicialAffineCone((1,), ((1,),)), (1,), None, 1, 0)
    assert [s.coeff(j) for j in (-1, 0, 1)] == [-1, -1, F(-1, 2)]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 4))
def test_integral_is_homogeneous(seed, d):
    rng = random.Random(seed)
    a = random_solid_cone(rng, d)
    a = SimplicialAffineCone((0,) * d, a.generators)
    lam = tuple(rng.randint(-30, 30) for _ in range(d))
    try:
        s = integral_series(a, lam, None, 3, 0)
    except LambdaNotGeneric:
        return
    assert set(s.coeffs) == {(-d, 0)}
