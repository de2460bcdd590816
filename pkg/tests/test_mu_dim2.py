from fractions import Fraction

import pytest

from ehrhart_barvinok import (EdgeLine, ScalarProduct2, SimplicialAffineCone, TransverseLine,
                              mu_L_dim2, verify_euler_maclaurin_dim2)
from ehrhart_barvinok.exceptions import ValidationError

F = Fraction
QUAD = SimplicialAffineCone((0, 0), ((1, 0), (0, 1)))
I2 = ScalarProduct2.identity()


def test_scalar_product_validation():
    with pytest.raises(ValidationError):
        ScalarProduct2(((1, 2), (0, 1)))
    with pytest.raises(ValidationError):
        ScalarProduct2(((1, 2), (2, 1)))
    assert ScalarProduct2(((2, 1), (1, 3)))((1, 0), (0, 1)) == 1


def test_transverse_constant_term():
    for lam in ((1, 2), (3, -5), (-7, 2)):
        mu = mu_L_dim2(QUAD, TransverseLine((1, 1)), I2, lam, 3)
        assert mu.get(0) == F(1, 12)
        assert all(j >= 0 for j in mu)


def test_edge_with_orthogonal_generators_vanishes():
    mu = mu_L_dim2(QUAD, EdgeLine(0), I2, (1, 2), 4)
    assert not any(mu.values())


@pytest.mark.parametrize("a, L", [
    (SimplicialAffineCone((0, 0), ((1, 0), (1, 2))), EdgeLine(0)),
    (QUAD, TransverseLine((1, 1))),
    (SimplicialAffineCone((1, 1), ((1, 0), (1, 2))), EdgeLine(0)),
    (SimplicialAffineCone((1, 1), ((1, 0), (0, 1))), TransverseLine((1, 1))),
])
@pytest.mark.parametrize("Q", [I2, ScalarProduct2(((2, 1), (1, 3)))])
def test_residual_vanishes(a, L, Q):
    assert verify_euler_maclaurin_dim2(a, L, Q, (3, 7), 4) == {}


def test_mu_is_translation_invariant():
    moved = SimplicialAffineCone((1, 1), ((1, 0), (1, 2)))
    base = SimplicialAffineCone((0, 0), ((1, 0), (1, 2)))
    for L in (EdgeLine(1), TransverseLine((1, -1))):
        assert mu_L_dim2(moved, L, I2, (2, 5), 4) == mu_L_dim2(base, L, I2, (2, 5), 4)
