from fractions import Fraction

import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from ehrhart_barvinok import EhrhartEstimator, decompose_monomial
from ehrhart_barvinok.exceptions import BadArgs, ValidationError

F = Fraction
TRIANGLE = [[0, 0], [1, 0], [0, 1]]


def test_fit_predict_counts():
    est = EhrhartEstimator().fit(TRIANGLE)
    assert est.predict(range(5)) == [1, 3, 6, 10, 15]
    assert est.coefficients_ == ((1, F(3, 2), F(1, 2)),)
    assert est.n_features_in_ == 2 and est.period_ == 1


def test_rational_vertices_as_strings():
    est = EhrhartEstimator().fit([["0"], ["1/2"]])
    assert est.period_ == 2 and est.predict(5) == [3]


def test_weighted_fit():
    est = EhrhartEstimator(weight=decompose_monomial((1, 0))).fit(TRIANGLE)
    assert est.predict([2, 3]) == [4, 10]


def test_top_mode_fit():
    est = EhrhartEstimator(mode="top", r=0).fit(TRIANGLE)
    assert est.coefficients_ == ((None, None, F(1, 2)),)
    with pytest.raises(BadArgs):
        est.predict(3)


def test_params_and_clone():
    est = EhrhartEstimator(mode="top", r=1, seed=4)
    assert est.get_params()["seed"] == 4
    assert clone(est).get_params() == est.get_params()


def test_not_fitted_and_bad_input():
    with pytest.raises(NotFittedError):
        EhrhartEstimator().predict(1)
    with pytest.raises(ValidationError):
        EhrhartEstimator().fit([[0, 0], [1, 1], [2, 2]])
    with pytest.raises(ValidationError):
        EhrhartEstimator(weight=decompose_monomial((1,))).fit(TRIANGLE)
    with pytest.raises(BadArgs):
        EhrhartEstimator(mode="fast").fit(TRIANGLE)
    with pytest.raises(ValidationError):
        EhrhartEstimator().fit(TRIANGLE).predict([-1])
