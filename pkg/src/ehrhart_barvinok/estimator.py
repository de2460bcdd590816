"""Estimator-style front end: fit a simplex, predict weighted counts of its dilations."""
from __future__ import annotations

from fractions import Fraction
from numbers import Integral

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .cones import RationalSimplex
from .engine import WeightPoly, ehrhart_quasipolynomial
from .exact_linalg import as_fraction
from .exceptions import BadArgs, ValidationError


def check_vertices(X) -> RationalSimplex:
    """Validate a vertex list (rows) and build the simplex."""
    try:
        rows = [list(row) for row in X]
    except TypeError as exc:
        raise ValidationError("vertices must be a sequence of coordinate sequences") from exc
    if not rows:
        raise ValidationError("no vertices given")
    return RationalSimplex(tuple(tuple(as_fraction(x) for x in row) for row in rows))


def check_dilations(n) -> list[int]:
    values = [n] if isinstance(n, Integral) else list(n)
    for v in values:
        if isinstance(v, bool) or not isinstance(v, Integral) or v < 0:
            raise ValidationError(f"dilation factors must be non-negative integers, got {v!r}")
    return [int(v) for v in values]


class EhrhartEstimator(BaseEstimator):
    """Fits the weighted Ehrhart quasi-polynomial n -> sum_{x in n*p cap Z^d} h(x).

    ``mode="top"`` keeps only the r+1 leading coefficients; such a fit exposes
    ``coefficients_`` but cannot ``predict``.
    """

    def __init__(self, weight: WeightPoly | None = None, mode: str = "exact", r: int | None = None,
                 seed: int = 0, order_pad: int = 0):
        self.weight = weight
        self.mode = mode
        self.r = r
        self.seed = seed
        self.order_pad = order_pad

    def fit(self, X, y=None):
        simplex = check_vertices(X)
        if self.mode not in ("exact", "top"):
            raise BadArgs(f"mode must be 'exact' or 'top', got {self.mode!r}")
        if self.weight is not None and self.weight.dim != simplex.dim:
            raise ValidationError("weight dimension differs from the simplex dimension")
        self.simplex_ = simplex
        self.n_features_in_ = simplex.dim
        self.quasipolynomial_ = ehrhart_quasipolynomial(simplex, self.weight, self.mode, self.r,
                                                        self.seed, self.order_pad)
        self.period_ = self.quasipolynomial_.period
        return self

    @property
    def coefficients_(self) -> tuple:
        check_is_fitted(self, "quasipolynomial_")
        return self.quasipolynomial_.u_coeffs

    def predict(self, n) -> list[Fraction]:
        check_is_fitted(self, "quasipolynomial_")
        if not self.quasipolynomial_.is_complete:
            raise BadArgs("a top-mode fit has no low-order coefficients to predict with")
        return [self.quasipolynomial_.evaluate(v) for v in check_dilations(n)]
