"""Local Euler-Maclaurin coefficients mu^L of plane cones, from closed forms.

Only lines L are covered, either along an edge of the cone or transverse to
both edges.  The functions are invariant under lattice translations, so the
vertex must be integral; the closed forms are written at vertex 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .barvinok import integral_series
from .cones import SimplicialAffineCone
from .exact_linalg import dot, is_integral, primitive_vector, vec
from .exceptions import DimensionNot2, NotRegular, ValidationError
from .mixed import line_mixed_series_2d, mixed_exp_sum_series
from .series import BiSeries, b_function_factor, exp_factor, inv_linear_factor


@dataclass(frozen=True)
class ScalarProduct2:
    gram: tuple

    def __post_init__(self):
        g = tuple(vec(row) for row in self.gram)
        if len(g) != 2 or any(len(row) != 2 for row in g):
            raise ValidationError("a plane scalar product needs a 2x2 Gram matrix")
        if g[0][1] != g[1][0]:
            raise ValidationError("Gram matrix is not symmetric")
        if not (g[0][0] > 0 and g[0][0] * g[1][1] - g[0][1] ** 2 > 0):
            raise ValidationError("Gram matrix is not positive definite")
        object.__setattr__(self, "gram", g)

    @classmethod
    def identity(cls) -> "ScalarProduct2":
        return cls(((1, 0), (0, 1)))

    def __call__(self, u: Sequence, v: Sequence) -> Fraction:
        u, v = vec(u), vec(v)
        return sum((u[i] * self.gram[i][j] * v[j] for i in range(2) for j in range(2)), Fraction(0))


@dataclass(frozen=True)
class EdgeLine:
    """``L`` spanned by generator ``index`` of the cone."""

    index: int


@dataclass(frozen=True)
class TransverseLine:
    direction: tuple


def _det2(u, v) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def _check_cone(a: SimplicialAffineCone) -> None:
    if a.ambient_dim != 2 or not a.is_solid:
        raise DimensionNot2("mu closed forms need a solid plane cone")
    if not is_integral(a.vertex):
        raise ValidationError("mu closed forms are implemented at lattice vertices only")


def _b(c, window: int) -> BiSeries:
    return b_function_factor(c, 0, window, 0)


def _over_linear(c, numerator_builder, tau_max: int) -> BiSeries:
    """numerator / (c*tau) known through tau^tau_max."""
    return inv_linear_factor(c, 0, tau_max + 1, 0).mul(numerator_builder(tau_max + 1), tau_max)


def _edge_setup(a: SimplicialAffineCone, L: EdgeLine, Q: ScalarProduct2):
    v1 = a.generators[L.index]
    v2 = a.generators[1 - L.index]
    c1 = Q(v1, v2) / Q(v1, v1)
    return v1, v2, abs(_det2(v1, v2)), c1


def _transverse_setup(a: SimplicialAffineCone, L: TransverseLine):
    u = primitive_vector(L.direction)
    v1, v2 = a.generators
    if _det2(u, v1) == 0 or _det2(u, v2) == 0:
        raise ValidationError("line is not transverse to both edges")
    if _det2(v1, v2) < 0:
        v1, v2 = v2, v1
    if _det2(u, v2) < 0:
        u = tuple(-x for x in u)
    return u, v1, v2


def mu_L_dim2(a: SimplicialAffineCone, L, Q: ScalarProduct2, lam, tau_max: int) -> dict[int, Fraction]:
    """tau-coefficients of mu^L(a)(tau*lam); a power series by regularity."""
    _check_cone(a)
    lam = vec(lam)
    if isinstance(L, EdgeLine):
        v1, v2, D, c1 = _edge_setup(a, L, Q)
        l1, l2 = dot(lam, v1), dot(lam, v2)
        series = _over_linear(l1, lambda w: _b((-c1 * l1 + l2) / D, w) - _b(l2 / D, w), tau_max)
    elif isinstance(L, TransverseLine):
        u, v1, v2 = _transverse_setup(a, L)
        series = _over_linear(dot(lam, u), lambda w: _b(dot(lam, v1) / _det2(u, v1), w)
                              - _b(dot(lam, v2) / _det2(u, v2), w), tau_max)
    else:
        raise ValidationError(f"unknown line description {L!r}")
    poles = sorted(j for j, _ in series.coeffs if j < 0)
    if poles:
        raise NotRegular(f"mu^L series has negative degrees {poles}")
    return {j: series.coeff(j) for j in range(tau_max + 1) if series.coeff(j)}


def _as_series(coeffs: dict, tau_max: int) -> BiSeries:
    return BiSeries({(j, 0): c for j, c in coeffs.items()}, tau_min=0, tau_max=tau_max)


def _assert_transverse_face_terms_vanish(a, u, lam, order: int) -> None:
    # The transverse cone along an edge is a half-line in R^2/lin(edge), and
    # L maps onto that whole line, where S^L and I coincide.
    for v in a.generators:
        other = next(g for g in a.generators if g != v)
        # coordinates on R^2/lin(v): the functional det(v, .) with image Z
        image = _det2(primitive_vector(v), other)
        ray = SimplicialAffineCone((Fraction(0),), ((image,),))
        pairing = (dot(lam, u) / _det2(primitive_vector(v), u),)
        diff = (mixed_exp_sum_series(ray, {0}, pairing, None, order, 0)
                - integral_series(ray, pairing, None, order, 0))
        if not diff.is_zero():
            raise NotRegular("face contribution of a transverse line does not vanish")


def verify_euler_maclaurin_dim2(a: SimplicialAffineCone, L, Q: ScalarProduct2, lam,
                                order: int) -> dict[int, Fraction]:
    """Coefficients of S^L(a) minus its Euler-Maclaurin expansion, through tau^order."""
    _check_cone(a)
    lam = vec(lam)
    if isinstance(L, EdgeLine):
        lhs = mixed_exp_sum_series(a, {L.index}, lam, None, order, 0)
        v1, v2, D, c1 = _edge_setup(a, L, Q)
        l1, l2 = dot(lam, v1), dot(lam, v2)
        face_term = inv_linear_factor(l1, 0, order + 1, 0).scale(-1).mul(
            _b((-c1 * l1 + l2) / D, order + 1), order)
        rhs0 = _as_series(mu_L_dim2(a.with_vertex((0, 0)), L, Q, lam, order + 2), order + 2) + face_term
    elif isinstance(L, TransverseLine):
        lhs = line_mixed_series_2d(a, L.direction, lam, None, order, 0)
        u, _, _ = _transverse_setup(a, L)
        _assert_transverse_face_terms_vanish(a, u, lam, order)
        rhs0 = _as_series(mu_L_dim2(a.with_vertex((0, 0)), L, Q, lam, order + 2), order + 2)
    else:
        raise ValidationError(f"unknown line description {L!r}")
    rhs0 = rhs0 + integral_series(a.with_vertex((0, 0)), lam, None, order + 2, 0)
    shift = exp_factor(dot(lam, a.vertex), 0, order + 2, 0)
    residual = lhs - shift.mul(rhs0, order)
    return {j: c for (j, _), c in sorted(residual.coeffs.items())}
