"""Shared generators and independent reference computations for the tests."""
from __future__ import annotations

import random
from fractions import Fraction

import sympy

from ehrhart_barvinok import RationalSimplex, SimplicialAffineCone, decompose_monomial
from ehrhart_barvinok.exact_linalg import det, from_columns, vsub

TAU = sympy.Symbol("tau")


def sympy_series(expr, order: int) -> dict[int, Fraction]:
    """Laurent coefficients of ``expr`` in ``TAU`` up to and including ``order``."""
    expansion = sympy.series(expr, TAU, 0, order + 1).removeO()
    poly = sympy.expand(expansion * TAU ** 50)
    out = {}
    for term in sympy.Add.make_args(poly):
        coef, power = term.as_coeff_exponent(TAU)
        if coef:
            out[int(power) - 50] = Fraction(int(sympy.fraction(coef)[0]), int(sympy.fraction(coef)[1]))
    return out


def series_coeffs(series, order: int, k: int = 0) -> dict[int, Fraction]:
    return {j: v for j, v in series.t_slice(k).items() if j <= order and v}


def random_solid_cone(rng: random.Random, d: int, entry: int = 5, den: int = 4,
                      integral_vertex: bool = False) -> SimplicialAffineCone:
    while True:
        gens = [tuple(rng.randint(-entry, entry) for _ in range(d)) for _ in range(d)]
        if det(from_columns(gens)) != 0:
            break
    if integral_vertex:
        vertex = tuple(rng.randint(-3, 3) for _ in range(d))
    else:
        vertex = tuple(Fraction(rng.randint(-2 * den, 2 * den), rng.randint(1, den)) for _ in range(d))
    return SimplicialAffineCone(vertex, gens)


def random_simplex(rng: random.Random, d: int, den: int = 3, span: int = 2) -> RationalSimplex:
    """Vertices in [0, span]^d whose coordinates have denominators dividing some q <= den."""
    while True:
        dens = [rng.randint(1, den) for _ in range(d + 1)]
        verts = [tuple(Fraction(rng.randint(0, span * q), q) for _ in range(d)) for q in dens]
        if det(from_columns([vsub(v, verts[0]) for v in verts[1:]])) != 0:
            return RationalSimplex(verts)


def weights_for(d: int) -> list[tuple[str, object]]:
    """The weights x1, x1^2 and (for d >= 2) x1*x2."""
    pad = (0,) * (d - 1)
    out = [("x1", decompose_monomial((1,) + pad)), ("x1^2", decompose_monomial((2,) + pad))]
    if d >= 2:
        out.append(("x1*x2", decompose_monomial((1, 1) + (0,) * (d - 2))))
    return out
