"""Brute-force ground truth, kept independent of the decomposition machinery."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from math import ceil, floor
from typing import Mapping, Sequence

from .cones import RationalSimplex, SimplicialAffineCone
from .engine import WeightPoly
from .exact_linalg import (common_denominator, dot, from_columns, hnf, inverse, matvec,
                           primitive_vector, solve, vec, vsub)
from .exceptions import DimensionNot2, InconsistentSamples, InsufficientSamples, NotSolid
from .quasipoly import QuasiPolynomial, assemble_quasipoly
from .series import (BiSeries, exp_factor, geometric_exp_factor, inv_linear_low_degree, product)


@dataclass(frozen=True)
class OracleResult:
    n: int
    value: Fraction
    point_count: int


def _integer_constraints(p: RationalSimplex, n: int) -> list[tuple[list[int], int]]:
    """Barycentric coordinates of n*p as integer half-spaces ``<a, x> + c >= 0``."""
    d = p.dim
    verts = [tuple(n * x for x in v) for v in p.vertices]
    to_bary = inverse(from_columns([vsub(v, verts[0]) for v in verts[1:]]))
    forms = []
    for row in to_bary:  # beta_i = <row, x - n*v0>
        forms.append((list(row), -dot(row, verts[0])))
    first = [-sum(row[j] for row, _ in forms) for j in range(d)]
    forms.append((first, 1 - sum(c for _, c in forms)))
    out = []
    for a, c in forms:
        scale = common_denominator(list(a) + [c])
        out.append(([int(x * scale) for x in a], int(c * scale)))
    return out


def enumerate_lattice_points(p: RationalSimplex, n: int) -> list[tuple[int, ...]]:
    """Integer points of n*p in lexicographic order.

    Scans the integer bounding box over all but the last coordinate and
    solves the barycentric inequalities exactly for the last one.
    """
    if n < 0:
        raise ValueError("dilation factor must be non-negative")
    d = p.dim
    if n == 0:
        return [(0,) * d]
    constraints = _integer_constraints(p, n)
    verts = [tuple(n * x for x in v) for v in p.vertices]
    ranges = [range(floor(min(v[i] for v in verts)), ceil(max(v[i] for v in verts)) + 1)
              for i in range(d - 1)]
    out = []
    for head in cartesian(*ranges):
        lo, hi = None, None
        for a, c in constraints:
            rest = c + sum(ai * xi for ai, xi in zip(a, head))
            slope = a[-1]
            if slope > 0:
                bound = -(rest // slope)  # ceil(-rest / slope)
                lo = bound if lo is None else max(lo, bound)
            elif slope < 0:
                bound = rest // -slope
                hi = bound if hi is None else min(hi, bound)
            elif rest < 0:
                lo, hi = 1, 0
                break
        if lo is None or hi is None:
            raise AssertionError("a simplex is bounded along every axis")
        out.extend(head + (x,) for x in range(lo, hi + 1))
    return out


def _weight_sum(h, points) -> Fraction:
    if h is None:
        return Fraction(len(points))
    if isinstance(h, WeightPoly):
        total = Fraction(0)
        for coef, form, power in h.terms:
            scale = common_denominator(form)
            ints = [int(x * scale) for x in form]
            acc = sum(sum(a * x for a, x in zip(ints, pt)) ** power for pt in points)
            total += coef * Fraction(acc, scale ** power)
        return total
    return sum((Fraction(h(x)) for x in points), Fraction(0))


def oracle_result(p: RationalSimplex, h, n: int) -> OracleResult:
    points = enumerate_lattice_points(p, n)
    return OracleResult(n, _weight_sum(h, points), len(points))


def weighted_sum_oracle(p: RationalSimplex, h, n: int) -> Fraction:
    """Sum of h over the integer points of n*p (``h=None`` counts them).

    ``h`` is a :class:`WeightPoly` or any callable on integer tuples.
    """
    return oracle_result(p, h, n).value


def _det2(u, v) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def slice_sum_oracle_2d(p: RationalSimplex, L_dir: Sequence, n: int) -> Fraction:
    """Total length of the slices of n*p by lattice lines parallel to ``L_dir``.

    The lattice lines parallel to a primitive w are the level sets
    det(w, x) = c, c an integer; lengths are measured in units of w.
    """
    if p.dim != 2:
        raise DimensionNot2("slice sums are defined for plane triangles")
    w = primitive_vector(L_dir)
    verts = [tuple(n * x for x in v) for v in p.vertices]
    half_planes = []
    for i in range(3):
        a, b, c = verts[i], verts[(i + 1) % 3], verts[(i + 2) % 3]
        edge = vsub(b, a)
        normal = (-edge[1], edge[0])
        if dot(normal, vsub(c, a)) < 0:
            normal = (edge[1], -edge[0])
        half_planes.append((normal, dot(normal, a)))  # <normal, x> >= offset
    levels = [_det2(w, v) for v in verts]
    norm2 = dot(w, w)
    total = Fraction(0)
    for c in range(ceil(min(levels)), floor(max(levels)) + 1):
        anchor = (-w[1] * Fraction(c) / norm2, w[0] * Fraction(c) / norm2)
        lo, hi, empty = None, None, False
        for normal, offset in half_planes:
            slope = dot(normal, w)
            rhs = offset - dot(normal, anchor)
            if slope == 0:
                empty |= rhs > 0
            elif slope > 0:
                lo = rhs / slope if lo is None else max(lo, rhs / slope)
            else:
                hi = rhs / slope if hi is None else min(hi, rhs / slope)
        if not empty and hi > lo:
            total += hi - lo
    return total


def _solve_vandermonde(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    rows = [[x ** m for m in range(len(xs))] for x in xs]
    return list(solve(rows, ys))


def fit_quasipoly(values: Mapping[int, Fraction], q: int, D: int) -> QuasiPolynomial:
    """Exact per-residue interpolation in ``u = (n - k)/q``."""
    polys = {}
    for k in range(q):
        samples = sorted((n, Fraction(v)) for n, v in values.items() if n % q == k)
        if len(samples) < D + 1:
            raise InsufficientSamples(f"residue {k} has {len(samples)} samples, need {D + 1}")
        us = [Fraction(n - k, q) for n, _ in samples]
        coeffs = _solve_vandermonde(us[: D + 1], [v for _, v in samples[: D + 1]])
        for u, (n, v) in zip(us[D + 1:], samples[D + 1:]):
            fitted = sum((c * u ** m for m, c in enumerate(coeffs)), Fraction(0))
            if fitted != v:
                raise InconsistentSamples(f"sample at n={n} is {v}, fit predicts {fitted}")
        polys[k] = coeffs
    return assemble_quasipoly(polys, q)


def parallelepiped_cone_series(a: SimplicialAffineCone, lam, ell=None, tau_max: int = 0,
                               t_max: int = 0) -> BiSeries:
    """S(a) for a solid cone in Z^d, as a sum over the half-open fundamental
    parallelepiped times the geometric series of the generators."""
    if not a.is_solid:
        raise NotSolid("parallelepiped sums need a solid cone")
    lam = vec(lam)
    ell = vec(ell) if ell is not None else tuple(Fraction(0) for _ in lam)
    d = a.ambient_dim
    V = from_columns(a.generators)
    Vinv = inverse(V)
    H, _ = hnf(V)
    points = []
    for rep in cartesian(*(range(int(H[i][i])) for i in range(d))):
        beta = matvec(Vinv, vsub(rep, a.vertex))
        shift = [floor(b) for b in beta]
        points.append(tuple(x - sum(f * g[i] for f, g in zip(shift, a.generators))
                            for i, x in enumerate(rep)))
    lows = [inv_linear_low_degree(dot(ell, g), t_max) for g in a.generators]
    window = tau_max - sum(lows)
    numerator = None
    for x in points:
        term = exp_factor(dot(lam, x), dot(ell, x), window, t_max)
        numerator = term if numerator is None else numerator + term
    factors = [(0, lambda w: numerator.truncate(w))]
    for g, low in zip(a.generators, lows):
        factors.append((low, lambda w, g=g: geometric_exp_factor(dot(lam, g), dot(ell, g), w, t_max)))
    return product(factors, tau_max, t_max).scale(a.sign)
