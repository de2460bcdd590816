"""Weighted Ehrhart quasi-polynomials of rational simplices via Brion's theorem.

For a dilation ``n = q*u + k`` the supporting cone of ``n*p`` at ``n*s`` is
``q*u*s + (k*s + c_s)`` with ``q*u*s`` integral, so the only u-dependence is
the exponential ``e^<xi, q*u*s>``.  A weight ``c*<ell, x>^N`` becomes an
N-th derivative in the direction ``ell``, which we realize by restricting to
``xi = tau*lam + t*ell`` and reading off ``t^N``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from math import comb, factorial, prod
from typing import Iterable, Iterator, Sequence

from .barvinok import _decompose_primal, _int_key, exp_sum_series
from .cones import RationalSimplex, SimplicialAffineCone, vertex_cones
from .exact_linalg import dot, primitive_vector, vec
from .exceptions import (BadArgs, ExhaustedGenericity, InternalAssertion, LambdaNotGeneric,
                         ValidationError)
from .mixed import barvinok_valuation_series, line_mixed_series_2d
from .quasipoly import QuasiPolynomial, assemble_quasipoly
from .series import BiSeries, linear_power

MAX_LAMBDA_DRAWS = 1000


@dataclass(frozen=True)
class WeightPoly:
    """``h(x) = sum coef * <form, x>^power``."""

    terms: tuple

    def __post_init__(self):
        cleaned = []
        for coef, form, power in self.terms:
            if not isinstance(power, int) or power < 0:
                raise ValidationError(f"power must be a non-negative integer, got {power!r}")
            cleaned.append((Fraction(coef), vec(form), power))
        if not cleaned:
            raise ValidationError("a weight needs at least one term")
        dims = {len(f) for _, f, _ in cleaned}
        if len(dims) != 1:
            raise ValidationError("weight forms have different dimensions")
        object.__setattr__(self, "terms", tuple(cleaned))

    @classmethod
    def one(cls, d: int) -> "WeightPoly":
        return cls(((1, (0,) * d, 0),))

    @classmethod
    def linear_form(cls, form: Sequence, power: int = 1, coef=1) -> "WeightPoly":
        return cls(((coef, form, power),))

    @property
    def dim(self) -> int:
        return len(self.terms[0][1])

    @property
    def max_degree(self) -> int:
        return max(n for _, _, n in self.terms)

    def __call__(self, x: Sequence) -> Fraction:
        x = vec(x)
        return sum((c * dot(f, x) ** n for c, f, n in self.terms), Fraction(0))

    def __add__(self, other: "WeightPoly") -> "WeightPoly":
        return WeightPoly(self.terms + other.terms)

    def scale(self, c) -> "WeightPoly":
        return WeightPoly(tuple((Fraction(c) * a, f, n) for a, f, n in self.terms))

    def simplified(self) -> "WeightPoly":
        """Merge proportional forms of equal power; drop vanishing terms."""
        d = self.dim
        merged: dict = {}
        for c, f, n in self.terms:
            if n == 0:
                key = ((Fraction(0),) * d, 0)
            elif not any(f):
                continue
            else:
                g = primitive_vector(f)
                lead = next(i for i, x in enumerate(g) if x)
                if g[lead] < 0:
                    g = tuple(-x for x in g)
                c = c * (f[lead] / g[lead]) ** n
                key = (g, n)
            merged[key] = merged.get(key, 0) + c
        terms = tuple((c, f, n) for (f, n), c in sorted(merged.items(), key=lambda kv: (kv[0][1], kv[0][0]))
                      if c)
        return WeightPoly(terms) if terms else WeightPoly(((0, (0,) * d, 0),))

    def homogeneous_parts(self) -> dict[int, "WeightPoly"]:
        parts: dict = {}
        for term in self.terms:
            parts.setdefault(term[2], []).append(term)
        return {n: WeightPoly(tuple(ts)) for n, ts in sorted(parts.items())}


def decompose_monomial(exponents: Sequence[int]) -> WeightPoly:
    """Write x^m as a combination of |m|-th powers of linear forms."""
    m = [int(e) for e in exponents]
    if any(e < 0 for e in m):
        raise ValidationError("monomial exponents must be non-negative")
    total = sum(m)
    terms = []
    for p in cartesian(*(range(e + 1) for e in m)):
        if total and not any(p):
            continue
        sign = (-1) ** (total - sum(p))
        coef = Fraction(sign * prod(comb(e, pi) for e, pi in zip(m, p)), factorial(total))
        terms.append((coef, p, total))
    return WeightPoly(tuple(terms)).simplified()


def weight_from_monomials(monomials: Iterable[tuple], d: int) -> WeightPoly:
    """``monomials`` are ``(coef, exponents)`` pairs."""
    total = None
    for coef, exps in monomials:
        if len(exps) != d:
            raise ValidationError(f"monomial {exps} does not have {d} exponents")
        part = decompose_monomial(exps).scale(coef)
        total = part if total is None else total + part
    if total is None:
        raise ValidationError("empty monomial list")
    return total.simplified()


# -- generic deformation direction ---------------------------------------------

def _unimodular_generators(cones: Sequence[SimplicialAffineCone]) -> list[tuple]:
    out = []
    for a in cones:
        if a.is_solid:
            for _, primal, _ in _decompose_primal(_int_key(a.generators)):
                out.extend(primal)
    return out


def lambda_candidates(cones: Sequence[SimplicialAffineCone], seed: int) -> Iterator[tuple]:
    """Deterministic stream of integer vectors nonvanishing on the cones' generators
    and on the generators of their unimodular decompositions."""
    if not cones:
        raise BadArgs("need at least one cone")
    d = cones[0].ambient_dim
    rng = random.Random(seed)
    gens = [g for a in cones for g in a.generators] + _unimodular_generators(cones)
    for _ in range(MAX_LAMBDA_DRAWS):
        lam = tuple(Fraction(rng.randint(-30, 30)) for _ in range(d))
        if all(dot(lam, g) != 0 for g in gens):
            yield lam
    raise ExhaustedGenericity(f"no generic lambda after {MAX_LAMBDA_DRAWS} draws")


def generic_lambda(cones: Sequence[SimplicialAffineCone], seed: int) -> tuple:
    return next(lambda_candidates(cones, seed))


def with_generic_lambda(cones, seed, compute):
    """Run ``compute(lam)``; redraw lambda whenever a downstream pairing vanishes."""
    for lam in lambda_candidates(cones, seed):
        try:
            return compute(lam)
        except LambdaNotGeneric:
            continue
    raise ExhaustedGenericity("every lambda drawn hit a vanishing pairing")


# -- per-cone series -----------------------------------------------------------

def _cone_series(a: SimplicialAffineCone, mode: str, r: int | None, lam, ell, tau_max: int,
                 t_max: int) -> BiSeries:
    if mode == "exact":
        return exp_sum_series(a, lam, ell, tau_max, t_max)
    if mode == "top":
        return barvinok_valuation_series(a, r, lam, ell, tau_max, t_max)
    raise BadArgs(f"unknown mode {mode!r}")


def weighted_cone_series(a: SimplicialAffineCone, h: WeightPoly, mode: str = "exact",
                         r: int | None = None, lam=None, tau_max: int = 0) -> dict[int, Fraction]:
    """tau-coefficients of S(a, h)(tau*lam) (or the patchwork version in top mode)."""
    out: dict[int, Fraction] = {}
    for c, ell, N in h.terms:
        series = _cone_series(a, mode, r, lam, ell, tau_max, N)
        for j, v in series.t_slice(N).items():
            out[j] = out.get(j, 0) + c * factorial(N) * v
    return {j: v for j, v in sorted(out.items()) if v}


# -- Ehrhart coefficients ------------------------------------------------------

def top_threshold(d: int, N: int, r: int) -> int:
    """Smallest u-degree the patchwork sum of codimension ``r`` still gets right."""
    return 0 if r >= d else max(0, d + N - r)


def _check_mode(p: RationalSimplex, mode: str, r: int | None) -> None:
    if mode == "top":
        if r is None or not 0 <= r <= p.dim:
            raise BadArgs(f"top mode needs 0 <= r <= {p.dim}")
    elif mode != "exact":
        raise BadArgs(f"unknown mode {mode!r}")


def brion_series(p: RationalSimplex, k: int, lam, ell=None, N: int = 0, m_values=(0,),
                 mode: str = "exact", r: int | None = None, order_pad: int = 0) -> dict[int, BiSeries]:
    """For each m, the sum over vertices s of (<xi, s>)^m * S(k*s + c_s)(xi) at xi = tau*lam + t*ell.

    In exact mode every one of these is analytic at 0 (Brion cancellation).
    """
    lam = vec(lam)
    ell = vec(ell) if ell is not None else tuple(Fraction(0) for _ in lam)
    cones = [a.with_vertex(tuple(k * x for x in a.vertex)) for a in vertex_cones(p)]
    series = [_cone_series(a, mode, r, lam, ell, order_pad, N) for a in cones]
    out = {}
    for m in m_values:
        total = None
        for s, ser in zip(p.vertices, series):
            term = linear_power(dot(lam, s), dot(ell, s), m, N).mul(ser, order_pad)
            total = term if total is None else total + term
        out[m] = total
    return out


def _residue_coeffs(p: RationalSimplex, h: WeightPoly, k: int, mode: str, r: int | None,
                    lam, order_pad: int) -> list:
    d, q = p.dim, p.period
    D = d + h.max_degree
    threshold = 0 if mode == "exact" else top_threshold(d, h.max_degree, r)
    coeffs: list = [Fraction(0) if m >= threshold else None for m in range(D + 1)]
    top_m = D + 1 if mode == "exact" else D
    for c, ell, N in h.terms:
        table = brion_series(p, k, lam, ell, N, range(threshold, top_m + 1), mode, r, order_pad)
        for m, total in table.items():
            if mode == "exact":
                bad = [(j, kk) for (j, kk), v in total.coeffs.items() if j < 0]
                if bad:
                    raise InternalAssertion(f"Brion sum has a pole: residue {k}, m={m}, "
                                            f"coefficients {sorted(bad)[:3]}")
            value = c * factorial(N) * Fraction(q) ** m / factorial(m) * total.coeff(0, N)
            if m > D:
                if value:
                    raise InternalAssertion(f"degree bound violated: u^{m} coefficient {value}")
                continue
            coeffs[m] += value
    return coeffs


def ehrhart_residue_poly(p: RationalSimplex, h: WeightPoly, k: int, mode: str = "exact",
                         r: int | None = None, seed: int = 0, order_pad: int = 0) -> list:
    """u-coefficients of n = q*u + k  ->  sum of h over n*p; ``None`` below the top threshold."""
    _check_mode(p, mode, r)
    if not 0 <= k < p.period:
        raise BadArgs(f"residue {k} outside 0..{p.period - 1}")
    return with_generic_lambda(vertex_cones(p), seed,
                                lambda lam: _residue_coeffs(p, h, k, mode, r, lam, order_pad))


def ehrhart_quasipolynomial(p: RationalSimplex, h: WeightPoly | None = None, mode: str = "exact",
                            r: int | None = None, seed: int = 0, order_pad: int = 0) -> QuasiPolynomial:
    """All residues at once, sharing one lambda."""
    h = h if h is not None else WeightPoly.one(p.dim)
    _check_mode(p, mode, r)

    def compute(lam):
        return {k: _residue_coeffs(p, h, k, mode, r, lam, order_pad) for k in range(p.period)}

    polys = with_generic_lambda(vertex_cones(p), seed, compute)
    return assemble_quasipoly(polys, p.period, mode, r if mode == "top" else None)


def ehrhart_top_coeffs(p: RationalSimplex, h: WeightPoly | None, r: int, seed: int = 0,
                       form: str = "u") -> dict[int, list]:
    """Map m -> per-residue coefficient of u^m (or n^m) for every m the patchwork sum determines."""
    qp = ehrhart_quasipolynomial(p, h, "top", r, seed)
    table = qp.u_coeffs if form == "u" else qp.n_coeffs
    return {m: [table[k][m] for k in range(qp.period)] for m in range(qp.degree + 1)
            if table[0][m] is not None}


def weighted_count(p: RationalSimplex, h: WeightPoly | None, n: int, seed: int = 0) -> Fraction:
    return ehrhart_quasipolynomial(p, h, "exact", None, seed).evaluate(n)


# -- plane mixed sums ----------------------------------------------------------

def mixed_sum_constant_2d(p: RationalSimplex, u: Sequence, n: int, seed: int = 0) -> Fraction:
    """S^L(n*p)(0) for ``L = R u`` in the plane, assembled over the vertex cones."""
    if p.dim != 2:
        raise BadArgs("mixed sums are implemented in the plane only")
    cones = [a.with_vertex(tuple(n * x for x in a.vertex)) for a in vertex_cones(p)]

    def compute(lam):
        total = None
        for a in cones:
            s = line_mixed_series_2d(a, u, lam, None, 0, 0)
            total = s if total is None else total + s
        if any(j < 0 for j, _ in total.coeffs):
            raise InternalAssertion("mixed Brion sum has a pole at 0")
        return total.coeff(0, 0)

    return with_generic_lambda(cones, seed, compute)
