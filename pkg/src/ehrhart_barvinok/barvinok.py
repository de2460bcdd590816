"""Signed unimodular decomposition of simplicial cones and their series.

Decomposition happens in the dual space: lower-dimensional dual cones are
dropped because they dualize to cones containing a line, whose exponential
sum is zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, isqrt
from typing import Sequence

from .cones import SimplicialAffineCone
from .exact_linalg import (LatticeBasis, columns_of, det, dot, from_columns, inverse,
                           matvec, primitive_vector, transpose, vec)
from .exceptions import InternalAssertion, LambdaNotGeneric, NotSolid
from .series import BiSeries, line_product


@dataclass(frozen=True)
class SignedConeList:
    """Signed unimodular cones (vertex 0) with generators in ``lattice`` coordinates."""

    cones: tuple
    lattice: LatticeBasis

    def ambient_generators(self, i: int) -> list[tuple]:
        return [self.lattice.to_ambient(g) for g in self.cones[i].generators]

    def __len__(self) -> int:
        return len(self.cones)


def dual_cone(generators: Sequence[Sequence]) -> list[tuple]:
    """Primitive generators of ``{xi : <xi, v_i> >= 0 for all i}``."""
    gens = [vec(g) for g in generators]
    d = len(gens[0]) if gens else 0
    if len(gens) != d or det(from_columns(gens)) == 0:
        raise NotSolid("dual_cone needs d independent generators in dimension d")
    return [primitive_vector(row) for row in inverse(from_columns(gens))]


# -- exact lattice reduction helpers (internal) ------------------------------

def _gram_schmidt(b: list[list[int]]):
    n = len(b)
    bstar: list[list[Fraction]] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    norms: list[Fraction] = []
    for i in range(n):
        v = [Fraction(x) for x in b[i]]
        for j in range(i):
            mu[i][j] = dot(b[i], bstar[j]) / norms[j]
            v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
        bstar.append(v)
        norms.append(dot(v, v))
    return bstar, mu, norms


def _lll(basis: list[list[int]], delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    b = [list(v) for v in basis]
    n = len(b)
    _, mu, norms = _gram_schmidt(b)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                # size reduction leaves the orthogonal vectors untouched
                for i in range(j):
                    mu[k][i] -= q * mu[j][i]
                mu[k][j] -= q
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            _, mu, norms = _gram_schmidt(b)
            k = max(k - 1, 1)
    return b


def _ball_points(b: list[list[int]], radius2: int) -> list[tuple[int, ...]]:
    """All nonzero lattice vectors ``sum c_i b_i`` of squared length <= radius2."""
    _, mu, norms = _gram_schmidt(b)
    n = len(b)
    coeffs = [0] * n
    found = []

    def rec(i: int, remaining: Fraction) -> None:
        center = -sum((mu[j][i] * coeffs[j] for j in range(i + 1, n)), Fraction(0))
        reach = isqrt(floor(remaining / norms[i])) + 1
        for c in range(floor(center) - reach, ceil(center) + reach + 1):
            diff = c - center
            used = norms[i] * diff * diff
            if used > remaining:
                continue
            coeffs[i] = c
            if i == 0:
                if any(coeffs):
                    found.append(tuple(coeffs))
            else:
                rec(i - 1, remaining - used)
        coeffs[i] = 0

    rec(n - 1, Fraction(radius2))
    return [tuple(sum(c * v[r] for c, v in zip(cs, b)) for r in range(len(b[0]))) for cs in found]


def _ceil_root(value: int, degree: int) -> int:
    """Smallest integer ``x >= 0`` with ``x**degree >= value``."""
    lo, hi = 0, 1
    while hi ** degree < value:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** degree >= value:
            hi = mid
        else:
            lo = mid + 1
    return lo


def short_vector_candidates(gens: Sequence[Sequence[int]]) -> list[tuple[tuple[Fraction, ...], tuple[int, ...]]]:
    """Nonzero lattice vectors ``z = sum alpha_i g_i`` with every ``|alpha_i| < 1``.

    Returns ``(alpha, z)`` pairs sorted by sup-norm of alpha, sign-normalized so
    that some ``alpha_i > 0``.  The list always contains every vector of the
    Minkowski box ``max |alpha_i| <= index^(-1/d)``, so its head realizes the
    minimum sup-norm.
    """
    d = len(gens)
    U = from_columns([[Fraction(x) for x in g] for g in gens])
    index = abs(det(U))
    if index == 1:
        return []
    index = int(index)
    scaled = [[int(x * index) for x in col] for col in columns_of(inverse(U))]
    reduced = _lll(scaled)
    bound = _ceil_root(index ** (d - 1), d)
    # the minimum sup-norm never exceeds that of a reduced basis vector
    bound = min([bound] + [max(abs(x) for x in v) for v in reduced])
    seen = set()
    out = []
    for y in _ball_points(reduced, d * bound * bound):
        if max(abs(x) for x in y) >= index:
            continue
        if all(x <= 0 for x in y):
            y = tuple(-x for x in y)
        if y in seen:
            continue
        seen.add(y)
        alpha = tuple(Fraction(x, index) for x in y)
        z = matvec(U, alpha)
        out.append((alpha, tuple(int(x) for x in z)))
    out.sort(key=lambda pair: (max(abs(a) for a in pair[0]), pair[1]))
    if not out:
        raise InternalAssertion("Minkowski box search found no short vector")
    return out


def _abs_det(gens) -> int:
    return abs(int(det(from_columns([[Fraction(x) for x in g] for g in gens]))))


@lru_cache(maxsize=4096)
def _decompose_dual(gens: tuple, pick: int) -> tuple:
    """Signed unimodular cones whose indicator sum equals cone(gens) modulo
    lower-dimensional cones.  ``gens`` are integer tuples."""
    index = _abs_det(gens)
    if index == 1:
        return ((1, gens),)
    candidates = short_vector_candidates(gens)
    alpha, z = candidates[min(pick, len(candidates) - 1)]
    z = tuple(int(x) for x in primitive_vector(z))
    out = []
    for i, a in enumerate(alpha):
        if a == 0:
            continue
        new = gens[:i] + (z,) + gens[i + 1:]
        if _abs_det(new) >= index:
            raise InternalAssertion("cone index failed to decrease")
        sign = 1 if a > 0 else -1
        for s, cone in _decompose_dual(new, 0):
            out.append((sign * s, cone))
    return tuple(out)


@lru_cache(maxsize=4096)
def _decompose_primal(gens: tuple, pick: int = 0) -> tuple:
    """Signed unimodular primal cones as ``(sign, generators, inverse_rows)``."""
    dual = tuple(tuple(int(x) for x in u) for u in dual_cone(gens))
    out = []
    for sign, dual_gens in _decompose_dual(dual, pick):
        rows = [[Fraction(x) for x in u] for u in dual_gens]
        primal = tuple(tuple(int(x) for x in col) for col in columns_of(inverse(rows)))
        # rows of ``rows`` are the coordinate functionals of the primal cone
        out.append((sign, primal, tuple(tuple(r) for r in rows)))
    return tuple(out)


def _int_key(gens) -> tuple:
    return tuple(tuple(int(x) for x in g) for g in gens)


def _to_lattice_coords(a: SimplicialAffineCone, lattice: LatticeBasis | None, lam, ell):
    lam = vec(lam)
    ell = vec(ell) if ell is not None else tuple(Fraction(0) for _ in lam)
    if lattice is None or lattice.is_standard():
        return a.vertex, a.generators, lam, ell
    bt = transpose(lattice.matrix)
    vertex = lattice.coordinates(a.vertex)
    gens = tuple(primitive_vector(lattice.coordinates(g)) for g in a.generators)
    return vertex, gens, matvec(bt, lam), matvec(bt, ell)


def unimodular_decompose(generators: Sequence[Sequence], lattice: LatticeBasis | None = None,
                         pick: int = 0) -> SignedConeList:
    """Signed unimodular decomposition of a solid simplicial cone.

    ``pick`` selects which short vector is used at the first split, which
    yields a different (equally valid) list.
    """
    gens = [vec(g) for g in generators]
    d = len(gens[0]) if gens else 0
    if len(gens) != d or det(from_columns(gens)) == 0:
        raise NotSolid("unimodular_decompose needs a solid simplicial cone")
    if lattice is None:
        lattice = LatticeBasis.standard(d)
    coords = [primitive_vector(lattice.coordinates(g)) for g in gens]
    zero = tuple(Fraction(0) for _ in range(d))
    cones = tuple(SimplicialAffineCone(zero, primal, sign)
                  for sign, primal, _ in _decompose_primal(_int_key(coords), pick))
    return SignedConeList(cones, lattice)


def lattice_cone_series(vertex, gens, lam, ell, tau_max: int, t_max: int,
                        pick: int = 0) -> BiSeries:
    """Series of S(vertex + cone(gens))(tau*lam + t*ell) for the lattice Z^k."""
    k = len(gens)
    if k == 0:
        return BiSeries.constant(1, t_max=t_max).truncate(tau_max)
    total = None
    for sign, primal, rows in _decompose_primal(_int_key(gens), pick):
        coords = [dot(r, vertex) for r in rows]
        apex = [sum(ceil(c) * w[i] for c, w in zip(coords, primal)) for i in range(k)]
        factors = [("exp", dot(lam, apex), dot(ell, apex))]
        for w in primal:
            lw = dot(lam, w)
            if lw == 0:
                raise LambdaNotGeneric(f"<lambda, {w}> = 0")
            factors.append(("geometric", lw, dot(ell, w)))
        term = line_product(factors, tau_max, t_max, sign)
        total = term if total is None else total + term
    return total


def exp_sum_series(a: SimplicialAffineCone, lam, ell=None, tau_max: int = 0, t_max: int = 0,
                   lattice: LatticeBasis | None = None, pick: int = 0) -> BiSeries:
    """Series of S(a)(tau*lam + t*ell) = sum over lattice points x of a of e^<xi,x>."""
    if not a.is_solid:
        raise NotSolid("exp_sum_series needs a solid cone")
    vertex, gens, lam_c, ell_c = _to_lattice_coords(a, lattice, lam, ell)
    return lattice_cone_series(vertex, gens, lam_c, ell_c, tau_max, t_max, pick).scale(a.sign)


def integral_series(a: SimplicialAffineCone, lam, ell=None, tau_max: int = 0, t_max: int = 0,
                    volume: Fraction | None = None) -> BiSeries:
    """Series of I(a)(tau*lam + t*ell) for a simplicial affine cone of any dimension.

    ``volume`` is |det| of the generators w.r.t. the lattice Lambda cap lin(a);
    computed against Z^d when omitted.
    """
    from .exact_linalg import intersection_lattice_basis

    lam = vec(lam)
    ell = vec(ell) if ell is not None else tuple(Fraction(0) for _ in lam)
    if volume is None:
        face = intersection_lattice_basis(LatticeBasis.standard(a.ambient_dim), a.generators)
        volume = 1 / face.covolume
    factors = [("exp", dot(lam, a.vertex), dot(ell, a.vertex))]
    for u in a.generators:
        lu = dot(lam, u)
        if lu == 0:
            raise LambdaNotGeneric(f"<lambda, {u}> = 0")
        factors.append(("inverse", lu, dot(ell, u)))
    return line_product(factors, tau_max, t_max, volume * a.sign * (-1) ** len(a.generators))
