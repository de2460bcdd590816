"""Mixed valuations S^L along face-parallel subspaces and their patchwork sums."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .barvinok import exp_sum_series, integral_series
from .cones import FaceSubset, SimplicialAffineCone, face_family, split_cone_along_face
from .exact_linalg import LatticeBasis, det, dot, from_columns, primitive_vector, vec
from .exceptions import BadArgs, DimensionNot2, NotSolid
from .series import BiSeries, line_product


def patchwork_coefficient(n: int, q: int) -> int:
    """(-1)^(n-q) * C(n-1, q-1), the weight of an n-element face set for ``q``."""
    if not (isinstance(n, int) and isinstance(q, int)) or not 1 <= q <= n:
        raise BadArgs(f"patchwork coefficient needs 1 <= q <= n, got n={n}, q={q}")
    return (-1) ** (n - q) * comb(n - 1, q - 1)


@dataclass(frozen=True)
class PatchworkFamily:
    """Face subsets ``I`` with ``|I| >= d - r`` and their integer weights.

    For ``r >= d`` the only weighted member is the empty set: the family
    then reproduces the plain discrete sum.
    """

    d: int
    r: int

    @property
    def q(self) -> int:
        return self.d - self.r

    @property
    def members(self) -> list[FaceSubset]:
        return face_family(self.d, min(self.r, self.d))

    @property
    def coefficients(self) -> dict[FaceSubset, int]:
        if self.q <= 0:
            return {I: (1 if not I else 0) for I in self.members}
        return {I: patchwork_coefficient(len(I), self.q) for I in self.members}

    def weight(self, I) -> int:
        return self.coefficients.get(frozenset(I), 0)


def _low(n_gens: int, ell, t_max: int) -> int:
    return -n_gens - (t_max if any(ell) else 0)


def mixed_exp_sum_series(a: SimplicialAffineCone, I, lam, ell=None, tau_max: int = 0,
                         t_max: int = 0, lattice: LatticeBasis | None = None) -> BiSeries:
    """Series of S^L(a)(tau*lam + t*ell) for ``L`` spanned by the generators in ``I``.

    Splits ``a`` as an integral over the face part times a discrete sum over
    the projected lattice of the quotient part.
    """
    if not a.is_solid:
        raise NotSolid("mixed valuations are computed on solid cones")
    lam = vec(lam)
    ell = vec(ell) if ell is not None else tuple(Fraction(0) for _ in lam)
    I = frozenset(I)
    if not I:
        return exp_sum_series(a, lam, ell, tau_max, t_max, lattice)
    split = split_cone_along_face(a, I, lattice)
    k = len(split.face_indices)
    n_quot = len(split.quotient_indices)
    face = SimplicialAffineCone(split.ambient_face_vertex(), split.face_generators, 1)
    low_face = _low(k, ell, t_max)
    low_quot = _low(n_quot, ell, t_max)
    integral = integral_series(face, lam, ell, tau_max - low_quot, t_max, split.face_volume)
    if not n_quot:
        return integral.truncate(tau_max).scale(a.sign)
    # the quotient sum lives in coordinates w.r.t. the generators v_j, j not in I
    lam_q = tuple(dot(lam, v) for v in split.quotient_generators)
    ell_q = tuple(dot(ell, v) for v in split.quotient_generators)
    units = tuple(tuple(Fraction(int(i == j)) for i in range(n_quot)) for j in range(n_quot))
    quotient = SimplicialAffineCone(split.quotient_vertex, units, 1)
    discrete = exp_sum_series(quotient, lam_q, ell_q, tau_max - low_face, t_max,
                              split.quotient_lattice)
    return integral.mul(discrete, tau_max).scale(a.sign)


def barvinok_valuation_series(a: SimplicialAffineCone, r: int, lam, ell=None, tau_max: int = 0,
                              t_max: int = 0, lattice: LatticeBasis | None = None) -> BiSeries:
    """Series of the patchwork combination sum_I rho(L_I) S^(L_I)(a)."""
    d = a.ambient_dim
    if not 0 <= r <= d:
        raise BadArgs(f"r must lie in 0..{d}, got {r}")
    if r >= d:
        return exp_sum_series(a, lam, ell, tau_max, t_max, lattice)
    family = PatchworkFamily(d, r)
    total = None
    for I in sorted(family.members, key=lambda s: (len(s), sorted(s))):
        rho = family.weight(I)
        if rho == 0:
            continue
        term = mixed_exp_sum_series(a, I, lam, ell, tau_max, t_max, lattice).scale(rho)
        total = term if total is None else total + term
    return total


# -- lines in the plane ---------------------------------------------------------

def _det2(u, v) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def _in_lattice_plus_line(s, u) -> bool:
    # s in Z^2 + R u  iff  det(u, s) is an integer (u primitive)
    return _det2(u, s).denominator == 1


def ray_along_line_series(s, u, lam, ell=None, tau_max: int = 0, t_max: int = 0) -> BiSeries:
    """S^L(s + R_+ u) for ``L = R u`` in the plane: an integral when s + L meets Z^2."""
    lam = vec(lam)
    ell = vec(ell) if ell is not None else tuple(Fraction(0) for _ in lam)
    s = vec(s)
    u = primitive_vector(u)
    if not _in_lattice_plus_line(s, u):
        return BiSeries({}, tau_min=tau_max + 1, tau_max=tau_max, t_max=t_max)
    return line_product([("exp", dot(lam, s), dot(ell, s)), ("inverse", dot(lam, u), dot(ell, u))],
                        tau_max, t_max, -1)


def line_mixed_series_2d(a: SimplicialAffineCone, u, lam, ell=None, tau_max: int = 0,
                         t_max: int = 0) -> BiSeries:
    """S^L(a) for a solid plane cone and any rational line ``L = R u``.

    Edge-parallel lines go straight through face splitting; a transverse
    line is handled by cutting ``a`` along the ray ``R_+ u`` (or gluing the
    missing sector) so that every piece has ``u`` as an edge.
    """
    if a.ambient_dim != 2:
        raise DimensionNot2("line_mixed_series_2d works in the plane only")
    u = primitive_vector(u)
    v1, v2 = a.generators
    for i, v in enumerate((v1, v2)):
        if _det2(u, v) == 0:
            return mixed_exp_sum_series(a, {i}, lam, ell, tau_max, t_max)
    if _det2(v1, v2) < 0:
        v1, v2 = v2, v1
    if _det2(u, v2) < 0:
        u = tuple(-x for x in u)
    s = a.vertex

    def edge_piece(v):
        return mixed_exp_sum_series(SimplicialAffineCone(s, (u, v)), {0}, lam, ell,
                                    tau_max, t_max)

    if _det2(v1, u) >= 0:
        out = edge_piece(v2) + edge_piece(v1) - ray_along_line_series(s, u, lam, ell, tau_max, t_max)
    else:
        # rays transverse to L meet each slice in one point and contribute nothing
        out = edge_piece(v2) - edge_piece(v1)
    return out.scale(a.sign)
