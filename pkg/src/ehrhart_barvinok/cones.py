"""Simplices, supporting cones at vertices, and face splitting of simplicial cones."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact_linalg import (LatticeBasis, det, from_columns, intersection_lattice_basis,
                           matvec, inverse, primitive_vector, projected_lattice_basis, rank,
                           smallest_dilation, vec, vsub)
from .exceptions import BadCodimension, DegenerateSimplex, NotSolid, ValidationError

FaceSubset = frozenset  # frozenset[int] of 0-based generator indices


@dataclass(frozen=True)
class RationalSimplex:
    vertices: tuple
    period: int = field(init=False, compare=False)

    def __post_init__(self):
        verts = tuple(vec(v) for v in self.vertices)
        if not verts:
            raise DegenerateSimplex("a simplex needs at least one vertex")
        d = len(verts[0])
        if any(len(v) != d for v in verts):
            raise ValidationError("vertices have different dimensions")
        if len(verts) != d + 1:
            raise ValidationError(f"a {d}-simplex needs {d + 1} vertices, got {len(verts)}")
        diffs = [vsub(v, verts[0]) for v in verts[1:]]
        if d and det(from_columns(diffs)) == 0:
            raise DegenerateSimplex("vertices are affinely dependent")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "period", smallest_dilation(verts))

    @property
    def dim(self) -> int:
        return len(self.vertices[0])


@dataclass(frozen=True)
class SimplicialAffineCone:
    """``vertex + sum_i R_+ generators[i]``, generators primitive and independent."""

    vertex: tuple
    generators: tuple
    sign: int = 1

    def __post_init__(self):
        vertex = vec(self.vertex)
        gens = tuple(primitive_vector(g) for g in self.generators)
        if any(len(g) != len(vertex) for g in gens):
            raise ValidationError("generator and vertex dimensions differ")
        if gens and rank(from_columns(gens)) != len(gens):
            raise ValidationError("cone generators are linearly dependent")
        if self.sign not in (1, -1):
            raise ValidationError("sign must be +1 or -1")
        object.__setattr__(self, "vertex", vertex)
        object.__setattr__(self, "generators", gens)

    @property
    def ambient_dim(self) -> int:
        return len(self.vertex)

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def is_solid(self) -> bool:
        return self.dim == self.ambient_dim

    def translate(self, shift: Sequence) -> "SimplicialAffineCone":
        return SimplicialAffineCone(tuple(a + b for a, b in zip(self.vertex, vec(shift))),
                                    self.generators, self.sign)

    def with_vertex(self, vertex: Sequence) -> "SimplicialAffineCone":
        return SimplicialAffineCone(vertex, self.generators, self.sign)


def vertex_cones(p: RationalSimplex) -> list[SimplicialAffineCone]:
    """The supporting cone at each vertex, in vertex order."""
    out = []
    for i, s in enumerate(p.vertices):
        gens = tuple(primitive_vector(vsub(t, s)) for j, t in enumerate(p.vertices) if j != i)
        out.append(SimplicialAffineCone(s, gens, 1))
    return out


def face_family(d: int, r: int) -> list[FaceSubset]:
    """Index sets of all faces of codimension at most ``r`` of a simplicial d-cone."""
    if not 0 <= r <= d:
        raise BadCodimension(f"codimension {r} outside 0..{d}")
    out = []
    for size in range(d - r, d + 1):
        out.extend(frozenset(c) for c in combinations(range(d), size))
    return out


@dataclass(frozen=True)
class SplitData:
    """Face splitting ``a = a1 + a2`` along ``L = span{v_i : i in I}``.

    Face data are in coordinates w.r.t. the generators ``v_i, i in I``;
    quotient data in coordinates w.r.t. ``v_i, i not in I``.
    """

    face_indices: tuple
    quotient_indices: tuple
    face_generators: tuple
    quotient_generators: tuple
    face_vertex: tuple
    quotient_vertex: tuple
    face_lattice: LatticeBasis
    quotient_lattice: LatticeBasis

    def ambient_face_vertex(self) -> tuple:
        return _combine(self.face_generators, self.face_vertex, self._d())

    def ambient_quotient_vertex(self) -> tuple:
        return _combine(self.quotient_generators, self.quotient_vertex, self._d())

    def _d(self) -> int:
        return len(self.face_generators) + len(self.quotient_generators)

    @property
    def face_volume(self) -> Fraction:
        """|det| of the face generators w.r.t. the lattice Lambda cap L."""
        return 1 / self.face_lattice.covolume


def _combine(gens, coords, d) -> tuple:
    out = [Fraction(0)] * d
    for g, c in zip(gens, coords):
        for i, x in enumerate(g):
            out[i] += c * x
    return tuple(out)


def _split_lattices(face_gens: tuple, quot_gens: tuple, ambient: LatticeBasis):
    change = inverse(from_columns(list(face_gens + quot_gens)))
    face_lattice = intersection_lattice_basis(ambient, face_gens)
    if not quot_gens:
        quotient_lattice = LatticeBasis(())
    else:
        quotient_lattice = projected_lattice_basis(ambient, face_gens, quot_gens)
    return change, face_lattice, quotient_lattice


@lru_cache(maxsize=4096)
def _split_lattices_standard(face_gens: tuple, quot_gens: tuple):
    return _split_lattices(face_gens, quot_gens, LatticeBasis.standard(len(face_gens) + len(quot_gens)))


def split_cone_along_face(a: SimplicialAffineCone, face: FaceSubset,
                          ambient: LatticeBasis | None = None) -> SplitData:
    d = a.ambient_dim
    if not a.is_solid:
        raise NotSolid("face splitting needs a solid cone")
    I = tuple(sorted(face))
    J = tuple(i for i in range(d) if i not in face)
    face_gens = tuple(a.generators[i] for i in I)
    quot_gens = tuple(a.generators[j] for j in J)
    if ambient is None:
        change, face_lattice, quotient_lattice = _split_lattices_standard(face_gens, quot_gens)
    else:
        change, face_lattice, quotient_lattice = _split_lattices(face_gens, quot_gens, ambient)
    coords = matvec(change, a.vertex)
    k = len(I)
    return SplitData(I, J, face_gens, quot_gens, tuple(coords[:k]), tuple(coords[k:]),
                     face_lattice, quotient_lattice)
