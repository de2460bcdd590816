"""Exact rational and integer linear algebra.

Matrices are plain lists of rows; vectors are tuples of :class:`Fraction`.
Lattice bases store their basis vectors as columns.  Nothing in here ever
touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .exceptions import NotABasis, NotFullRank, ZeroVector

Vector = tuple  # tuple[Fraction, ...]
Matrix = list  # list[list[Fraction]], row-major


def as_fraction(x) -> Fraction:
    """Parse ``x`` (int, Fraction or a string such as ``"3/4"``) exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an exact rational")
    return Fraction(x)


def vec(entries: Iterable) -> Vector:
    return tuple(as_fraction(e) for e in entries)


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vadd(u, v) -> Vector:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v) -> Vector:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v) -> Vector:
    return tuple(c * a for a in v)


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in a)


def from_columns(columns: Sequence[Sequence]) -> Matrix:
    """Row-major matrix whose columns are ``columns``."""
    if not columns:
        return []
    return [list(row) for row in zip(*columns)]


def columns_of(m: Matrix) -> list[Vector]:
    return [tuple(col) for col in zip(*m)]


def _row_echelon(m: Matrix):
    """Gaussian elimination on a copy; returns (echelon rows, pivot columns, sign)."""
    rows = [[as_fraction(x) for x in row] for row in m]
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots = []
    sign = 1
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
            sign = -sign
        p = rows[r][c]
        for i in range(r + 1, n_rows):
            f = rows[i][c]
            if f:
                f /= p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return rows, pivots, sign


def rank(m: Matrix) -> int:
    if not m:
        return 0
    return len(_row_echelon(m)[1])


def det(m: Matrix) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    rows, pivots, sign = _row_echelon(m)
    if len(pivots) < n:
        return Fraction(0)
    out = Fraction(sign)
    for i in range(n):
        out *= rows[i][i]
    return out


def solve(a: Matrix, b: Sequence) -> Vector:
    """Solve ``a x = b`` for square nonsingular ``a``."""
    n = len(a)
    aug = [[as_fraction(x) for x in row] + [as_fraction(y)] for row, y in zip(a, b)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pivot is None:
            raise NotABasis("singular system")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(row[n] for row in aug)


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [[as_fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pivot is None:
            raise NotABasis("singular matrix")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def nullspace(m: Matrix, n_cols: int | None = None) -> list[Vector]:
    """Rational basis of ``{x : m x = 0}``."""
    if n_cols is None:
        n_cols = len(m[0]) if m else 0
    if not m:
        return [tuple(Fraction(int(i == j)) for i in range(n_cols)) for j in range(n_cols)]
    rows, pivots, _ = _row_echelon(m)
    rows = rows[: len(pivots)]
    # back-substitute to reduced form
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(r):
            f = rows[i][c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * n_cols
        x[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = -rows[r][fc]
        basis.append(tuple(x))
    return basis


def is_integral(v: Iterable) -> bool:
    return all(as_fraction(x).denominator == 1 for x in v)


def common_denominator(entries: Iterable) -> int:
    return reduce(lcm, (as_fraction(x).denominator for x in entries), 1)


def primitive_vector(v: Sequence) -> Vector:
    """The primitive integral vector on the ray through ``v``."""
    v = vec(v)
    if all(x == 0 for x in v):
        raise ZeroVector("primitive_vector of the zero vector")
    scale = common_denominator(v)
    ints = [int(x * scale) for x in v]
    g = reduce(gcd, ints, 0)
    return tuple(Fraction(x // g) for x in ints)


def smallest_dilation(vertices: Iterable[Sequence]) -> int:
    """Smallest positive integer ``q`` with ``q * v`` integral for every vertex."""
    return reduce(lcm, (common_denominator(v) for v in vertices), 1)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf(matrix: Matrix) -> tuple[Matrix, Matrix]:
    """Column Hermite normal form.

    For an integer ``r x c`` matrix ``M`` of full row rank, return ``(H, U)``
    with ``H = M U``, ``U`` unimodular, ``H`` lower triangular with positive
    diagonal, entries left of the diagonal reduced into ``[0, H[i][i])`` and
    columns ``r..c-1`` zero.
    """
    rows = [[as_fraction(x) for x in row] for row in matrix]
    if any(x.denominator != 1 for row in rows for x in row):
        raise ValueError("hnf expects an integer matrix")
    H = [[int(x) for x in row] for row in rows]
    r = len(H)
    c = len(H[0]) if r else 0
    if r > c:
        raise NotFullRank(f"{r} rows but only {c} columns")
    U = [[int(i == j) for j in range(c)] for i in range(c)]

    def combine(i: int, j: int, a: int, b: int, cc: int, dd: int) -> None:
        # col_i, col_j <- a col_i + b col_j, cc col_i + dd col_j
        for mat in (H, U):
            for row in mat:
                xi, xj = row[i], row[j]
                row[i] = a * xi + b * xj
                row[j] = cc * xi + dd * xj

    for i in range(r):
        for j in range(i + 1, c):
            b = H[i][j]
            if b == 0:
                continue
            a = H[i][i]
            g, x, y = _xgcd(a, b)
            combine(i, j, x, y, -b // g, a // g)
        if H[i][i] == 0:
            raise NotFullRank(f"row {i} is dependent on the previous rows")
        if H[i][i] < 0:
            for mat in (H, U):
                for row in mat:
                    row[i] = -row[i]
        p = H[i][i]
        for j in range(i):
            f = H[i][j] // p
            if f:
                for mat in (H, U):
                    for row in mat:
                        row[j] -= f * row[i]
    return ([[Fraction(x) for x in row] for row in H],
            [[Fraction(x) for x in row] for row in U])


def integer_kernel_basis(matrix: Matrix, n_cols: int | None = None) -> list[Vector]:
    """Basis of the saturated lattice ``{z in Z^c : M z = 0}`` for rational ``M``."""
    rows = [r for r in ([as_fraction(x) for x in row] for row in matrix)]
    if n_cols is None:
        n_cols = len(rows[0]) if rows else 0
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(n_cols)) for j in range(n_cols)]
    # Replace M by an integer matrix with the same kernel and full row rank.
    ech, pivots, _ = _row_echelon(rows)
    ech = ech[: len(pivots)]
    if not ech:
        return [tuple(Fraction(int(i == j)) for i in range(n_cols)) for j in range(n_cols)]
    ints = []
    for row in ech:
        s = common_denominator(row)
        ints.append([x * s for x in row])
    _, U = hnf(ints)
    return [tuple(U[i][j] for i in range(n_cols)) for j in range(len(ints), n_cols)]


def hnf_basis_of_generators(generators: Sequence[Sequence], dim: int) -> list[Vector]:
    """A basis (columns) of the lattice generated by rational ``generators`` in Q^dim."""
    if dim == 0:
        return []
    scale = common_denominator(x for g in generators for x in g)
    m = from_columns([[x * scale for x in g] for g in generators])
    H, _ = hnf(m)
    return [tuple(H[i][j] / scale for i in range(dim)) for j in range(dim)]


@dataclass(frozen=True)
class LatticeBasis:
    """A full-rank lattice in Q^k, basis vectors stored as columns."""

    columns: tuple
    determinant: Fraction = field(init=False, compare=False)

    def __post_init__(self):
        cols = tuple(vec(c) for c in self.columns)
        k = len(cols)
        if any(len(c) != k for c in cols):
            raise NotABasis("lattice basis must be square")
        object.__setattr__(self, "columns", cols)
        d = det(from_columns(cols)) if k else Fraction(1)
        if d == 0:
            raise NotABasis("lattice basis vectors are dependent")
        object.__setattr__(self, "determinant", d)

    @classmethod
    def standard(cls, k: int) -> "LatticeBasis":
        return cls(tuple(tuple(Fraction(int(i == j)) for i in range(k)) for j in range(k)))

    @property
    def dim(self) -> int:
        return len(self.columns)

    @property
    def matrix(self) -> Matrix:
        return from_columns(self.columns)

    @property
    def covolume(self) -> Fraction:
        return abs(self.determinant)

    def is_standard(self) -> bool:
        return all(c[i] == (1 if i == j else 0)
                   for j, c in enumerate(self.columns) for i in range(self.dim))

    def coordinates(self, v: Sequence) -> Vector:
        if self.dim == 0:
            return ()
        return solve(self.matrix, vec(v))

    def to_ambient(self, coords: Sequence) -> Vector:
        return matvec(self.matrix, coords) if self.dim else ()

    def contains(self, v: Sequence) -> bool:
        return is_integral(self.coordinates(v))

    def same_lattice(self, other: "LatticeBasis") -> bool:
        """Lattice equality by two-sided membership of basis vectors."""
        if self.dim != other.dim:
            return False
        return (all(other.contains(c) for c in self.columns)
                and all(self.contains(c) for c in other.columns))


def projected_lattice_basis(ambient: LatticeBasis, subspace_gens: Sequence[Sequence],
                            complement_gens: Sequence[Sequence]) -> LatticeBasis:
    """Image of ``ambient`` under projection along ``L`` onto a complement ``W``.

    The result is expressed in the coordinates of ``complement_gens``.
    """
    subspace_gens = [vec(g) for g in subspace_gens]
    complement_gens = [vec(g) for g in complement_gens]
    split = subspace_gens + complement_gens
    d = ambient.dim
    if len(split) != d or rank(from_columns(split)) != d:
        raise NotABasis("subspace and complement generators do not form a basis")
    k = len(subspace_gens)
    change = inverse(from_columns(split))
    images = [matvec(change, b)[k:] for b in ambient.columns]
    return LatticeBasis(tuple(hnf_basis_of_generators(images, d - k)))


def intersection_lattice_basis(ambient: LatticeBasis,
                               subspace_gens: Sequence[Sequence]) -> LatticeBasis:
    """Basis of ``ambient`` intersected with span(subspace_gens), in those coordinates."""
    gens = [vec(g) for g in subspace_gens]
    k = len(gens)
    d = ambient.dim
    if k == 0:
        return LatticeBasis(())
    if rank(from_columns(gens)) != k:
        raise NotABasis("subspace generators are dependent")
    annihilator = nullspace([list(g) for g in gens], d)  # rows spanning L-perp
    if annihilator:
        kernel = integer_kernel_basis(matmul([list(a) for a in annihilator], ambient.matrix), d)
    else:
        kernel = [tuple(Fraction(int(i == j)) for i in range(d)) for j in range(d)]
    g_mat = from_columns(gens)
    # coordinates w.r.t. gens of each ambient point B z; solve via a k x k minor
    rows_idx = _independent_rows(g_mat, k)
    minor = [g_mat[i] for i in rows_idx]
    basis = []
    for z in kernel:
        x = ambient.to_ambient(z)
        basis.append(solve(minor, [x[i] for i in rows_idx]))
    return LatticeBasis(tuple(basis))


def _independent_rows(m: Matrix, k: int) -> list[int]:
    chosen: list[int] = []
    for i in range(len(m)):
        if rank([m[j] for j in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == k:
                return chosen
    raise NotABasis("matrix does not have the expected rank")
