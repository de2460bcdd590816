from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ehrhart_barvinok.exact_linalg import (LatticeBasis, det, from_columns, hnf, identity, matmul,
                                           primitive_vector, projected_lattice_basis,
                                           smallest_dilation)
from ehrhart_barvinok.exceptions import NotABasis, ZeroVector

F = Fraction


def _is_hnf(H):
    n = len(H)
    for i in range(n):
        if H[i][i] <= 0:
            return False
        for j in range(i + 1, len(H[0])):
            if H[i][j] != 0:
                return False
        for j in range(i):
            if not 0 <= H[i][j] < H[i][i]:
                return False
    return True


def test_hnf_identity():
    H, U = hnf(identity(2))
    assert H == identity(2) and U == identity(2)


def test_hnf_small_example():
    M = from_columns([(1, 3), (2, 4)])
    H, U = hnf(M)
    assert from_columns([(1, 1), (0, 2)]) == H
    assert matmul(M, U) == H
    assert abs(det(U)) == 1


def test_hnf_already_normal():
    M = from_columns([(2, 0), (0, 3)])
    assert hnf(M)[0] == M


square_int_matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=60, deadline=None)
@given(square_int_matrices)
def test_hnf_properties(rows):
    M = [[F(x) for x in r] for r in rows]
    if det(M) == 0:
        return
    H, U = hnf(M)
    assert _is_hnf(H)
    assert matmul(M, U) == H
    assert abs(det(U)) == 1
    prod = F(1)
    for i in range(len(H)):
        prod *= H[i][i]
    assert prod == abs(det(M))


@pytest.mark.parametrize("v, expected", [((2, 4), (1, 2)), ((F(-3, 2), F(9, 4)), (-2, 3)),
                                          ((0, 5), (0, 1)), ((-7,), (-1,))])
def test_primitive_vector(v, expected):
    assert primitive_vector(v) == tuple(F(x) for x in expected)


def test_primitive_vector_rejects_zero():
    with pytest.raises(ZeroVector):
        primitive_vector((0, 0))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.fractions(max_denominator=12), min_size=1, max_size=4),
       st.fractions(min_value=F(1, 20), max_value=20))
def test_primitive_vector_scale_invariant(v, c):
    if not any(v):
        return
    assert primitive_vector(v) == primitive_vector([c * x for x in v])


@pytest.mark.parametrize("verts, q", [([(0, 0), (F(1, 2), 0), (0, F(1, 3))], 6),
                                      ([(0,), (1,)], 1), ([(F(1, 4), F(1, 6))], 12)])
def test_smallest_dilation(verts, q):
    assert smallest_dilation(verts) == q


def test_projected_lattice_examples():
    Z2, Z3 = LatticeBasis.standard(2), LatticeBasis.standard(3)
    assert projected_lattice_basis(Z2, [(1, 0)], [(1, 2)]).same_lattice(LatticeBasis(((F(1, 2),),)))
    assert projected_lattice_basis(Z2, [(1, 0)], [(0, 1)]).same_lattice(LatticeBasis.standard(1))
    assert projected_lattice_basis(Z3, [(1, 1, 0)], [(0, 1, 0), (0, 0, 1)]).same_lattice(LatticeBasis.standard(2))


def test_projected_lattice_needs_a_basis():
    with pytest.raises(NotABasis):
        projected_lattice_basis(LatticeBasis.standard(2), [(1, 0)], [(2, 0)])


unimodular = st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(-3, 3)),
                      min_size=1, max_size=6)


@settings(max_examples=40, deadline=None)
@given(unimodular, st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_projected_lattice_independent_of_ambient_basis(ops, w):
    cols = [list(c) for c in identity(3)]
    for i, j, c in ops:  # column operations col_i += c * col_j keep the lattice
        j = (i + 1 + j) % 3
        cols[i] = [a + c * b for a, b in zip(cols[i], cols[j])]
    ambient = LatticeBasis(tuple(tuple(c) for c in cols))
    assert ambient.same_lattice(LatticeBasis.standard(3))
    L = [(1, 2, 0)]
    W = [(0, 1, 0), tuple(w[:2]) + (w[2] or 1,)]
    if det(from_columns(L + W)) == 0:
        return
    a = projected_lattice_basis(LatticeBasis.standard(3), L, W)
    b = projected_lattice_basis(ambient, L, W)
    assert a.same_lattice(b)
