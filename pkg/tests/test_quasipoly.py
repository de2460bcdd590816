from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ehrhart_barvinok import QuasiPolynomial, assemble_quasipoly
from ehrhart_barvinok.exceptions import InconsistentDegree

F = Fraction


def test_period_one_forms_coincide():
    qp = assemble_quasipoly({0: [1, F(3, 2), F(1, 2)]}, 1)
    assert qp.n_coeffs == qp.u_coeffs == ((1, F(3, 2), F(1, 2)),)


def test_half_segment_n_form():
    qp = assemble_quasipoly({0: [1, 1], 1: [1, 1]}, 2)
    assert qp.n_coeffs == ((1, F(1, 2)), (F(1, 2), F(1, 2)))
    assert [qp(n) for n in range(6)] == [1, 1, 2, 2, 3, 3]


def test_constant_polys():
    qp = assemble_quasipoly({0: [3], 1: [F(1, 2)], 2: [-1]}, 3)
    assert [qp(n) for n in range(6)] == [3, F(1, 2), -1] * 2


def test_inconsistent_degree():
    with pytest.raises(InconsistentDegree):
        assemble_quasipoly({0: [1, 2], 1: [1]}, 2)
    with pytest.raises(InconsistentDegree):
        assemble_quasipoly({0: [1]}, 2)


def test_absent_coefficients():
    qp = QuasiPolynomial(2, ((None, 1), (None, 1)), "top", 0)
    assert qp.n_coeffs == ((None, F(1, 2)), (None, F(1, 2)))
    assert not qp.is_complete
    with pytest.raises(ValueError):
        qp(3)


def test_json_layout():
    qp = QuasiPolynomial(2, ((None, 1), (None, 1)), "top", 0)
    assert qp.to_json() == {"period": 2, "degree": 1, "mode": "top", "r": 0,
                            "residues": [{"k": 0, "u_coeffs": [None, "1"], "n_coeffs": [None, "1/2"]},
                                         {"k": 1, "u_coeffs": [None, "1"], "n_coeffs": [None, "1/2"]}]}


rationals = st.fractions(max_denominator=7, min_value=-9, max_value=9)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(0, 4), st.data())
def test_forms_agree(q, D, data):
    polys = {k: data.draw(st.lists(rationals, min_size=D + 1, max_size=D + 1)) for k in range(q)}
    qp = assemble_quasipoly(polys, q)
    for n in range(4 * q):
        assert qp.evaluate(n, "u") == qp.evaluate(n, "n")


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_top_n_coefficients_need_only_top_u_coefficients(q, D, data):
    polys = {k: data.draw(st.lists(rationals, min_size=D + 1, max_size=D + 1)) for k in range(q)}
    cut = data.draw(st.integers(0, D))
    full = assemble_quasipoly(polys, q)
    top = QuasiPolynomial(q, tuple(tuple(None if m < cut else c for m, c in enumerate(polys[k]))
                                   for k in range(q)), "top", 0)
    for k in range(q):
        assert top.n_coeffs[k][cut:] == full.n_coeffs[k][cut:]
        assert all(c is None for c in top.n_coeffs[k][:cut])
