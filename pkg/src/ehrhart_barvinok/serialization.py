"""Shared text formats: rationals as ``"a/b"`` (``"/1"`` omitted), vectors as
arrays, matrices as arrays of column arrays."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact_linalg import as_fraction, columns_of


def format_rational(x) -> str:
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    return as_fraction(text)


def vector_to_json(v: Sequence) -> list[str]:
    return [format_rational(x) for x in v]


def vector_from_json(items: Sequence) -> tuple:
    return tuple(as_fraction(x) for x in items)


def matrix_to_json(rows: Sequence[Sequence]) -> list[list[str]]:
    """Row-major matrix to an array of column arrays."""
    return [vector_to_json(c) for c in columns_of([list(r) for r in rows])]


def columns_to_json(columns: Sequence[Sequence]) -> list[list[str]]:
    return [vector_to_json(c) for c in columns]
