"""Quasi-polynomials stored per residue class, in the u and n variables."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .exceptions import InconsistentDegree, InternalAssertion
from .serialization import format_rational


def _u_to_n(u_coeffs: Sequence, q: int, k: int) -> list:
    """Coefficients in ``n`` of sum_m c_m ((n - k)/q)^m.

    Missing (``None``) u-coefficients make every n-coefficient that depends on
    them unknown; since e_m only uses c_j with j >= m, a known top block of
    u-coefficients yields the same top block in n.
    """
    D = len(u_coeffs) - 1
    out = []
    for m in range(D + 1):
        acc = Fraction(0)
        for j in range(m, D + 1):
            c = u_coeffs[j]
            if c is None:
                acc = None
                break
            acc += c * comb(j, m) * Fraction(-k) ** (j - m) / Fraction(q) ** j
        out.append(acc)
    return out


@dataclass(frozen=True)
class QuasiPolynomial:
    """``value(q*u + k) = sum_m u_coeffs[k][m] * u^m``; ``None`` marks an absent coefficient."""

    period: int
    u_coeffs: tuple
    mode: str = "exact"
    r: int | None = None
    n_coeffs: tuple = field(init=False, compare=False)

    def __post_init__(self):
        if self.period < 1 or len(self.u_coeffs) != self.period:
            raise InconsistentDegree("need exactly one coefficient list per residue")
        lengths = {len(c) for c in self.u_coeffs}
        if len(lengths) != 1:
            raise InconsistentDegree(f"residue polynomials have different lengths {sorted(lengths)}")
        u = tuple(tuple(None if c is None else Fraction(c) for c in cs) for cs in self.u_coeffs)
        object.__setattr__(self, "u_coeffs", u)
        object.__setattr__(self, "n_coeffs", tuple(tuple(_u_to_n(cs, self.period, k))
                                                   for k, cs in enumerate(u)))

    @property
    def degree(self) -> int:
        return len(self.u_coeffs[0]) - 1

    @property
    def is_complete(self) -> bool:
        return all(c is not None for cs in self.u_coeffs for c in cs)

    def evaluate(self, n: int, form: str = "u") -> Fraction:
        if n < 0:
            raise ValueError("quasi-polynomials are evaluated at n >= 0")
        if not self.is_complete:
            raise ValueError("cannot evaluate a quasi-polynomial with absent coefficients")
        k = n % self.period
        if form == "u":
            x, coeffs = Fraction(n - k, self.period), self.u_coeffs[k]
        else:
            x, coeffs = Fraction(n), self.n_coeffs[k]
        return sum((c * x ** m for m, c in enumerate(coeffs)), Fraction(0))

    __call__ = evaluate

    def coefficient(self, m: int, k: int, form: str = "u") -> Fraction | None:
        table = self.u_coeffs if form == "u" else self.n_coeffs
        return table[k][m]

    def to_json(self) -> dict:
        def fmt(cs):
            return [None if c is None else format_rational(c) for c in cs]

        return {
            "period": self.period,
            "degree": self.degree,
            "residues": [{"k": k, "u_coeffs": fmt(self.u_coeffs[k]), "n_coeffs": fmt(self.n_coeffs[k])}
                         for k in range(self.period)],
            "mode": self.mode,
            "r": self.r,
        }


def assemble_quasipoly(polys: Mapping[int, Sequence], q: int, mode: str = "exact",
                       r: int | None = None) -> QuasiPolynomial:
    """Collect per-residue u-polynomials and cross-check the two forms."""
    if sorted(polys) != list(range(q)):
        raise InconsistentDegree(f"expected residues 0..{q - 1}, got {sorted(polys)}")
    qp = QuasiPolynomial(q, tuple(tuple(polys[k]) for k in range(q)), mode, r)
    if qp.is_complete:
        for k in range(q):
            for n in (k, k + q, k + 2 * q):
                if qp.evaluate(n, "u") != qp.evaluate(n, "n"):
                    raise InternalAssertion(f"u-form and n-form disagree at n={n}")
    return qp
