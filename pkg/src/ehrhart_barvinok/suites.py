"""Self-check suites run by ``verify``; each returns ``(passed, detail)``."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .barvinok import exp_sum_series
from .cones import RationalSimplex, SimplicialAffineCone
from .engine import WeightPoly, ehrhart_quasipolynomial
from .exact_linalg import det, from_columns
from .exceptions import LambdaNotGeneric
from .mixed import PatchworkFamily, barvinok_valuation_series
from .mu_dim2 import EdgeLine, ScalarProduct2, TransverseLine, verify_euler_maclaurin_dim2
from .oracle import weighted_sum_oracle
from .series import BiSeries, geometric_exp_factor

GRAMS = (((1, 0), (0, 1)), ((2, 1), (1, 3)))


def oracle_table(p: RationalSimplex, h: WeightPoly | None, ns, seed: int = 0) -> list[tuple]:
    """Rows ``(n, oracle, engine, equal)``."""
    qp = ehrhart_quasipolynomial(p, h, "exact", None, seed)
    rows = []
    for n in ns:
        expected = weighted_sum_oracle(p, h, n)
        got = qp.evaluate(n)
        rows.append((n, expected, got, expected == got))
    return rows


def series_identity_suite(order: int = 10) -> tuple[bool, str]:
    one = BiSeries.constant(1).truncate(order)
    for slope in (Fraction(1), Fraction(-2), Fraction(1, 3), Fraction(5, 7), Fraction(-9, 4)):
        total = geometric_exp_factor(slope, 0, order, 0) + geometric_exp_factor(-slope, 0, order, 0)
        if total != one:
            return False, f"reflection identity fails at slope {slope}"
    return True, "reflection identity holds"


def patchwork_suite(d_max: int = 6) -> tuple[bool, str]:
    for d in range(1, d_max + 1):
        for q in range(1, d + 1):
            family = PatchworkFamily(d, d - q)
            for size in range(q, d + 1):
                for top in combinations(range(d), size):
                    s = sum(family.weight(I) for k in range(q, size + 1) for I in combinations(top, k))
                    if s != 1:
                        return False, f"d={d} q={q} I0={top}: sum {s}"
    return True, f"patchwork sums equal 1 for d <= {d_max}"


def _random_cone(rng: random.Random, d: int) -> SimplicialAffineCone:
    while True:
        gens = [tuple(rng.randint(-5, 5) for _ in range(d)) for _ in range(d)]
        if det(from_columns(gens)) != 0:
            vertex = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(d))
            return SimplicialAffineCone(vertex, gens)


def key_invariant_suite(n_cones: int = 6, seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    done = 0
    while done < n_cones:
        d = rng.choice((2, 3))
        a = _random_cone(rng, d)
        lam = tuple(rng.randint(-40, 40) for _ in range(d))
        try:
            exact = exp_sum_series(a, lam, None, 0, 0)
            for r in range(d + 1):
                mixed = barvinok_valuation_series(a, r, lam, None, 0, 0)
                for m in range(d - r, d + 1):
                    if mixed.coeff(-m) != exact.coeff(-m):
                        return False, f"cone {a}, r={r}: tau^-{m} differs"
        except LambdaNotGeneric:
            continue
        done += 1
    return True, f"{n_cones} cones agree above the threshold"


def mu2d_suite(n_cones: int = 10, order: int = 6, seed: int = 0) -> tuple[bool, Fraction]:
    """Returns whether all residuals vanished and the largest |residual|."""
    rng = random.Random(seed)
    worst = Fraction(0)
    done = 0
    while done < n_cones:
        gens = [tuple(rng.randint(-5, 5) for _ in range(2)) for _ in range(2)]
        u = tuple(rng.randint(-4, 4) for _ in range(2))
        dets = [g[0] * h[1] - g[1] * h[0] for g, h in ((gens[0], gens[1]), (u, gens[0]), (u, gens[1]))]
        if 0 in dets:
            continue
        a = SimplicialAffineCone(tuple(rng.randint(-3, 3) for _ in range(2)), gens)
        lam = tuple(rng.randint(-30, 30) for _ in range(2))
        try:
            for L in (EdgeLine(rng.randint(0, 1)), TransverseLine(u)):
                for gram in GRAMS:
                    res = verify_euler_maclaurin_dim2(a, L, ScalarProduct2(gram), lam, order)
                    worst = max([worst] + [abs(c) for c in res.values()])
        except LambdaNotGeneric:
            continue
        done += 1
    return worst == 0, worst
