"""Exact weighted Ehrhart quasi-polynomials of rational simplices."""
from .barvinok import (SignedConeList, dual_cone, exp_sum_series, integral_series,
                       unimodular_decompose)
from .cones import (RationalSimplex, SimplicialAffineCone, face_family, split_cone_along_face,
                    vertex_cones)
from .engine import (WeightPoly, brion_series, decompose_monomial, ehrhart_quasipolynomial, ehrhart_residue_poly,
                     ehrhart_top_coeffs, generic_lambda, mixed_sum_constant_2d, with_generic_lambda, weighted_cone_series)
from .estimator import EhrhartEstimator
from .exact_linalg import LatticeBasis, hnf
from .mixed import (PatchworkFamily, barvinok_valuation_series, line_mixed_series_2d,
                    mixed_exp_sum_series, patchwork_coefficient)
from .mu_dim2 import EdgeLine, ScalarProduct2, TransverseLine, mu_L_dim2, verify_euler_maclaurin_dim2
from .oracle import enumerate_lattice_points, fit_quasipoly, slice_sum_oracle_2d, weighted_sum_oracle
from .quasipoly import QuasiPolynomial, assemble_quasipoly
from .series import BiSeries

__all__ = [
    "BiSeries", "EdgeLine", "EhrhartEstimator", "LatticeBasis", "PatchworkFamily", "QuasiPolynomial",
    "RationalSimplex", "ScalarProduct2", "SignedConeList", "SimplicialAffineCone", "TransverseLine",
    "WeightPoly", "assemble_quasipoly", "barvinok_valuation_series", "brion_series", "decompose_monomial", "dual_cone",
    "ehrhart_quasipolynomial", "ehrhart_residue_poly", "ehrhart_top_coeffs", "enumerate_lattice_points",
    "exp_sum_series", "face_family", "fit_quasipoly", "generic_lambda", "hnf", "integral_series",
    "line_mixed_series_2d", "mixed_exp_sum_series", "mixed_sum_constant_2d", "mu_L_dim2",
    "patchwork_coefficient", "slice_sum_oracle_2d", "split_cone_along_face", "unimodular_decompose",
    "verify_euler_maclaurin_dim2", "vertex_cones", "weighted_cone_series", "weighted_sum_oracle",
    "with_generic_lambda",
]
