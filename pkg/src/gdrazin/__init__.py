"""Drazin inverses of block and anti-triangular matrices, with an exact oracle.

The package computes Drazin inverses of complex matrices two ways: by an
independent full-rank factorization oracle (:mod:`gdrazin.oracle`) and by
closed-form representation routes (:mod:`gdrazin.formulas`) that apply under
named condition sets (:mod:`gdrazin.hypotheses`). Seeded instances come from
:mod:`gdrazin.generator`.
"""

__version__ = "0.1.0"

from .errors import (BackendMismatchError, CannotIsolateError, DimensionMismatchError,
                     DivisionByZeroError, FloatingOverflowError, GDrazinError,
                     HypothesisViolatedError, InfeasibleConfigurationError,
                     NoGroupInverseError, ParseError, SingularMatrixError)
from .formulas import (RouteResult, additive_d, additive_series_L21, anti_triangular_d,
                       cor25_split, operator_matrix_d, pq_block_formula, run_route,
                       target_matrix, thm22_transforms, thm26_square_split)
from .generator import GenConfig, Instance, generate_instance, perturb_to_violate
from .hypotheses import HypothesisReport, check_hypothesis
from .matrix import Matrix, rank
from .oracle import (DrazinData, cline_transport, drazin, drazin_inverse, group_inverse,
                     is_quasinilpotent, satisfies_axioms, spectral_idempotent,
                     square_transport)
from .scalar import EXACT, FLOAT, Scalar, TolerancePolicy, parse_scalar

__all__ = [
    "BackendMismatchError", "CannotIsolateError", "DimensionMismatchError",
    "DivisionByZeroError", "DrazinData", "EXACT", "FLOAT", "FloatingOverflowError",
    "GDrazinError", "GenConfig", "HypothesisReport", "HypothesisViolatedError",
    "InfeasibleConfigurationError", "Instance", "Matrix", "NoGroupInverseError",
    "ParseError", "RouteResult", "Scalar", "SingularMatrixError", "TolerancePolicy",
    "additive_d", "additive_series_L21", "anti_triangular_d", "check_hypothesis",
    "cline_transport", "cor25_split", "drazin", "drazin_inverse", "generate_instance",
    "group_inverse", "is_quasinilpotent", "operator_matrix_d", "parse_scalar",
    "perturb_to_violate", "pq_block_formula", "rank", "run_route", "satisfies_axioms",
    "spectral_idempotent", "square_transport", "target_matrix", "thm22_transforms",
    "thm26_square_split",
]
