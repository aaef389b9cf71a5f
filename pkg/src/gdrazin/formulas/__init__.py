"""Representation formulas for Drazin inverses, each cross-checkable against the oracle."""

from ._trace import RouteResult, Trace
from .additive import ADDITIVE_ROUTES, additive_d
from .anti_triangular import (ANTI_TRIANGULAR_ROUTES, DIRECTIONS, anti_triangular,
                              anti_triangular_d, cor25_split, thm22_transforms,
                              thm26_square_split)
from .operator import (OPERATOR_ROUTES, block_matrix, operator_matrix_d,
                       pq_block_formula, pq_column_formula)
from .routes import ROUTES, hypothesis_for, route_arity, run_route, target_matrix
from .series import additive_series_L21, l21_sum

__all__ = [
    "ADDITIVE_ROUTES", "ANTI_TRIANGULAR_ROUTES", "DIRECTIONS", "OPERATOR_ROUTES", "ROUTES",
    "RouteResult", "Trace", "additive_d", "additive_series_L21", "anti_triangular",
    "anti_triangular_d", "block_matrix", "cor25_split", "hypothesis_for", "l21_sum",
    "operator_matrix_d", "pq_block_formula", "pq_column_formula", "route_arity",
    "run_route", "target_matrix", "thm22_transforms", "thm26_square_split",
]
