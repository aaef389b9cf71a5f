"""Uniform entry point over every route."""

from __future__ import annotations

from ..hypotheses import HYPOTHESIS_OF
from ..matrix import Matrix
from ..scalar import DEFAULT_POLICY, TolerancePolicy
from ._trace import RouteResult
from .additive import ADDITIVE_ROUTES, additive_d
from .anti_triangular import ANTI_TRIANGULAR_ROUTES, anti_triangular, anti_triangular_d
from .operator import OPERATOR_ROUTES, block_matrix, operator_matrix_d

ROUTES = ("L2.1",) + ANTI_TRIANGULAR_ROUTES + ADDITIVE_ROUTES[1:] + OPERATOR_ROUTES


def route_arity(route: str) -> int:
    if route not in ROUTES:
        raise KeyError(f"unknown route {route!r}")
    return 4 if route in OPERATOR_ROUTES else 2


def target_matrix(route: str, *mats: Matrix) -> Matrix:
    """The matrix whose Drazin inverse ``route`` produces."""
    if route in OPERATOR_ROUTES:
        return block_matrix(*mats)
    if route in ANTI_TRIANGULAR_ROUTES:
        return anti_triangular(*mats)
    a, b = mats
    return a + b


def run_route(route: str, *mats: Matrix, force: bool = False,
              policy: TolerancePolicy = DEFAULT_POLICY) -> RouteResult:
    if len(mats) != route_arity(route):
        raise ValueError(f"route {route} takes {route_arity(route)} matrices, got {len(mats)}")
    if route in OPERATOR_ROUTES:
        return operator_matrix_d(*mats, route, force=force, policy=policy)
    if route in ANTI_TRIANGULAR_ROUTES:
        return anti_triangular_d(*mats, route, force=force, policy=policy)
    return additive_d(*mats, route, force=force, policy=policy)


def hypothesis_for(route: str) -> str:
    return HYPOTHESIS_OF[route]
