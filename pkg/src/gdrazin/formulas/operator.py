"""Drazin inverses of 2x2 operator matrices ``M = [[A, B], [C, D]]``.

Each route writes ``M = P + Q`` so that one of the additive routes applies,
with the Drazin data of ``PQ`` given in closed form from ``(BC)^d`` or
``(CB)^d``.
"""

from __future__ import annotations

from ..errors import DimensionMismatchError
from ..matrix import Matrix
from ..oracle import DrazinData
from ..scalar import DEFAULT_POLICY, TolerancePolicy
from ._trace import RouteResult, Trace, derived, gate
from .additive import additive_d

OPERATOR_ROUTES = ("T4.1", "C4.2", "T4.3", "C4.4", "T4.5", "C4.6")

_HYP = {"T4.1": "H41", "C4.2": "H42", "T4.3": "H43", "C4.4": "H44",
        "T4.5": "H45", "C4.6": "H46"}
# route each D-in-Q route reduces to once D is moved into Q
_BASE = {"C4.2": "T4.1", "C4.4": "T4.3", "C4.6": "T4.5"}
# additive route driving each base route
_ADDITIVE = {"T4.1": "T3.3", "T4.3": "T3.1", "T4.5": "T3.3"}


def _check_blocks(A, B, C, D):
    shapes = {m.shape for m in (A, B, C, D)}
    if len(shapes) != 1 or not A.is_square:
        raise DimensionMismatchError("A, B, C, D must be square of equal size")


def block_matrix(A: Matrix, B: Matrix, C: Matrix, D: Matrix) -> Matrix:
    _check_blocks(A, B, C, D)
    return Matrix.block([[A, B], [C, D]])


def pq_block_formula(A: Matrix, B: Matrix, C: Matrix, D: Matrix,
                     bcdata: DrazinData | None = None,
                     policy: TolerancePolicy = DEFAULT_POLICY):
    """Closed forms for ``PQ = [[BC, 0], [DC, 0]]``.

    ``(PQ)^d = [[(BC)^d, 0], [DC ((BC)^d)^2, 0]]`` and
    ``(PQ)^pi = [[(BC)^pi, 0], [-DC (BC)^d, I]]``.
    """
    _check_blocks(A, B, C, D)
    if bcdata is None:
        bcdata = Trace(policy).oracle_drazin("(BC)^d", B @ C)
    n, mode = A.rows, A.mode
    zero, ident = Matrix.zeros(n, n, mode), Matrix.identity(n, mode)
    bcd = bcdata.inverse
    dc = D @ C
    pqd = Matrix.block([[bcd, zero], [dc @ bcd @ bcd, zero]])
    pqpi = Matrix.block([[bcdata.projector, zero], [-(dc @ bcd), ident]])
    return pqd, pqpi


def pq_column_formula(A: Matrix, B: Matrix, C: Matrix, D: Matrix,
                      cbdata: DrazinData | None = None,
                      policy: TolerancePolicy = DEFAULT_POLICY):
    """Closed forms for ``PQ = [[0, AB], [0, CB]]``.

    ``(PQ)^d = [[0, AB ((CB)^d)^2], [0, (CB)^d]]`` and
    ``(PQ)^pi = [[I, -AB (CB)^d], [0, (CB)^pi]]``.
    """
    _check_blocks(A, B, C, D)
    if cbdata is None:
        cbdata = Trace(policy).oracle_drazin("(CB)^d", C @ B)
    n, mode = A.rows, A.mode
    zero, ident = Matrix.zeros(n, n, mode), Matrix.identity(n, mode)
    cbd = cbdata.inverse
    ab = A @ B
    pqd = Matrix.block([[zero, ab @ cbd @ cbd], [zero, cbd]])
    pqpi = Matrix.block([[ident, -(ab @ cbd)], [zero, cbdata.projector]])
    return pqd, pqpi


def split(A: Matrix, B: Matrix, C: Matrix, D: Matrix, route: str):
    """The ``(P, Q)`` decomposition used by ``route``."""
    n, mode = A.rows, A.mode
    zero = Matrix.zeros(n, n, mode)
    if route in ("T4.1", "T4.3"):
        return Matrix.block([[A, B], [zero, D]]), Matrix.block([[zero, zero], [C, zero]])
    if route == "T4.5":
        return Matrix.block([[A, zero], [C, zero]]), Matrix.block([[zero, B], [zero, D]])
    if route in _BASE:
        return Matrix.block([[A, B], [C, zero]]), Matrix.block_diag(zero, D)
    raise ValueError(f"{route!r} is not an operator-matrix route")


def _base_route(A, B, C, D, route, force, trace):
    p, q = split(A, B, C, D, route)
    if route == "T4.5":
        cbdata = trace.oracle_drazin("(CB)^d", C @ B)
        pqd, pqpi = pq_column_formula(A, B, C, D, cbdata)
        trace.formula("(PQ)^d, (PQ)^pi from (CB)^d")
    else:
        bcdata = trace.oracle_drazin("(BC)^d", B @ C)
        pqd, pqpi = pq_block_formula(A, B, C, D, bcdata)
        trace.formula("(PQ)^d, (PQ)^pi from (BC)^d")
    trace.check("P Q^2 = 0", p @ q @ q)
    trace.check("(PQ)^pi P^2 Q P = 0", pqpi @ p @ p @ q @ p)
    res = additive_d(p, q, _ADDITIVE[route], abdata=derived(pqd, pqpi), force=force,
                     policy=trace.policy, trace=trace.child("P+Q"))
    return res.inverse


def operator_matrix_d(A: Matrix, B: Matrix, C: Matrix, D: Matrix, route: str = "T4.1", *,
                      force: bool = False, policy: TolerancePolicy = DEFAULT_POLICY,
                      trace: Trace | None = None) -> RouteResult:
    """Drazin inverse of ``[[A, B], [C, D]]`` along one of the operator-matrix routes.

    T4.1 and T4.3 split off the strictly lower block ``Q = [[0, 0], [C, 0]]``;
    T4.5 splits by columns. C4.2, C4.4 and C4.6 move ``D`` into ``Q = diag(0, D)``,
    get ``P^d`` from the matching base route with ``D = 0``, and then combine
    ``P`` and ``Q`` by the T3.3 route, which applies because ``PQ^2 = 0``
    and ``PQP = 0`` while ``PQ`` squares to zero.
    """
    _check_blocks(A, B, C, D)
    if route not in _HYP:
        raise ValueError(f"{route!r} is not an operator-matrix route")
    trace = trace or Trace(policy)
    report = gate(_HYP[route], (A, B, C, D), force, trace)
    if route in _BASE:
        n, mode = A.rows, A.mode
        zero = Matrix.zeros(n, n, mode)
        p, q = split(A, B, C, D, route)
        base = _BASE[route]
        sub = trace.child("P")
        gate(_HYP[base], (A, B, C, zero), force, sub)
        pd = _base_route(A, B, C, zero, base, force, sub)
        sub.check("P^d P P^d = P^d", pd @ p @ pd - pd)
        sub.check("P P^d = P^d P", p @ pd - pd @ p)
        sub.check("(P - P^2 P^d)^(2n) = 0", (p - p @ p @ pd) ** (2 * n))
        trace.check("P Q^2 = 0", p @ q @ q)
        trace.check("P Q P = 0", p @ q @ p)
        pq = p @ q
        trace.check("(PQ)^2 = 0", pq @ pq)
        ident2 = Matrix.identity(2 * n, mode)
        pqdata = derived(Matrix.zeros(2 * n, 2 * n, mode), ident2)
        res = additive_d(p, q, "T3.3", abdata=pqdata, force=force,
                         policy=trace.policy, trace=trace.child("P+Q"))
        out = res.inverse
    else:
        out = _base_route(A, B, C, D, route, force, trace)
    return RouteResult(route, out, report, force and not report.satisfied,
                       trace.provenance, trace.identities)
