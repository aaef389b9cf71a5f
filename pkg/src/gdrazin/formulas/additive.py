"""Drazin inverse of a sum ``a + b`` through an anti-triangular matrix.

Factor ``a + b = (I, b) col(a, I)``; the swapped product is
``M = [[a, ab], [I, b]] = K + L`` with ``K = [[a, ab], [I, 0]]`` and
``L = diag(0, b)``. When ``ab^2 = 0`` we have ``KL = 0``, so the two-series
formula gives ``M^d`` from ``K^d`` and ``L^d``. ``K = X Y`` with
``X = [[a, I], [I, 0]]`` and ``Y = diag(I, ab)``, and ``Y X = H`` is the
anti-triangular matrix ``[[a, I], [ab, 0]]``, whose inverse comes from the
anti-triangular routes applied to the pair ``(a, ab)``.
"""

from __future__ import annotations

from ..errors import DimensionMismatchError
from ..matrix import Matrix
from ..oracle import DrazinData, cline_transport
from ..scalar import DEFAULT_POLICY, TolerancePolicy
from ._trace import RouteResult, Trace, derived, gate
from .anti_triangular import anti_triangular_d, assemble
from .series import additive_series_L21, l21_sum

ADDITIVE_ROUTES = ("L2.1", "T3.1", "C3.2", "T3.3", "C3.4", "C3.5")

_HYP = {"T3.1": "H31", "C3.2": "H32", "T3.3": "H33", "C3.4": "H34", "C3.5": "H35"}


def _transpose_data(d: DrazinData) -> DrazinData:
    return DrazinData(d.inverse.T, d.index, d.projector.T)


def _h_inverse_t31(a, b, abdata, force, trace):
    """``H^d`` for ``H = [[a, I], [ab, 0]]`` with the reduced pair handled as a square-zero case."""
    n, mode = a.rows, a.mode
    ab = a @ b
    abpi = abdata.projector
    x, y = abpi @ a, abpi @ ab
    trace.check("(ab)^pi a [(ab)^pi ab]^2 = 0", x @ y @ y)
    trace.check("(ab)^pi a [(ab)^pi ab] (ab)^pi a = 0", x @ y @ x)
    # (ab)^pi ab is nilpotent, so its Drazin data is (0, I)
    if n:
        trace.check("[(ab)^pi ab]^n = 0", y ** n)
    ydata = derived(Matrix.zeros(n, n, mode), Matrix.identity(n, mode))
    inner = anti_triangular_d(x, y, "C2.7", bdata=ydata, force=force,
                              policy=trace.policy, trace=trace.child("N"))
    hd = assemble(a, ab, inner.inverse, abdata, trace.child("H"))
    trace.formula("H^d from [[(ab)^pi a, I], [(ab)^pi ab, 0]]^d")
    return hd


def _h_inverse_t33(a, b, abdata, force, trace):
    ab = a @ b
    abpi = abdata.projector
    trace.check("(ab)^pi a (ab)^2 = 0", abpi @ a @ ab @ ab)
    trace.check("(ab)^pi a (ab) a = 0", abpi @ a @ ab @ a)
    res = anti_triangular_d(a, ab, "T2.6", bdata=abdata, force=force,
                            policy=trace.policy, trace=trace.child("H"))
    return res.inverse


def _sum_from_h(a, b, hd, trace):
    n, mode = a.rows, a.mode
    ident, zero = Matrix.identity(n, mode), Matrix.zeros(n, n, mode)
    ab = a @ b
    x_fac = Matrix.block([[a, ident], [ident, zero]])
    y_fac = Matrix.block_diag(ident, ab)
    k = x_fac @ y_fac
    kd = cline_transport(y_fac, x_fac, hd)
    trace.formula("K^d from H^d, K = X Y, H = Y X")
    bdata = trace.oracle_drazin("b^d", b)
    l_mat = Matrix.block_diag(zero, b)
    ldata = derived(Matrix.block_diag(zero, bdata.inverse),
                    Matrix.block_diag(ident, bdata.projector))
    trace.check("K L = 0", k @ l_mat)
    ident2 = Matrix.identity(2 * n, mode)
    md = l21_sum(k, l_mat, derived(kd, ident2 - k @ kd), ldata, terms=2 * n,
                 policy=trace.policy)
    trace.formula("M^d = (K + L)^d")
    row = Matrix.block([[ident, b]])
    col = Matrix.block([[a], [ident]])
    out = cline_transport(col, row, md)
    trace.formula("(a+b)^d from M^d, a + b = (I, b) col(a, I)")
    return out


def _primal(a, b, route, abdata, force, trace):
    if abdata is None:
        abdata = trace.oracle_drazin("(ab)^d", a @ b)
    if route == "T3.1":
        hd = _h_inverse_t31(a, b, abdata, force, trace)
    else:
        hd = _h_inverse_t33(a, b, abdata, force, trace)
    return _sum_from_h(a, b, hd, trace)


def additive_d(a: Matrix, b: Matrix, route: str = "T3.3", *,
               abdata: DrazinData | None = None, force: bool = False,
               policy: TolerancePolicy = DEFAULT_POLICY,
               trace: Trace | None = None) -> RouteResult:
    """``(a + b)^d`` along one of the additive routes.

    ``abdata`` optionally supplies the Drazin data of ``ab``; otherwise it is
    taken from the oracle. C3.2 and C3.4 run the T3.1 and T3.3 pipelines on
    ``(b^T, a^T)`` and transpose the result, which realizes the reversed
    multiplication ``x * y = y x``.
    """
    if not (a.is_square and b.is_square and a.shape == b.shape):
        raise DimensionMismatchError("a and b must be square of equal size")
    trace = trace or Trace(policy)
    if route == "L2.1":
        return additive_series_L21(a, b, force=force, policy=trace.policy, trace=trace)
    if route not in _HYP:
        raise ValueError(f"{route!r} is not an additive route")
    report = gate(_HYP[route], (a, b), force, trace)
    if route in ("C3.2", "C3.4"):
        primal = "T3.1" if route == "C3.2" else "T3.3"
        tdata = None if abdata is None else _transpose_data(abdata)
        sub = trace.child("transposed")
        gate("H31" if primal == "T3.1" else "H33", (b.T, a.T), force, sub)
        out = _primal(b.T, a.T, primal, tdata, force, sub).T
        trace.formula("transpose back")
    else:
        out = _primal(a, b, "T3.1" if route == "T3.1" else "T3.3", abdata, force, trace)
    return RouteResult(route, out, report, force and not report.satisfied,
                       trace.provenance, trace.identities)
