"""The two-series representation of ``(a + b)^d`` when ``ab = 0``."""

from __future__ import annotations

from ..matrix import Matrix
from ..oracle import DrazinData
from ..scalar import DEFAULT_POLICY, TolerancePolicy
from ._trace import RouteResult, Trace, gate


def _sum_series(lead, step, tail_factor, terms, left_first, policy=DEFAULT_POLICY):
    """Sum ``step^i lead tail_factor^(i+1)`` style terms, stopping once ``step^i lead`` is zero.

    With ``left_first`` the i-th term is ``(step^i lead) (tail^(i+1))``,
    otherwise ``(tail^(i+1)) (step^i lead)``.
    """
    total = None
    nil_part = lead
    power = tail_factor
    for _ in range(terms):
        term = nil_part @ power if left_first else power @ nil_part
        total = term if total is None else total + term
        nil_part = step @ nil_part if left_first else nil_part @ step
        if nil_part.is_zero(policy):
            break
        power = power @ tail_factor
    return total


def l21_sum(a: Matrix, b: Matrix, adata: DrazinData, bdata: DrazinData,
            terms: int | None = None, policy: TolerancePolicy = DEFAULT_POLICY) -> Matrix:
    """``sum_i b^i b^pi (a^d)^{i+1} + sum_i (b^d)^{i+1} a^i a^pi``.

    Both sums are cut at ``terms`` (default: the dimension); ``b^i b^pi`` and
    ``a^i a^pi`` vanish from the index onward, so the cut is exact.
    """
    n = a.rows
    terms = n if terms is None else terms
    if n == 0 or terms == 0:
        return Matrix.zeros(n, n, a.mode)
    first = _sum_series(bdata.projector, b, adata.inverse, terms, True, policy)
    second = _sum_series(adata.projector, a, bdata.inverse, terms, False, policy)
    return first + second


def additive_series_L21(a: Matrix, b: Matrix, *, adata: DrazinData | None = None,
                        bdata: DrazinData | None = None, force: bool = False,
                        policy: TolerancePolicy = DEFAULT_POLICY,
                        trace: Trace | None = None) -> RouteResult:
    """``(a + b)^d`` for ``ab = 0`` from the Drazin data of ``a`` and ``b``."""
    trace = trace or Trace(policy)
    report = gate("H21", (a, b), force, trace)
    if adata is None:
        adata = trace.oracle_drazin("a^d", a)
    if bdata is None:
        bdata = trace.oracle_drazin("b^d", b)
    n = a.rows
    if n:
        trace.check("b^n b^pi = 0", (b ** n) @ bdata.projector)
        trace.check("a^n a^pi = 0", (a ** n) @ adata.projector)
    out = l21_sum(a, b, adata, bdata, policy=trace.policy)
    trace.formula("(a+b)^d series")
    return RouteResult("L2.1", out, report, force and not report.satisfied,
                       trace.provenance, trace.identities)
