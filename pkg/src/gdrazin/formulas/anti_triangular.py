"""Drazin inverses of anti-triangular matrices ``M = [[a, I], [b, 0]]``.

All routes share one assembly step. With ``p = diag(b^pi, b^pi)`` the matrix
splits as ``M = alpha + s`` where ``alpha`` is the part living on the
invertible core of ``b`` (group invertible) and ``s = beta + gamma + delta``
satisfies ``s alpha = 0``. Then

    M^d = alpha^pi s^d + sum_i (alpha^#)^{i+1} s^i s^pi,

and ``s^d`` is obtained from the Drazin inverse of
``N = [[b^pi a, I], [b^pi b, 0]]`` by Cline's formula. The routes differ only
in how ``N^d`` is produced.
"""

from __future__ import annotations

from ..errors import DimensionMismatchError
from ..matrix import Matrix
from ..oracle import DrazinData, cline_transport, square_transport
from ..scalar import DEFAULT_POLICY, TolerancePolicy
from ._trace import RouteResult, Trace, derived, gate
from .series import l21_sum

ANTI_TRIANGULAR_ROUTES = ("T2.2", "C2.3", "C2.4", "C2.5", "T2.6", "C2.7", "C2.8")
DIRECTIONS = ("1->2", "2->1", "2->3", "3->2")

_HYP = {"T2.2": "H22", "C2.3": "H23", "C2.4": "H24", "C2.5": "H25",
        "T2.6": "H26", "C2.7": "H27", "C2.8": "H28"}


def _check_pair(a: Matrix, b: Matrix):
    if not (a.is_square and b.is_square and a.shape == b.shape):
        raise DimensionMismatchError("a and b must be square of equal size")


def anti_triangular(a: Matrix, b: Matrix) -> Matrix:
    """``[[a, I], [b, 0]]``."""
    _check_pair(a, b)
    n = a.rows
    return Matrix.block([[a, Matrix.identity(n, a.mode)], [b, Matrix.zeros(n, n, a.mode)]])


def _n2(a, b, bpi):
    return anti_triangular(bpi @ a, bpi @ b)


def _n3(a, b, bpi):
    return anti_triangular(a @ bpi, b @ bpi)


def alpha_blocks(a: Matrix, b: Matrix, bdata: DrazinData):
    """``(alpha, alpha^#, alpha^pi, s)`` for ``M = alpha + s``.

    ``alpha^# = [[0, b^d], [b b^d, -b b^d a b^d]]`` is the group inverse of
    ``alpha = [[b b^d a b b^d, b b^d], [b^2 b^d, 0]]``.
    """
    n, mode = a.rows, a.mode
    bd, bpi = bdata.inverse, bdata.projector
    zero = Matrix.zeros(n, n, mode)
    bbd = b @ bd
    alpha = Matrix.block([[bbd @ a @ bbd, bbd], [b @ bbd, zero]])
    alpha_sharp = Matrix.block([[zero, bd], [bbd, -(bbd @ a @ bd)]])
    alpha_pi = Matrix.block_diag(bpi, bpi)
    s = Matrix.block([[bbd @ a @ bpi + bpi @ a, bpi], [b @ bpi, zero]])
    return alpha, alpha_sharp, alpha_pi, s


def assemble(a: Matrix, b: Matrix, nd: Matrix, bdata: DrazinData,
             trace: Trace) -> Matrix:
    """``M^d`` from ``N^d`` for ``M = [[a, I], [b, 0]]`` with ``b^pi a b^d = 0``."""
    n, mode = a.rows, a.mode
    ident = Matrix.identity(n, mode)
    ident2 = Matrix.identity(2 * n, mode)
    m = anti_triangular(a, b)
    alpha, alpha_sharp, alpha_pi, s = alpha_blocks(a, b, bdata)
    e = Matrix.block_diag(ident, bdata.projector)

    trace.check("M = alpha + (beta+gamma+delta)", m - alpha - s)
    trace.check("p M (1-p) = 0", alpha_pi @ m @ (ident2 - alpha_pi))
    trace.check("(beta+gamma+delta) alpha = 0", s @ alpha)
    trace.check("alpha alpha# alpha = alpha", alpha @ alpha_sharp @ alpha - alpha)
    trace.check("alpha# alpha alpha# = alpha#", alpha_sharp @ alpha @ alpha_sharp - alpha_sharp)
    trace.check("alpha alpha# = alpha# alpha", alpha @ alpha_sharp - alpha_sharp @ alpha)
    trace.check("alpha^pi = I - alpha alpha#", ident2 - alpha @ alpha_sharp - alpha_pi)

    # s = M p and p M = N E, so s^d = M (N^d E)^2 p = M N^d E N^d p
    sd = m @ nd @ e @ nd @ alpha_pi
    trace.formula("(beta+gamma+delta)^d")
    spi = ident2 - s @ sd

    total = alpha_pi @ sd
    left, right = alpha_sharp, spi
    for _ in range(2 * n):
        total = total + left @ right
        right = s @ right
        # s^i s^pi vanishes from the index of s on; in floating point the
        # leftover rounding would be amplified by the powers of alpha#
        if right.is_zero(trace.policy):
            break
        left = left @ alpha_sharp
    trace.formula("M^d series")
    return total


# -- ways to obtain N^d ------------------------------------------------------

def cor25_split(a: Matrix, b: Matrix, *, bdata: DrazinData | None = None,
                force: bool = False, policy: TolerancePolicy = DEFAULT_POLICY,
                trace: Trace | None = None):
    """``N^2 = P + Q`` with ``P^d`` and ``P^pi`` in closed form.

    ``P = [[x^2, x], [0, 0]]``, ``Q = [[b^pi b, 0], [b^pi b x, b^pi b]]`` for
    ``x = b^pi a``; ``P^d = [[(x^d)^2, (x^d)^3], [0, 0]]`` and
    ``P^pi = [[x^pi, -x^d], [0, I]]``.
    """
    trace = trace or Trace(policy)
    _check_pair(a, b)
    gate("H25", (a, b), force, trace)
    if bdata is None:
        bdata = trace.oracle_drazin("b^d", b)
    n, mode = a.rows, a.mode
    zero, ident = Matrix.zeros(n, n, mode), Matrix.identity(n, mode)
    bpi = bdata.projector
    x = bpi @ a
    xdata = trace.oracle_drazin("(b^pi a)^d", x)
    xd = xdata.inverse
    y = bpi @ b
    p = Matrix.block([[x @ x, x], [zero, zero]])
    q = Matrix.block([[y, zero], [y @ x, y]])
    pd = Matrix.block([[xd @ xd, xd @ xd @ xd], [zero, zero]])
    ppi = Matrix.block([[xdata.projector, -xd], [zero, ident]])
    trace.formula("P^d, P^pi")
    trace.check("P^d Q = 0", pd @ q)
    trace.check("P Q P^pi = 0", p @ q @ ppi)
    return p, q, pd, ppi


def thm26_square_split(a: Matrix, b: Matrix, *, bdata: DrazinData | None = None,
                       force: bool = False, policy: TolerancePolicy = DEFAULT_POLICY,
                       trace: Trace | None = None):
    """``N^2 = P + Q`` with ``P Q^2 = 0`` and ``P Q P = 0``."""
    trace = trace or Trace(policy)
    _check_pair(a, b)
    gate("H26", (a, b), force, trace)
    if bdata is None:
        bdata = trace.oracle_drazin("b^d", b)
    n, mode = a.rows, a.mode
    zero = Matrix.zeros(n, n, mode)
    bpi = bdata.projector
    x, y = bpi @ a, bpi @ b
    p = Matrix.block([[x @ x, x], [zero, zero]])
    q = Matrix.block([[y, zero], [y @ x, y]])
    trace.check("P Q^2 = 0", p @ q @ q)
    trace.check("P Q P = 0", p @ q @ p)
    return p, q


def _nd_oracle(a, b, bdata, trace):
    return trace.oracle_drazin("N^d", _n2(a, b, bdata.projector)).inverse


def _nd_from_form3(a, b, bdata, trace):
    n3 = _n3(a, b, bdata.projector)
    n3d = trace.oracle_drazin("[[a b^pi, I], [b b^pi, 0]]^d", n3).inverse
    return _transport(a, b, bdata, "3->2", n3d, trace)


def _nd_cor25(a, b, bdata, force, trace):
    n, mode = a.rows, a.mode
    p, q, pd, ppi = cor25_split(a, b, bdata=bdata, force=force, trace=trace)
    nmat = _n2(a, b, bdata.projector)
    trace.check("N^2 = P + Q", nmat @ nmat - p - q)
    trace.check("P^pi Q = Q", ppi @ q - q)
    ident2 = Matrix.identity(2 * n, mode)
    # (Q P^pi)^d by Cline from (P^pi Q)^d = Q^d
    qdata = trace.oracle_drazin("Q^d", q)
    qppi = q @ ppi
    qppi_d = cline_transport(ppi, q, qdata.inverse)
    trace.formula("(Q P^pi)^d")
    # (P P^pi + Q P^pi)^d by the ab = 0 series; P P^pi is nilpotent
    pppi = p @ ppi
    trace.check("(P P^pi)(Q P^pi) = 0", pppi @ qppi)
    zero2 = Matrix.zeros(2 * n, 2 * n, mode)
    w_right_d = l21_sum(pppi, qppi, derived(zero2, ident2),
                        derived(qppi_d, ident2 - qppi @ qppi_d), policy=trace.policy)
    trace.formula("(P P^pi + Q P^pi)^d")
    # P P^pi + Q = P^pi (P + Q) and (P + Q) P^pi = P P^pi + Q P^pi
    pq = p + q
    w = pppi + q
    trace.check("P P^pi + Q = P^pi (P + Q)", w - ppi @ pq)
    w_d = cline_transport(pq, ppi, w_right_d)
    # N^2 = P^2 P^d + w with (P^2 P^d) w = 0; P^2 P^d has group inverse P^d
    u = p @ p @ pd
    trace.check("(P^2 P^d)(P P^pi + Q) = 0", u @ w)
    nsq_d = l21_sum(u, w, derived(pd, ppi), derived(w_d, ident2 - w @ w_d),
                    terms=2 * n, policy=trace.policy)
    trace.formula("(N^2)^d")
    out = square_transport(nmat, nsq_d)
    trace.formula("N^d = N (N^2)^d")
    return out


def _nd_thm26(a, b, bdata, force, trace):
    bpi, bd = bdata.projector, bdata.inverse
    x, y = bpi @ a, bpi @ b
    trace.check("b^pi a b^d = 0", x @ bd)
    trace.check("b^pi a (b^pi b)^2 = 0", x @ y @ y)
    trace.check("b^pi a (b^pi b) b^pi a = 0", x @ y @ x)
    p, q = thm26_square_split(a, b, bdata=bdata, force=force, trace=trace)
    nmat = _n2(a, b, bpi)
    trace.check("N^2 = P + Q", nmat @ nmat - p - q)
    nsq_d = trace.oracle_drazin("(P + Q)^d", p + q).inverse
    out = square_transport(nmat, nsq_d)
    trace.formula("N^d = N (N^2)^d")
    return out


def anti_triangular_d(a: Matrix, b: Matrix, route: str = "T2.2", *,
                      bdata: DrazinData | None = None, force: bool = False,
                      policy: TolerancePolicy = DEFAULT_POLICY,
                      trace: Trace | None = None) -> RouteResult:
    """Drazin inverse of ``[[a, I], [b, 0]]`` along one of the anti-triangular routes.

    ``N^d`` comes from the oracle for T2.2 and C2.4, from the oracle on
    ``[[a b^pi, I], [b b^pi, 0]]`` plus the factor chain for C2.3, from the
    ``N^2 = P + Q`` construction for C2.5, and from ``N^2``'s inverse and
    ``N^d = N (N^2)^d`` for T2.6, C2.7 and C2.8.
    """
    if route not in _HYP:
        raise ValueError(f"{route!r} is not an anti-triangular route")
    _check_pair(a, b)
    trace = trace or Trace(policy)
    report = gate(_HYP[route], (a, b), force, trace)
    if bdata is None:
        bdata = trace.oracle_drazin("b^d", b)
    if route in ("T2.2", "C2.4"):
        nd = _nd_oracle(a, b, bdata, trace)
    elif route == "C2.3":
        nd = _nd_from_form3(a, b, bdata, trace)
    elif route == "C2.5":
        nd = _nd_cor25(a, b, bdata, force, trace)
    else:
        nd = _nd_thm26(a, b, bdata, force, trace)
    md = assemble(a, b, nd, bdata, trace)
    return RouteResult(route, md, report, force and not report.satisfied,
                       trace.provenance, trace.identities)


# -- equivalences (1) <-> (2) <-> (3) ----------------------------------------

def _transport(a, b, bdata, direction, source, trace):
    n, mode = a.rows, a.mode
    bpi = bdata.projector
    ident = Matrix.identity(n, mode)
    e = Matrix.block_diag(ident, bpi)
    p = Matrix.block_diag(bpi, bpi)
    m = anti_triangular(a, b)
    n2 = _n2(a, b, bpi)
    n3 = _n3(a, b, bpi)
    if direction == "1->2":
        trace.check("p M (1-p) = 0", p @ m - p @ m @ p)
        pmd = p @ source @ p
        trace.formula("(pM)^d = p M^d p")
        out = cline_transport(n2, e, pmd)
        trace.formula("N^d from (pM)^d, pM = N E, N = E N")
        return out
    if direction == "2->3":
        pmd = cline_transport(e, n2, source)
        mpd = cline_transport(p, m, pmd)
        out = cline_transport(n3, e, mpd)
        trace.formula("chain N^d -> (pM)^d -> (Mp)^d -> N3^d")
        return out
    if direction == "3->2":
        mpd = cline_transport(e, n3, source)
        pmd = cline_transport(m, p, mpd)
        out = cline_transport(n2, e, pmd)
        trace.formula("chain N3^d -> (Mp)^d -> (pM)^d -> N^d")
        return out
    raise ValueError(f"unknown direction {direction!r}")


def thm22_transforms(a: Matrix, b: Matrix, direction: str, source: Matrix, *,
                     bdata: DrazinData | None = None, force: bool = False,
                     policy: TolerancePolicy = DEFAULT_POLICY,
                     trace: Trace | None = None) -> Matrix:
    """Move a known Drazin inverse between the three equivalent matrices.

    (1) ``[[a, I], [b, 0]]``, (2) ``[[b^pi a, I], [b^pi b, 0]]`` and
    (3) ``[[a b^pi, I], [b b^pi, 0]]``. ``source`` is the Drazin inverse of
    the matrix the direction starts from. Only factor swaps (Cline's formula),
    the corner identity ``(pM)^d = p M^d p`` and the assembly step are used.
    """
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}")
    _check_pair(a, b)
    trace = trace or Trace(policy)
    gate("H22", (a, b), force, trace)
    if bdata is None:
        bdata = trace.oracle_drazin("b^d", b)
    if source.shape != (2 * a.rows, 2 * a.rows):
        raise DimensionMismatchError("source inverse has the wrong shape")
    if direction == "2->1":
        return assemble(a, b, source, bdata, trace)
    return _transport(a, b, bdata, direction, source, trace)
