"""Reference Drazin inverses by iterated full-rank factorization.

Nothing here uses the representation formulas in :mod:`gdrazin.formulas`;
this module is the independent ground truth those formulas are checked
against. Over complex matrices the generalized Drazin inverse and the Drazin
inverse coincide, so a single routine serves both.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatchError, NoGroupInverseError
from .matrix import Matrix, inverse, rank_factorize
from .scalar import DEFAULT_POLICY, FLOAT, TolerancePolicy


@dataclass(frozen=True)
class DrazinData:
    inverse: Matrix
    index: int
    projector: Matrix


def _chain_product(mats, n, mode):
    out = Matrix.identity(n, mode)
    for m in mats:
        out = out @ m
    return out


def drazin(a: Matrix, policy: TolerancePolicy = DEFAULT_POLICY) -> DrazinData:
    """Drazin inverse, index and spectral idempotent ``I - A A^d`` of ``a``.

    Write ``A_1 = A = B_1 C_1`` and ``A_{k+1} = C_k B_k = B_{k+1} C_{k+1}``.
    The first time ``A_{k+1}`` is invertible the index is ``k`` and
    ``A^d = B_1...B_k A_{k+1}^{-(k+1)} C_k...C_1``; if ``A_{k+1}`` is zero the
    index is ``k + 1`` and ``A^d = 0``. The zero matrix has index 1.
    """
    if not a.is_square:
        raise DimensionMismatchError("Drazin inverse of a non-square matrix")
    n, mode = a.rows, a.mode
    ident = Matrix.identity(n, mode)
    zero = Matrix.zeros(n, n, mode)
    if n == 0:
        return DrazinData(zero, 0, zero)
    # floating cores are ranked against the size of a, so rounding residue
    # left in a core that should vanish is not mistaken for rank
    scale = a.max_abs() if mode == FLOAT else 0.0
    b, c, r = rank_factorize(a, policy, scale)
    if r == n:
        return DrazinData(inverse(a, policy), 0, zero)
    if r == 0:
        return DrazinData(zero, 1, ident)
    bs, cs = [b], [c]
    while True:
        core = c @ b
        b, c, r_next = rank_factorize(core, policy, scale)
        k = len(bs)
        if r_next == 0:
            return DrazinData(zero, k + 1, ident)
        if r_next == core.rows:
            core_inv = inverse(core, policy)
            left = _chain_product(bs, n, mode)
            right = cs[-1]
            for cm in reversed(cs[:-1]):
                right = right @ cm
            ad = left @ (core_inv ** (k + 1)) @ right
            return DrazinData(ad, k, ident - a @ ad)
        bs.append(b)
        cs.append(c)


def drazin_inverse(a: Matrix, policy: TolerancePolicy = DEFAULT_POLICY) -> Matrix:
    return drazin(a, policy).inverse


def spectral_idempotent(a: Matrix, ad: Matrix | None = None) -> Matrix:
    """``I - a a^d``; uses the oracle when ``ad`` is not supplied."""
    if ad is None:
        ad = drazin(a).inverse
    return Matrix.identity(a.rows, a.mode) - a @ ad


def is_quasinilpotent(a: Matrix, policy: TolerancePolicy = DEFAULT_POLICY) -> bool:
    """Nilpotence test ``a^n == 0``, which is quasinilpotence for n x n matrices."""
    if not a.is_square:
        raise DimensionMismatchError("quasinilpotence of a non-square matrix")
    if a.rows == 0:
        return True
    return (a ** a.rows).is_zero(policy)


def group_inverse(a: Matrix, policy: TolerancePolicy = DEFAULT_POLICY) -> Matrix:
    d = drazin(a, policy)
    if d.index > 1:
        raise NoGroupInverseError(f"index {d.index} > 1, no group inverse")
    return d.inverse


def cline_transport(a: Matrix, b: Matrix, abd: Matrix) -> Matrix:
    """``(ba)^d = b ((ab)^d)^2 a`` given ``abd = (ab)^d``."""
    if a.cols != b.rows or b.cols != a.rows:
        raise DimensionMismatchError("a and b are not conformable both ways")
    if abd.shape != (a.rows, a.rows):
        raise DimensionMismatchError("abd must be square of the size of ab")
    return b @ abd @ abd @ a


def square_transport(n_mat: Matrix, nsqd: Matrix) -> Matrix:
    """``N^d = N (N^2)^d`` given ``nsqd = (N^2)^d``."""
    if not n_mat.is_square or nsqd.shape != n_mat.shape:
        raise DimensionMismatchError("N and (N^2)^d must be square of equal size")
    return n_mat @ nsqd


def axiom_residuals(a: Matrix, x: Matrix, index: int | None = None) -> dict[str, float]:
    """Residual norms of the three defining identities for ``x = a^d``.

    The nilpotence residual is ``|(a - a^2 x)^k|`` with ``k = max(index, 1)``;
    when ``index`` is omitted, ``k`` is the dimension.
    """
    k = a.rows if index is None else max(index, 1)
    return {
        "xax=x": (x @ a @ x - x).max_abs(),
        "ax=xa": (a @ x - x @ a).max_abs(),
        "a-a2x nilpotent": ((a - a @ a @ x) ** k).max_abs() if a.rows else 0.0,
    }


def satisfies_axioms(a: Matrix, x: Matrix, index: int | None = None,
                     policy: TolerancePolicy = DEFAULT_POLICY) -> bool:
    k = a.rows if index is None else max(index, 1)
    checks = [x @ a @ x - x, a @ x - x @ a]
    if a.rows:
        checks.append((a - a @ a @ x) ** k)
    return all(c.is_zero(policy) for c in checks)
