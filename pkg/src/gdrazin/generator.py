"""Seeded instances that satisfy a chosen condition set exactly.

Pairs ``(a, b)`` are built in coordinates adapted to ``b``: there
``b = diag(b1, b2)`` with ``b1`` invertible and ``b2`` nilpotent, so
``b^d = diag(b1^{-1}, 0)`` and ``b^pi = diag(0, I)``, and most conditions
turn into block constraints on ``a``. Operator blocks ``(A, B, C, D)`` use
``B = diag(B1, B2)``, ``C = diag(C1, C2)`` with ``B1 C1`` invertible and
``B2 C2`` nilpotent, so ``(BC)^pi = diag(0, I)``. The result is moved to
general position by a unimodular similarity (Gaussian-integer entries for a
share of draws), which keeps every entry a small Gaussian rational and
preserves every condition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .errors import CannotIsolateError, InfeasibleConfigurationError
from .hypotheses import BLOCK_IDS, HYPOTHESIS_IDS, arity, check_hypothesis
from .matrix import Matrix, inverse, nullspace, rank
from .scalar import EXACT, FLOAT, Scalar

SEED_MASK = (1 << 64) - 1
MAX_DIM = 12


@dataclass(frozen=True)
class GenConfig:
    id: str
    n: int
    seed: int = 0
    pool: int = 3                       # integers drawn from [-pool, pool]
    denominators: tuple[int, ...] = (1, 2)
    scramble: bool = True
    complex_share: float = 0.25         # share of draws scrambled over Z[i]
    mode: str = EXACT

    def trial(self, index: int) -> "GenConfig":
        """Config of the ``index``-th trial: seed xor index."""
        return replace(self, seed=(self.seed ^ index) & SEED_MASK)


@dataclass(frozen=True)
class Instance:
    id: str
    seed: int
    recipe: str
    mats: tuple[Matrix, ...]
    # (S, S^-1) for pairs; (S, S^-1, T, T^-1) for blocks
    frames: tuple[Matrix, ...] = field(default=(), compare=False, repr=False)

    def manifest(self) -> dict:
        names = ("A", "B", "C", "D") if len(self.mats) == 4 else ("a", "b")
        return {
            "id": self.id,
            "seed": self.seed,
            "recipe": self.recipe,
            "matrices": {k: m.to_json() for k, m in zip(names, self.mats)},
        }

    def to_json(self) -> str:
        return json.dumps(self.manifest(), sort_keys=True, separators=(",", ":"))


# -- random pieces ------------------------------------------------------------

class _Draw:
    def __init__(self, cfg: GenConfig, rng):
        self.cfg, self.rng = cfg, rng

    def entry(self):
        num = int(self.rng.integers(-self.cfg.pool, self.cfg.pool + 1))
        den = int(self.rng.choice(self.cfg.denominators))
        return Fraction(num, den)

    def mat(self, m, n, density=0.7):
        rows = [[self.entry() if self.rng.random() < density else 0 for _ in range(n)]
                for _ in range(m)]
        return Matrix.from_rows(rows, shape=(m, n))

    def invertible(self, k):
        for _ in range(50):
            x = self.mat(k, k, 0.8)
            if rank(x) == k:
                return x
        # triangular fallback with a nonzero diagonal
        rows = [[(self.entry() if j > i else 0) for j in range(k)] for i in range(k)]
        for i in range(k):
            rows[i][i] = int(self.rng.choice([-2, -1, 1, 2]))
        return Matrix.from_rows(rows, shape=(k, k))

    def strict_upper(self, k, density=0.6):
        rows = [[self.entry() if j > i and self.rng.random() < density else 0
                 for j in range(k)] for i in range(k)]
        return Matrix.from_rows(rows, shape=(k, k))

    def upper(self, k):
        rows = [[self.entry() if j >= i else 0 for j in range(k)] for i in range(k)]
        return Matrix.from_rows(rows, shape=(k, k))

    def poly(self, x):
        """Random polynomial in the square matrix ``x``."""
        out = Matrix.identity(x.rows).scale(self.entry())
        power = Matrix.identity(x.rows)
        for _ in range(x.rows):
            power = power @ x
            out = out + power.scale(self.entry())
        return out

    def span(self, basis, k):
        """``k`` random columns in the column span of ``basis``."""
        return basis @ self.mat(basis.cols, k, 0.9)

    def size(self, lo, hi):
        return int(self.rng.integers(lo, hi + 1))

    def unimodular(self, n, gaussian):
        units = [1, -1, Scalar(0, 1), Scalar(0, -1)] if gaussian else [1, -1]

        def tri(upper):
            rows = [[0] * n for _ in range(n)]
            for i in range(n):
                rows[i][i] = 1
                for j in range(n):
                    if (j > i if upper else j < i) and self.rng.random() < 0.5:
                        rows[i][j] = units[int(self.rng.integers(len(units)))]
            return Matrix.from_rows(rows, shape=(n, n))

        perm = self.rng.permutation(n)
        p = Matrix.from_rows([[1 if perm[i] == j else 0 for j in range(n)]
                              for i in range(n)], shape=(n, n))
        s = p @ tri(False) @ tri(True)
        return s, inverse(s)


def _left_null(x):
    """Rows spanning ``{v : v x = 0}`` returned as columns (``x.rows x k``)."""
    return nullspace(x.T)


def _zeros(m, n=None):
    return Matrix.zeros(m, m if n is None else n)


def _dsum(pairs):
    pairs = [p for p in pairs if p[0].rows]
    return (Matrix.block_diag(*[p[0] for p in pairs]),
            Matrix.block_diag(*[p[1] for p in pairs]))


# -- pair recipes in b-adapted coordinates --------------------------------------

def _adapted(d, n, a22_rule, a12_rule=None, b2=None, r=None):
    """``b = diag(b1, b2)``, ``a = [[a11, a12], [0, a22]]`` (``a21 = 0`` kills ``b^pi a b^d``)."""
    r = d.size(0, n) if r is None else r
    m = n - r
    b1 = d.invertible(r)
    b2 = d.strict_upper(m) if b2 is None else b2
    a22 = a22_rule(b2)
    a12 = d.mat(r, m) if a12_rule is None else a12_rule(b2, r)
    a = Matrix.block([[d.mat(r, r), a12], [_zeros(m, r), a22]])
    return a, Matrix.block_diag(b1, b2)


def _xy_annihilated(d, b, m):
    """``a = X Y^T`` with ``Y^T b^2 = 0`` and ``Y^T b X = 0``, so ``ab^2 = 0`` and ``aba = 0``."""
    if m == 0:
        return _zeros(0)
    s = d.size(1, m)
    y = d.span(_left_null(b @ b), s)
    x = d.span(nullspace(y.T @ b), s)
    return x @ y.T


def _h21(d, n):
    # a = X Y^T with Y^T b = 0
    # an invertible b would force a = 0, so keep a nilpotent part
    _, b = _adapted(d, n, lambda b2: b2, r=d.size(0, n - 1))
    y = d.span(_left_null(b), d.size(1, n))
    return d.mat(n, y.cols) @ y.T, b


def _h25(d, n):
    r = d.size(0, n)
    m = n - r
    k = d.size(0, m)                     # size of the invertible part c1 of a22
    t = m - k
    split = d.size(0, t)
    c2 = d.strict_upper(t)
    beta22 = d.strict_upper(t)
    # c2 lives in columns >= split, beta22 in rows < split, so c2 beta22 = 0
    c2 = Matrix.block([[c2.submatrix(slice(None), slice(0, split)).scale(0),
                        c2.submatrix(slice(None), slice(split, t))]]) if t else c2
    beta22 = Matrix.block([[beta22.submatrix(slice(0, split), slice(None))],
                           [beta22.submatrix(slice(split, t), slice(None)).scale(0)]]) if t else beta22
    b2 = Matrix.block([[_zeros(k), _zeros(k, t)], [d.mat(t, k), beta22]]) if m else _zeros(0)
    a22 = Matrix.block_diag(d.invertible(k), c2) if m else _zeros(0)
    return _adapted(d, n, lambda _: a22, b2=b2, r=r)


def _family_a(d, size, a11_zero=False):
    """``ab = diag(c1, 0)`` with ``c1`` invertible, ``ab^2 = 0`` and ``(ab)^pi a = 0``."""
    r = d.size(1, size // 2)
    m = size - r
    t = m - r
    c1 = d.invertible(r)
    c1i = inverse(c1)
    a12p, u, v = d.mat(r, t), d.mat(t, r), d.mat(t, t)
    b22 = Matrix.block([[-(c1i @ a12p @ u), -(c1i @ a12p @ v)], [u, v]])
    a11 = _zeros(r) if a11_zero else d.mat(r, r)
    a = Matrix.block([[a11, Matrix.block([[c1, a12p]])], [_zeros(m, r), _zeros(m)]])
    e = Matrix.block([[Matrix.identity(r)], [_zeros(t, r)]])
    b = Matrix.block([[_zeros(r), _zeros(r, m)], [e, b22]])
    return a, b


def _h27_atom(d, size):
    _, b = _adapted(d, size, lambda b2: b2, r=d.size(0, size - 1))
    return _xy_annihilated(d, b, size), b


def _h35_atom(d, size):
    """``a = [[0, a12], [0, a22]]`` with ``(a22, b2)`` of square-zero type and ``a12 b2^2 = 0``."""
    r = d.size(0, size)
    m = size - r
    b2 = d.strict_upper(m)
    a22 = _xy_annihilated(d, b2, m)
    ln = _left_null(b2 @ b2)
    a12 = d.mat(r, ln.cols) @ ln.T
    a = Matrix.block([[_zeros(r), a12], [_zeros(m, r), a22]])
    return a, Matrix.block_diag(d.invertible(r), b2)


def _compose(d, n, kinds):
    """Direct sum of atoms whose conditions survive block-diagonal sums."""
    parts, left = [], n
    order = list(kinds)
    d.rng.shuffle(order)
    for i, kind in enumerate(order):
        last = i == len(order) - 1
        lo = 2 if kind[0] == "A" else 1
        if left < lo:
            continue
        size = left if last else d.size(0, left)
        if size and size < lo:
            size = 0
        if not size:
            continue
        if kind == "A":
            parts.append(_family_a(d, size))
        elif kind == "A0":
            parts.append(_family_a(d, size, a11_zero=True))
        elif kind == "H35":
            parts.append(_h35_atom(d, size))
        else:
            parts.append(_h27_atom(d, size))
        left -= size
    if left:
        parts.append(_h35_atom(d, left) if "H35" in kinds else _h27_atom(d, left))
    return _dsum(parts)


def _transposed(builder):
    def run(d, n):
        a, b = builder(d, n)
        return b.T, a.T
    return run


_PAIR_RECIPES = {
    "H21": ("a = X Y^T, Y^T b = 0", _h21),
    "H22": ("a21 = 0", lambda d, n: _adapted(d, n, lambda b2: d.mat(b2.rows, b2.rows))),
    "H23": ("a21 = 0, a12 b2 = 0, a22 = poly(b2)",
            lambda d, n: _adapted(d, n, d.poly,
                                  lambda b2, r: d.mat(r, b2.rows) @ _left_null(b2) @ _left_null(b2).T
                                  if b2.rows else _zeros(r, 0))),
    "H24": ("a21 = 0, a22 = poly(b2)", lambda d, n: _adapted(d, n, d.poly)),
    "H25": ("a21 = 0, a22 = diag(c1, c2), b2 = [[0, 0], [*, beta22]], c2 beta22 = 0", _h25),
    "H26": ("a21 = 0, a22 = X Y^T, Y^T b2^2 = 0, Y^T b2 X = 0",
            lambda d, n: _adapted(d, n, lambda b2: _xy_annihilated(d, b2, b2.rows))),
    "H27": ("a = X Y^T, Y^T b^2 = 0, Y^T b X = 0", _h27_atom),
    "H28": ("a21 = 0, a22 b2 = 0",
            lambda d, n: _adapted(d, n, lambda b2: d.mat(b2.rows, b2.rows) @ _left_null(b2)
                                  @ _left_null(b2).T if b2.rows else _zeros(0))),
    "H31": ("family A + square-zero atoms", lambda d, n: _compose(d, n, ["A", "H27"])),
    "H33": ("family A + H35 atoms + square-zero atoms",
            lambda d, n: _compose(d, n, ["A", "H35", "H27"])),
    "H35": ("family A (a11 = 0) + H35 atoms", lambda d, n: _compose(d, n, ["A0", "H35"])),
}
_PAIR_RECIPES["H32"] = ("transpose dual of " + _PAIR_RECIPES["H31"][0],
                        _transposed(_PAIR_RECIPES["H31"][1]))
_PAIR_RECIPES["H34"] = ("transpose dual of " + _PAIR_RECIPES["H33"][0],
                        _transposed(_PAIR_RECIPES["H33"][1]))


# -- operator-block recipes in BC-adapted coordinates ----------------------------

def _block_setup(d, n, hid):
    # H42, H44 and H46 need a nilpotent part of size >= 2 for a nonzero D
    # compatible with B2 D2 = 0, so they favour a smaller invertible core
    r = d.size(0, n - 2) if hid in ("H42", "H44", "H46") and n >= 3 else d.size(0, n)
    m = n - r
    b1, c1 = d.invertible(r), d.invertible(r)
    if hid in ("H43", "H44"):
        # B2 = U V^T, C2 = X1 Y1^T + X2 Y2^T, V^T X1 = 0, Y2^T U = 0 so B2 C2 B2 = 0
        s = d.size(1, m) if m else 0
        u, v = d.mat(m, s), d.mat(m, s)
        s1, s2 = d.size(0, m), d.size(0, m)
        x1 = d.span(nullspace(v.T), s1) if m else _zeros(0, 0)
        y2 = d.span(nullspace(u.T), s2) if m else _zeros(0, 0)
        b2 = u @ v.T
        c2 = x1 @ d.mat(m, x1.cols).T + d.mat(m, y2.cols) @ y2.T if m else _zeros(0)
    else:
        b2, c2 = d.strict_upper(m), d.upper(m)
    return r, m, Matrix.block_diag(b1, b2), Matrix.block_diag(c1, c2), b2, c2


def _d_kills_c(d, r, m, c2, a22, b2):
    """``D = [[0, D12], [0, D22]]`` with rows of the right column in left-null(C2 [A22 | B2])."""
    if not m:
        return _zeros(r + m)
    ln = _left_null(Matrix.block([[c2 @ a22, c2 @ b2]]))
    right = d.mat(r + m, ln.cols) @ ln.T
    return Matrix.block([[_zeros(r + m, r), right]])


def _d_killed_by_b(d, r, m, b2):
    """``D = [[0, 0], [D21, D22]]`` with ``B2 [D21 D22] = 0``."""
    if not m:
        return _zeros(r + m)
    bottom = d.span(nullspace(b2), r + m)
    return Matrix.block([[_zeros(r, r + m)], [bottom]])


def _blocks(d, n, hid):
    r, m, B, C, b2, c2 = _block_setup(d, n, hid)
    e2 = b2 @ c2
    if hid in ("H41", "H42"):
        # A21 = 0, A22 = X Y^T with Y^T e2 B2 = 0 and Y^T e2 X = 0
        if m:
            s = d.size(1, m)
            y = d.span(_left_null(e2 @ b2), s)
            a22 = d.span(nullspace(y.T @ e2), s) @ y.T
        else:
            a22 = _zeros(0)
        A = Matrix.block([[d.mat(r, r), d.mat(r, m)], [_zeros(m, r), a22]])
    elif hid in ("H43", "H44"):
        # A21 = 0, e2 A22 = 0
        a22 = d.span(nullspace(e2), m) if m else _zeros(0)
        A = Matrix.block([[d.mat(r, r), d.mat(r, m)], [_zeros(m, r), a22]])
    else:
        # A22 e2 = 0, columns of A21 in null([C2; A12; A22])
        a22 = (d.mat(m, m) @ _left_null(e2) @ _left_null(e2).T) if m else _zeros(0)
        a12 = d.mat(r, m)
        a21 = (d.span(nullspace(Matrix.block([[c2], [a12], [a22]])), r)
               if m else _zeros(0, r))
        A = Matrix.block([[d.mat(r, r), a12], [a21, a22]])
    if hid in ("H41", "H43"):
        D = _d_kills_c(d, r, m, c2, a22, b2)
    elif hid == "H45":
        if m:
            stack = Matrix.block([[A.submatrix(slice(0, r), slice(r, n)) @ b2],
                                  [a22 @ b2], [c2 @ b2]])
            cols = d.span(nullspace(stack), n)
            D = Matrix.block([[_zeros(r, n)], [cols]])
        else:
            D = _zeros(n)
    else:
        D = _d_killed_by_b(d, r, m, b2)
    return A, B, C, D


_BLOCK_RECIPE_TAGS = {
    "H41": "A21 = 0, A22 = X Y^T (Y^T e2 B2 = 0, Y^T e2 X = 0), D kills C[A22|B2]",
    "H42": "A21 = 0, A22 = X Y^T (Y^T e2 B2 = 0, Y^T e2 X = 0), B2 D2 = 0",
    "H43": "B2 C2 B2 = 0, A21 = 0, e2 A22 = 0, D kills C[A22|B2]",
    "H44": "B2 C2 B2 = 0, A21 = 0, e2 A22 = 0, B2 D2 = 0",
    "H45": "A22 e2 = 0, A21 in null([C2; A12; A22]), D2 in null([A12 B2; A22 B2; C2 B2])",
    "H46": "A22 e2 = 0, A21 in null([C2; A12; A22]), B2 D2 = 0",
}


def recipe_tag(hid: str) -> str:
    if hid in BLOCK_IDS:
        return _BLOCK_RECIPE_TAGS[hid]
    return _PAIR_RECIPES[hid][0]


# -- public API ---------------------------------------------------------------

def _validate(cfg: GenConfig):
    if cfg.id not in HYPOTHESIS_IDS:
        raise InfeasibleConfigurationError(f"unknown hypothesis id {cfg.id!r}")
    if not 1 <= cfg.n <= MAX_DIM:
        raise InfeasibleConfigurationError(f"dimension must lie in 1..{MAX_DIM}, got {cfg.n}")
    if cfg.pool < 1 or not cfg.denominators or min(cfg.denominators) < 1:
        raise InfeasibleConfigurationError("entry pool must contain nonzero values")
    if cfg.mode not in (EXACT, FLOAT):
        raise InfeasibleConfigurationError(f"unknown backend {cfg.mode!r}")


def generate_instance(cfg: GenConfig) -> Instance:
    """A seeded instance satisfying ``cfg.id`` exactly; same config, same instance."""
    _validate(cfg)
    rng = np.random.default_rng(cfg.seed & SEED_MASK)
    d = _Draw(cfg, rng)
    n = cfg.n
    gaussian = rng.random() < cfg.complex_share
    ident = Matrix.identity(n)
    if cfg.id in BLOCK_IDS:
        A, B, C, D = _blocks(d, n, cfg.id)
        s, si = d.unimodular(n, gaussian) if cfg.scramble else (ident, ident)
        t, ti = d.unimodular(n, gaussian) if cfg.scramble else (ident, ident)
        mats = (s @ A @ si, s @ B @ ti, t @ C @ si, t @ D @ ti)
        frames = (s, si, t, ti)
    else:
        a, b = _PAIR_RECIPES[cfg.id][1](d, n)
        s, si = d.unimodular(n, gaussian) if cfg.scramble else (ident, ident)
        mats = (s @ a @ si, s @ b @ si)
        frames = (s, si)
    if cfg.mode == FLOAT:
        mats = tuple(m.with_mode(FLOAT) for m in mats)
    return Instance(cfg.id, cfg.seed, recipe_tag(cfg.id), mats, frames)


def _unit(n, i, j):
    return Matrix.from_rows([[1 if (p, q) == (i, j) else 0 for q in range(n)]
                             for p in range(n)], shape=(n, n))


def _candidates(inst: Instance, rng, limit):
    """Single-slot perturbations, shuffled by ``rng``.

    Unit entries in the adapted and the standard basis, products of the
    instance's own matrices, and random rank-one terms.
    """
    mats = inst.mats
    n = mats[0].rows
    k = len(mats)
    ident = Matrix.identity(n)
    frames = inst.frames or (ident,) * (2 if k == 2 else 4)
    s, si = frames[0], frames[1]
    t, ti = (frames[2], frames[3]) if k == 4 else (s, si)
    # left and right frames per slot: A maps X->X, B Y->X, C X->Y, D Y->Y
    sides = [(s, si), (s, si)] if k == 2 else [(s, si), (s, ti), (t, si), (t, ti)]
    exact = [m.with_mode(EXACT) for m in mats]
    products = [ident] + exact + [x @ y for x in exact for y in exact]
    pool = []
    for slot in range(k):
        left, right = sides[slot]
        for i in range(n):
            for j in range(n):
                e = _unit(n, i, j)
                pool.append((slot, left @ e @ right))
                pool.append((slot, e))
        for p in products:
            pool.append((slot, p))
        for _ in range(4):
            u = Matrix.from_rows([[int(rng.integers(-2, 3))] for _ in range(n)], shape=(n, 1))
            v = Matrix.from_rows([[int(rng.integers(-2, 3)) for _ in range(n)]], shape=(1, n))
            pool.append((slot, left @ u @ v @ right))
    order = rng.permutation(len(pool))[:limit]
    for idx in order:
        yield pool[int(idx)]


def perturb_to_violate(instance, hid: str, which: int, seed: int = 0,
                       limit: int = 400) -> Instance:
    """Perturb one matrix so that condition ``which`` (1-based) fails and the others hold.

    ``instance`` is an :class:`Instance` or a tuple of matrices. Raises
    :class:`CannotIsolateError` when none of the seeded candidates isolates
    the condition.
    """
    if not isinstance(instance, Instance):
        instance = Instance(hid, seed, "given", tuple(instance))
    ncond = len(check_hypothesis(hid, *instance.mats).labels)
    if len(instance.mats) != arity(hid):
        raise ValueError(f"{hid} takes {arity(hid)} matrices")
    if not 1 <= which <= ncond:
        raise ValueError(f"{hid} has conditions 1..{ncond}, got {which}")
    mode = instance.mats[0].mode
    rng = np.random.default_rng(seed & SEED_MASK)
    for slot, delta in _candidates(instance, rng, limit):
        mats = list(instance.mats)
        mats[slot] = mats[slot] + delta.with_mode(mode)
        rep = check_hypothesis(hid, *mats)
        if rep.violated == (which,):
            return Instance(hid, instance.seed, f"{instance.recipe}; violate {which}",
                            tuple(mats), instance.frames)
    raise CannotIsolateError(f"could not isolate condition {which} of {hid}")
