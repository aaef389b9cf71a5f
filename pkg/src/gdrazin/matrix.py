"""Dense complex matrices over the exact or floating backend.

Exact matrices are stored as a common positive denominator together with
integer numerator arrays for the real and imaginary parts (numpy object
arrays of Python ints). The triple is kept in canonical form: the gcd of the
denominator and every numerator is 1, and an all-zero imaginary part is
dropped. Two exact matrices are therefore equal exactly when their stored
triples are equal.

Floating matrices wrap a ``complex128`` array.

Matrices are immutable after construction and every operation returns a new
one. Empty shapes (0 rows or 0 columns) are supported throughout.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (BackendMismatchError, DimensionMismatchError,
                     FloatingOverflowError, ParseError, SingularMatrixError)
from .scalar import (DEFAULT_POLICY, EXACT, FLOAT, Scalar, TolerancePolicy,
                     format_scalar, parse_scalar)

# int64 matmul is used when |result entries| provably stay below this bound
_INT64_SAFE = 2 ** 62


def _obj_zeros(shape):
    return np.zeros(shape, dtype=object)


def _absmax(arr) -> int:
    if arr.size == 0:
        return 0
    return max(abs(int(arr.max())), abs(int(arr.min())))


def _int_matmul(x, y):
    k = x.shape[1]
    if x.shape[0] == 0 or y.shape[1] == 0 or k == 0:
        return _obj_zeros((x.shape[0], y.shape[1]))
    mx, my = _absmax(x), _absmax(y)
    if mx == 0 or my == 0:
        return _obj_zeros((x.shape[0], y.shape[1]))
    if mx * my * k < _INT64_SAFE:
        return (x.astype(np.int64) @ y.astype(np.int64)).astype(object)
    return x @ y


class Matrix:
    __slots__ = ("rows", "cols", "mode", "_re", "_im", "_den", "_z")

    # -- construction -------------------------------------------------------

    @classmethod
    def _exact(cls, re_, im_, den) -> "Matrix":
        self = object.__new__(cls)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            re_, den = -re_, -den
            im_ = None if im_ is None else -im_
        if im_ is not None and not im_.any():
            im_ = None
        vals = [den]
        vals.extend(re_.flat)
        if im_ is not None:
            vals.extend(im_.flat)
        g = math.gcd(*vals)
        if g > 1:
            re_ = re_ // g
            im_ = None if im_ is None else im_ // g
            den //= g
        self.rows, self.cols = re_.shape
        self.mode = EXACT
        self._re, self._im, self._den, self._z = re_, im_, int(den), None
        return self

    @classmethod
    def _float(cls, z) -> "Matrix":
        z = np.asarray(z, dtype=np.complex128)
        if z.size and not np.isfinite(z).all():
            raise FloatingOverflowError("floating matrix entry is not finite")
        self = object.__new__(cls)
        self.rows, self.cols = z.shape
        self.mode = FLOAT
        self._re = self._im = self._den = None
        self._z = z
        return self

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], mode: str = EXACT,
                  shape: tuple[int, int] | None = None) -> "Matrix":
        """Build from nested sequences of ints, Fractions, complex, str or Scalar."""
        rows = [list(r) for r in rows]
        if shape is None:
            m = len(rows)
            n = len(rows[0]) if m else 0
        else:
            m, n = shape
        if len(rows) != m or any(len(r) != n for r in rows):
            raise DimensionMismatchError("ragged or mis-shaped row data")
        entries = [[Scalar.coerce(v, mode) for v in r] for r in rows]
        return cls._from_scalars(entries, m, n, mode)

    @classmethod
    def _from_scalars(cls, entries, m, n, mode) -> "Matrix":
        if mode == FLOAT:
            z = np.array([[complex(v) for v in r] for r in entries],
                         dtype=np.complex128).reshape(m, n)
            return cls._float(z)
        den = 1
        for r in entries:
            for v in r:
                den = math.lcm(den, v.re.denominator, v.im.denominator)
        re_, im_ = _obj_zeros((m, n)), _obj_zeros((m, n))
        for i, r in enumerate(entries):
            for j, v in enumerate(r):
                re_[i, j] = v.re.numerator * (den // v.re.denominator)
                im_[i, j] = v.im.numerator * (den // v.im.denominator)
        return cls._exact(re_, im_, den)

    @classmethod
    def from_field_rows(cls, rows, m, n, mode) -> "Matrix":
        """Build from rows of Fractions, Scalars (exact) or Python complex (float)."""
        if mode == FLOAT:
            return cls._float(np.array(rows, dtype=np.complex128).reshape(m, n))
        return cls._from_scalars([[v if isinstance(v, Scalar) else Scalar(v)
                                   for v in r] for r in rows], m, n, EXACT)

    @classmethod
    def from_numpy(cls, arr, mode: str = FLOAT) -> "Matrix":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise DimensionMismatchError("expected a 2-d array")
        if mode == FLOAT:
            return cls._float(arr.astype(np.complex128))
        return cls.from_rows(arr.tolist(), EXACT, shape=arr.shape)

    @classmethod
    def zeros(cls, m: int, n: int | None = None, mode: str = EXACT) -> "Matrix":
        n = m if n is None else n
        if mode == FLOAT:
            return cls._float(np.zeros((m, n), dtype=np.complex128))
        return cls._exact(_obj_zeros((m, n)), None, 1)

    @classmethod
    def identity(cls, n: int, mode: str = EXACT) -> "Matrix":
        if mode == FLOAT:
            return cls._float(np.eye(n, dtype=np.complex128))
        re_ = _obj_zeros((n, n))
        for i in range(n):
            re_[i, i] = 1
        return cls._exact(re_, None, 1)

    @classmethod
    def diag(cls, values, mode: str = EXACT) -> "Matrix":
        values = list(values)
        n = len(values)
        rows = [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls.from_rows(rows, mode, shape=(n, n))

    @classmethod
    def block(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix from a 2-d grid of conforming blocks."""
        grid = [list(r) for r in grid]
        modes = {b.mode for r in grid for b in r}
        if len(modes) != 1:
            raise BackendMismatchError("blocks live in different backends")
        mode = modes.pop()
        heights = [r[0].rows for r in grid]
        widths = [b.cols for b in grid[0]]
        for r, h in zip(grid, heights):
            if len(r) != len(widths) or any(b.rows != h for b in r):
                raise DimensionMismatchError("block rows do not conform")
            if any(b.cols != w for b, w in zip(r, widths)):
                raise DimensionMismatchError("block columns do not conform")
        if mode == FLOAT:
            z = np.block([[b._z for b in r] for r in grid]) if grid else np.zeros((0, 0))
            return cls._float(np.asarray(z, dtype=np.complex128).reshape(sum(heights), sum(widths)))
        den = 1
        for r in grid:
            for b in r:
                den = math.lcm(den, b._den)
        m, n = sum(heights), sum(widths)
        re_, im_ = _obj_zeros((m, n)), _obj_zeros((m, n))
        i0 = 0
        for r, h in zip(grid, heights):
            j0 = 0
            for b, w in zip(r, widths):
                s = den // b._den
                re_[i0:i0 + h, j0:j0 + w] = b._re * s
                if b._im is not None:
                    im_[i0:i0 + h, j0:j0 + w] = b._im * s
                j0 += w
            i0 += h
        return cls._exact(re_, im_, den)

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        mode = blocks[0].mode
        grid = [[b if i == j else cls.zeros(b.rows, c.cols, mode)
                 for j, c in enumerate(blocks)] for i, b in enumerate(blocks)]
        return cls.block(grid)

    # -- accessors ----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_real(self) -> bool:
        if self.mode == EXACT:
            return self._im is None
        return not np.any(self._z.imag)

    def __getitem__(self, key):
        i, j = key
        if isinstance(i, slice) or isinstance(j, slice):
            return self.submatrix(i, j)
        if self.mode == FLOAT:
            z = self._z[i, j]
            return Scalar(z.real, z.imag, FLOAT)
        im_ = 0 if self._im is None else self._im[i, j]
        return Scalar(Fraction(self._re[i, j], self._den), Fraction(im_, self._den))

    def submatrix(self, rows: slice, cols: slice) -> "Matrix":
        if self.mode == FLOAT:
            return Matrix._float(self._z[rows, cols].copy())
        im_ = None if self._im is None else self._im[rows, cols].copy()
        return Matrix._exact(self._re[rows, cols].copy(), im_, self._den)

    def entries(self) -> list[list[Scalar]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def field_rows(self) -> list[list]:
        """Entries as plain field elements for elimination.

        Fractions for real exact matrices, Scalars for complex exact ones and
        Python complex numbers for floating ones.
        """
        if self.mode == FLOAT:
            return [[complex(v) for v in row] for row in self._z]
        if self._im is None:
            d = self._den
            return [[Fraction(int(v), d) for v in row] for row in self._re]
        return self.entries()

    def to_numpy(self) -> np.ndarray:
        if self.mode == FLOAT:
            return self._z.copy()
        out = np.empty(self.shape, dtype=np.complex128)
        for i in range(self.rows):
            for j in range(self.cols):
                out[i, j] = complex(self[i, j])
        return out

    def with_mode(self, mode: str) -> "Matrix":
        if mode == self.mode:
            return self
        if mode == FLOAT:
            return Matrix._float(self.to_numpy())
        rows = [[Scalar(Fraction(float(z.real)), Fraction(float(z.imag))) for z in row]
                for row in self._z]
        return Matrix._from_scalars(rows, self.rows, self.cols, EXACT)

    # -- arithmetic ---------------------------------------------------------

    def _check_mode(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other.mode != self.mode:
            raise BackendMismatchError("matrices live in different backends")

    def _addsub(self, other: "Matrix", sign: int) -> "Matrix":
        self._check_mode(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot add {self.shape} and {other.shape}")
        if self.mode == FLOAT:
            return Matrix._float(self._z + sign * other._z)
        den = math.lcm(self._den, other._den)
        s1, s2 = den // self._den, sign * (den // other._den)
        re_ = self._re * s1 + other._re * s2
        if self._im is None and other._im is None:
            im_ = None
        else:
            im_ = _obj_zeros(self.shape)
            if self._im is not None:
                im_ = im_ + self._im * s1
            if other._im is not None:
                im_ = im_ + other._im * s2
        return Matrix._exact(re_, im_, den)

    def __add__(self, other):
        return self._addsub(other, 1)

    def __sub__(self, other):
        return self._addsub(other, -1)

    def __neg__(self):
        if self.mode == FLOAT:
            return Matrix._float(-self._z)
        return Matrix._exact(-self._re, None if self._im is None else -self._im, self._den)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_mode(other)
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        if self.mode == FLOAT:
            return Matrix._float(self._z @ other._z)
        re_ = _int_matmul(self._re, other._re)
        im_ = None
        if self._im is not None:
            re_ = re_ - (_int_matmul(self._im, other._im) if other._im is not None else 0)
            im_ = _int_matmul(self._im, other._re)
        if other._im is not None:
            t = _int_matmul(self._re, other._im)
            im_ = t if im_ is None else im_ + t
        return Matrix._exact(re_, im_, self._den * other._den)

    def scale(self, c) -> "Matrix":
        c = Scalar.coerce(c, self.mode)
        if self.mode == FLOAT:
            return Matrix._float(self._z * complex(c))
        cd = math.lcm(c.re.denominator, c.im.denominator)
        cr, ci = int(c.re * cd), int(c.im * cd)
        re_ = self._re * cr
        im_ = self._re * ci
        if self._im is not None:
            re_ = re_ - self._im * ci
            im_ = im_ + self._im * cr
        return Matrix._exact(re_, im_, self._den * cd)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise DimensionMismatchError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative powers are not supported; use inverse()")
        result = Matrix.identity(self.rows, self.mode)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    @property
    def T(self) -> "Matrix":
        if self.mode == FLOAT:
            return Matrix._float(self._z.T.copy())
        return Matrix._exact(self._re.T.copy(), None if self._im is None else self._im.T.copy(),
                             self._den)

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.mode != other.mode or self.shape != other.shape:
            return False
        if self.mode == FLOAT:
            return bool(np.array_equal(self._z, other._z))
        if self._den != other._den or (self._im is None) != (other._im is None):
            return False
        if not np.array_equal(self._re, other._re):
            return False
        return self._im is None or bool(np.array_equal(self._im, other._im))

    __hash__ = None

    def max_abs(self) -> float:
        """Largest entry modulus, as a float (the residual norm used everywhere)."""
        if self.size == 0:
            return 0.0
        if self.mode == FLOAT:
            return float(np.abs(self._z).max())
        try:
            if self._im is None:
                return float(Fraction(_absmax(self._re), self._den))
            best = 0
            for r, i in zip(self._re.flat, self._im.flat):
                best = max(best, r * r + i * i)
            return math.sqrt(float(Fraction(best, self._den * self._den)))
        except OverflowError:
            # exact entries beyond the float range, e.g. forced runs off-hypothesis
            return math.inf

    @property
    def size(self) -> int:
        return self.rows * self.cols

    def is_zero(self, policy: TolerancePolicy = DEFAULT_POLICY) -> bool:
        if self.mode == EXACT:
            return not self._re.any() and self._im is None
        return self.size == 0 or float(np.abs(self._z).max()) <= policy.zero

    def close_to(self, other: "Matrix", policy: TolerancePolicy = DEFAULT_POLICY) -> bool:
        """Exact equality, or entrywise agreement within the policy for floats."""
        self._check_mode(other)
        if self.shape != other.shape:
            return False
        if self.mode == EXACT:
            return self == other
        diff = np.abs(self._z - other._z)
        scale = np.maximum(np.abs(self._z), np.abs(other._z))
        return bool(np.all((diff <= policy.zero) | (diff <= policy.rel * scale)))

    def __repr__(self):
        body = "; ".join(", ".join(format_scalar(v) for v in row) for row in self.entries())
        return f"Matrix({self.rows}x{self.cols} {self.mode}: [{body}])"

    # -- json ---------------------------------------------------------------

    def to_json(self) -> dict:
        if self.mode == FLOAT:
            data = [[float(z.real), float(z.imag)] for z in self._z.flat]
        else:
            data = [format_scalar(v) for row in self.entries() for v in row]
        return {"rows": self.rows, "cols": self.cols, "mode": self.mode, "data": data}

    @classmethod
    def from_json(cls, obj) -> "Matrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            m, n, mode, data = int(obj["rows"]), int(obj["cols"]), obj["mode"], obj["data"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed matrix object: {exc}") from exc
        if mode not in (EXACT, FLOAT) or m < 0 or n < 0 or len(data) != m * n:
            raise ParseError("matrix object has inconsistent mode, shape or data length")
        if mode == EXACT:
            if not all(isinstance(v, (str, int)) for v in data):
                raise ParseError("exact data must be scalar strings")
            vals = [parse_scalar(str(v)) for v in data]
        else:
            try:
                vals = [Scalar(float(re_), float(im_), FLOAT) for re_, im_ in data]
            except (TypeError, ValueError) as exc:
                raise ParseError("float data must be [re, im] pairs") from exc
        rows = [vals[i * n:(i + 1) * n] for i in range(m)]
        return cls._from_scalars(rows, m, n, mode)


def mat_arith(x: Matrix, y: Matrix, op: str) -> Matrix:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x @ y
    raise ValueError(f"unknown matrix op {op!r}")


@dataclass(frozen=True)
class BlockSpec:
    row_sizes: tuple[int, ...]
    col_sizes: tuple[int, ...]

    def __post_init__(self):
        if any(s < 0 for s in self.row_sizes + self.col_sizes):
            raise ValueError("negative partition size")

    @classmethod
    def square(cls, *sizes: int) -> "BlockSpec":
        return cls(tuple(sizes), tuple(sizes))

    def split(self, x: Matrix) -> list[list[Matrix]]:
        if sum(self.row_sizes) != x.rows or sum(self.col_sizes) != x.cols:
            raise DimensionMismatchError("partition does not match matrix shape")
        out, i0 = [], 0
        for h in self.row_sizes:
            row, j0 = [], 0
            for w in self.col_sizes:
                row.append(x.submatrix(slice(i0, i0 + h), slice(j0, j0 + w)))
                j0 += w
            out.append(row)
            i0 += h
        return out

    def join(self, grid: Sequence[Sequence[Matrix]]) -> Matrix:
        x = Matrix.block(grid)
        if [r[0].rows for r in grid] != list(self.row_sizes) or \
                [b.cols for b in grid[0]] != list(self.col_sizes):
            raise DimensionMismatchError("blocks do not match the partition")
        return x


# -- elimination --------------------------------------------------------------

def _is_zero_field(v, tol: float) -> bool:
    if isinstance(v, complex):
        return abs(v) <= tol
    if isinstance(v, Scalar):
        return v.re == 0 and v.im == 0
    return v == 0


def rref(x: Matrix, policy: TolerancePolicy = DEFAULT_POLICY, scale: float = 0.0):
    """Reduced row echelon form and pivot columns of ``x``.

    Exact matrices pick the first nonzero pivot. Floating matrices use partial
    pivoting and treat a pivot as zero when it is at most
    ``policy.zero * max(max|original column|, scale)``; ``scale`` lets a caller
    judge a derived matrix against the size of the matrix it came from.
    """
    a = x.field_rows()
    m, n = x.rows, x.cols
    floating = x.mode == FLOAT
    colmax = [max((abs(a[i][j]) for i in range(m)), default=0.0) for j in range(n)] \
        if floating else None
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        if floating:
            tol = policy.zero * max(colmax[c], scale)
            p = max(range(r, m), key=lambda i: abs(a[i][c]))
            if colmax[c] == 0 or abs(a[p][c]) <= tol:
                for i in range(r, m):
                    a[i][c] = 0j
                continue
        else:
            p = next((i for i in range(r, m) if not _is_zero_field(a[i][c], 0.0)), None)
            if p is None:
                continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [v / piv for v in a[r]]
        for i in range(m):
            if i != r:
                f = a[i][c]
                if not _is_zero_field(f, 0.0):
                    a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(x: Matrix, policy: TolerancePolicy = DEFAULT_POLICY) -> int:
    return len(rref(x, policy)[1])


def rank_factorize(x: Matrix, policy: TolerancePolicy = DEFAULT_POLICY, scale: float = 0.0):
    """Full-rank factorization ``x = B @ C``.

    ``B`` holds the pivot columns of ``x`` and ``C`` the nonzero rows of its
    reduced echelon form, so both have rank ``r = rank(x)``. A zero matrix
    gives empty factors of shapes ``(m, 0)`` and ``(0, n)``.
    """
    red, pivots = rref(x, policy, scale)
    r = len(pivots)
    if x.mode == FLOAT:
        cols = x._z[:, pivots] if r else np.zeros((x.rows, 0), dtype=np.complex128)
        b = Matrix._float(cols)
    elif r:
        b = x.submatrix(slice(None), pivots)
    else:
        b = Matrix.zeros(x.rows, 0)
    c = Matrix.from_field_rows(red[:r], r, x.cols, x.mode)
    return b, c, r


def inverse(x: Matrix, policy: TolerancePolicy = DEFAULT_POLICY) -> Matrix:
    if not x.is_square:
        raise DimensionMismatchError("inverse of a non-square matrix")
    n = x.rows
    aug = Matrix.block([[x, Matrix.identity(n, x.mode)]])
    red, pivots = rref(aug, policy)
    if pivots[:n] != list(range(n)) or len([p for p in pivots if p < n]) < n:
        raise SingularMatrixError("matrix is singular")
    return Matrix.from_field_rows([row[n:] for row in red], n, n, x.mode)


def nullspace(x: Matrix, policy: TolerancePolicy = DEFAULT_POLICY) -> Matrix:
    """Columns spanning the right null space of ``x`` (shape ``cols x k``)."""
    red, pivots = rref(x, policy)
    n = x.cols
    free = [j for j in range(n) if j not in pivots]
    zero = 0j if x.mode == FLOAT else (Scalar(0) if not x.is_real else Fraction(0))
    one = 1 + 0j if x.mode == FLOAT else (Scalar(1) if not x.is_real else Fraction(1))
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    k = len(basis)
    cols = [[basis[j][i] for j in range(k)] for i in range(n)]
    return Matrix.from_field_rows(cols, n, k, x.mode)
