"""Complex scalars with an exact (Gaussian rational) and a floating backend.

The exact backend stores real and imaginary parts as :class:`fractions.Fraction`,
which are always held in lowest terms with the sign on the numerator, so
equality is structural. The floating backend stores two finite doubles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import (BackendMismatchError, DivisionByZeroError,
                     FloatingOverflowError, ParseError)

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)


@dataclass(frozen=True)
class TolerancePolicy:
    """Zero and comparison thresholds used by the floating backend.

    The exact backend never consults these.
    """

    zero: float = 1e-10
    rel: float = 1e-8

    def __post_init__(self):
        if not (self.zero > 0 and self.rel > 0):
            raise ValueError("tolerance thresholds must be strictly positive")


DEFAULT_POLICY = TolerancePolicy()


def _check_finite(re_, im_):
    if not (math.isfinite(re_) and math.isfinite(im_)):
        raise FloatingOverflowError("floating result is not finite")


class Scalar:
    __slots__ = ("mode", "re", "im")

    def __init__(self, re_=0, im_=0, mode=EXACT):
        if mode == EXACT:
            re_, im_ = Fraction(re_), Fraction(im_)
        elif mode == FLOAT:
            re_, im_ = float(re_), float(im_)
            _check_finite(re_, im_)
        else:
            raise ValueError(f"unknown backend {mode!r}")
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "re", re_)
        object.__setattr__(self, "im", im_)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def coerce(cls, value, mode=EXACT):
        """Build a scalar from an int, Fraction, float, complex, str or Scalar."""
        if isinstance(value, Scalar):
            if value.mode == mode:
                return value
            if mode == FLOAT:
                return cls(float(value.re), float(value.im), FLOAT)
            return cls(Fraction(value.re), Fraction(value.im), EXACT)
        if isinstance(value, str):
            return parse_scalar(value, mode)
        if isinstance(value, complex):
            if mode == EXACT:
                return cls(Fraction(value.real), Fraction(value.imag), EXACT)
            return cls(value.real, value.imag, FLOAT)
        if isinstance(value, (Rational, float)):
            return cls(value, 0, mode)
        raise TypeError(f"cannot build a scalar from {type(value).__name__}")

    # -- arithmetic -------------------------------------------------------

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.mode != self.mode:
                raise BackendMismatchError("scalars live in different backends")
            return other
        return Scalar.coerce(other, self.mode)

    def _make(self, re_, im_):
        return Scalar(re_, im_, self.mode)

    def __add__(self, other):
        o = self._other(other)
        return self._make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return self._make(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        return self._make(self.re * o.re - self.im * o.im,
                          self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o.is_zero():
            raise DivisionByZeroError("division by zero scalar")
        den = o.re * o.re + o.im * o.im
        return self._make((self.re * o.re + self.im * o.im) / den,
                          (self.im * o.re - self.re * o.im) / den)

    def __rtruediv__(self, other):
        return self._other(other) / self

    def __neg__(self):
        return self._make(-self.re, -self.im)

    def conjugate(self):
        return self._make(self.re, -self.im)

    def __abs__(self):
        return math.hypot(float(self.re), float(self.im))

    def is_zero(self, policy: TolerancePolicy = DEFAULT_POLICY) -> bool:
        if self.mode == EXACT:
            return self.re == 0 and self.im == 0
        return abs(self) <= policy.zero

    def close_to(self, other, policy: TolerancePolicy = DEFAULT_POLICY) -> bool:
        o = self._other(other)
        if self.mode == EXACT:
            return self == o
        diff = abs(self - o)
        return diff <= policy.zero or diff <= policy.rel * max(abs(self), abs(o))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.mode == other.mode and self.re == other.re and self.im == other.im
        try:
            o = Scalar.coerce(other, self.mode)
        except (TypeError, ParseError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.mode, self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r}, mode={self.mode!r})"

    def __str__(self):
        return format_scalar(self)


def scalar_arith(x: Scalar, y: Scalar, op: str) -> Scalar:
    """Apply ``op`` (one of add, sub, mul, div) to two same-backend scalars."""
    if x.mode != y.mode:
        raise BackendMismatchError("scalars live in different backends")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown scalar op {op!r}")


# -- text form -------------------------------------------------------------

def parse_scalar(text: str, mode: str = EXACT) -> Scalar:
    """Parse ``p/q+r/si`` style text; either part may be omitted."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty scalar")
    re_txt, im_txt = s, None
    if s.endswith("i"):
        body = s[:-1]
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut > 0:
            re_txt, im_txt = body[:cut], body[cut:]
        else:
            re_txt, im_txt = "", body
    try:
        re_ = Fraction(re_txt) if re_txt else Fraction(0)
        if im_txt is None:
            im_ = Fraction(0)
        elif im_txt in ("", "+"):
            im_ = Fraction(1)
        elif im_txt == "-":
            im_ = Fraction(-1)
        else:
            im_ = Fraction(im_txt)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad scalar {text!r}") from exc
    return Scalar(re_, im_, mode)


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x: Scalar) -> str:
    if x.mode == FLOAT:
        return repr(complex(x.re, x.im))
    if x.im == 0:
        return _frac_text(x.re)
    im_txt = "" if abs(x.im) == 1 else _frac_text(abs(x.im))
    sign = "-" if x.im < 0 else "+"
    if x.re == 0:
        return ("-" if x.im < 0 else "") + im_txt + "i"
    return _frac_text(x.re) + sign + im_txt + "i"
