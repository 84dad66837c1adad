"""Exact scalars over the Gaussian rationals Q(i).

Values are pairs of gmpy2 rationals, which stay normalized (lowest terms,
positive denominator) after every operation.  Strings use the compact
"a/b+c/di" form, e.g. "3/2-1/4i", "0", "2i".
"""

from __future__ import annotations

import re

from gmpy2 import mpq

from .errors import DivisionByZero

_MPQ = type(mpq())
_Q0 = mpq(0)
_Q1 = mpq(1)


def _new(re_, im_):
    g = GaussianRational.__new__(GaussianRational)
    g.re = re_
    g.im = im_
    return g


class GaussianRational:
    """A number a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, _MPQ) else mpq(re)
        self.im = im if isinstance(im, _MPQ) else mpq(im)

    # -- ring structure -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return _new(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, _MPQ)):
            return _new(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return _new(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, _MPQ)):
            return _new(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, _MPQ)):
            return _new(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return _new(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, _MPQ)):
            return _new(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return _new(-self.re, -self.im)

    def __pos__(self):
        return self

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise DivisionByZero("inverse of 0 in Q(i)")
        return _new(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        if isinstance(other, (int, _MPQ)):
            if other == 0:
                raise DivisionByZero("division by 0")
            return _new(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, _MPQ)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- structure ----------------------------------------------------------

    def conj(self):
        return _new(self.re, -self.im)

    @property
    def is_unit(self):
        return bool(self.re) or bool(self.im)

    def is_real(self):
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, _MPQ)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self):
        return format_gr(self)

    def __repr__(self):
        return f"gr('{format_gr(self)}')"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
HALF = GaussianRational(mpq(1, 2))


def gr(re=0, im=0):
    """Build a GaussianRational from ints, rationals, strings, or pass-through."""
    if isinstance(re, GaussianRational):
        return re
    if isinstance(re, str):
        return parse_gr(re)
    return GaussianRational(re, im)


def grq(num, den=1):
    """Rational a = num/den as a GaussianRational."""
    return GaussianRational(mpq(num, den))


def format_gr(value):
    """Render in canonical "a/b+c/di" form."""
    re_, im_ = value.re, value.im
    if im_ == 0:
        return str(re_)
    if im_ == 1:
        imtxt = "i"
    elif im_ == -1:
        imtxt = "-i"
    else:
        imtxt = f"{im_}i"
    if re_ == 0:
        return imtxt
    if im_ > 0:
        return f"{re_}+{imtxt}"
    return f"{re_}{imtxt}"


_RAT = r"[+-]?\d+(?:/\d+)?"
_FULL = re.compile(rf"^(?P<re>{_RAT})?(?P<im>(?:{_RAT}|[+-])?i)?$")


def parse_gr(text):
    """Parse the canonical string form back into a GaussianRational."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty Gaussian rational string")
    m = _FULL.match(s)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"bad Gaussian rational: {text!r}")
    re_ = mpq(m.group("re")) if m.group("re") else _Q0
    imtxt = m.group("im")
    if imtxt is None:
        im_ = _Q0
    else:
        body = imtxt[:-1]
        if body in ("", "+"):
            im_ = _Q1
        elif body == "-":
            im_ = -_Q1
        else:
            im_ = mpq(body)
    return GaussianRational(re_, im_)
