"""First-order jets: dual numbers a + b*eps with eps^2 = 0.

Components may themselves be jets, so towers of jets give exact higher
directional derivatives.  Plain scalars (GaussianRational, int) mix in as
constants.  Two jets combined by a binary operation are assumed to sit at
the same tower level; evaluation code lifts all inputs uniformly.
"""

from __future__ import annotations

from gmpy2 import mpq

from .errors import DivisionByZero
from .scalars import GaussianRational

_SCALARS = (GaussianRational, int, type(mpq()))


class Jet:
    __slots__ = ("value", "deriv")

    def __init__(self, value, deriv):
        self.value = value
        self.deriv = deriv

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.value + other.value, self.deriv + other.deriv)
        if isinstance(other, _SCALARS):
            return Jet(self.value + other, self.deriv)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet):
            return Jet(self.value - other.value, self.deriv - other.deriv)
        if isinstance(other, _SCALARS):
            return Jet(self.value - other, self.deriv)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            return Jet(
                self.value * other.value,
                self.value * other.deriv + self.deriv * other.value,
            )
        if isinstance(other, _SCALARS):
            return Jet(self.value * other, self.deriv * other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return Jet(-self.value, -self.deriv)

    def inverse(self):
        if not _is_unit(self.value):
            raise DivisionByZero("jet with non-invertible value component")
        v = _invert(self.value)
        return Jet(v, -(v * self.deriv * v))

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.inverse()
        if isinstance(other, _SCALARS):
            if not other:
                raise DivisionByZero("division by 0")
            inv = GaussianRational(1) / other if not isinstance(other, GaussianRational) else other.inverse()
            return Jet(self.value * inv, self.deriv * inv)
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = None
        base = self
        while n:
            if n & 1:
                out = base if out is None else out * base
            n >>= 1
            if n:
                base = base * base
        if out is None:
            return Jet(self.value * 0 + 1, self.deriv * 0)
        return out

    @property
    def is_unit(self):
        return _is_unit(self.value)

    def __eq__(self, other):
        if isinstance(other, Jet):
            return self.value == other.value and self.deriv == other.deriv
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.deriv))

    def __repr__(self):
        return f"Jet({self.value!r}, {self.deriv!r})"


def _is_unit(x):
    if isinstance(x, Jet):
        return _is_unit(x.value)
    return bool(x)


def _invert(x):
    if isinstance(x, Jet):
        return x.inverse()
    if isinstance(x, GaussianRational):
        return x.inverse()
    return 1 / x


def lift_jet(x, depth=1):
    """Embed a scalar (or jet) as a constant jet of the given extra depth."""
    out = x
    for _ in range(depth):
        out = Jet(out, _zero_like(out))
    return out


def _zero_like(x):
    if isinstance(x, Jet):
        return Jet(_zero_like(x.value), _zero_like(x.deriv))
    return x * 0
