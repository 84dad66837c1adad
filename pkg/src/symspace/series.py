"""Truncated multivariate power series over Q(i).

A TruncatedSeries is a polynomial in a fixed number of generators with all
terms of total degree > cap discarded.  It is the evaluation ring behind
higher-order exact derivatives: plugging base_point + generator into a
rational function yields its full Taylor jet in one pass.
"""

from __future__ import annotations

from gmpy2 import mpq

from .errors import DivisionByZero
from .scalars import ONE, ZERO, GaussianRational, gr

_SCALARS = (GaussianRational, int, type(mpq()))


class TruncatedSeries:
    __slots__ = ("ngens", "cap", "terms")

    def __init__(self, ngens, cap, terms=None, normalize=True):
        self.ngens = ngens
        self.cap = cap
        if terms is None:
            self.terms = {}
        elif normalize:
            self.terms = {e: c for e, c in terms.items() if c and sum(e) <= cap}
        else:
            self.terms = terms

    @classmethod
    def const(cls, ngens, cap, value):
        value = gr(value)
        if not value:
            return cls(ngens, cap, {}, normalize=False)
        return cls(ngens, cap, {(0,) * ngens: value}, normalize=False)

    @classmethod
    def var(cls, ngens, cap, index, base=ZERO):
        e = [0] * ngens
        e[index] = 1
        terms = {tuple(e): ONE}
        base = gr(base)
        if base:
            terms[(0,) * ngens] = base
        return cls(ngens, cap, terms, normalize=False)

    # -- ring ops ------------------------------------------------------------

    def _wrap(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.const(self.ngens, self.cap, other)

    def __add__(self, other):
        if isinstance(other, _SCALARS):
            other = self._wrap(other)
        elif not isinstance(other, TruncatedSeries):
            return NotImplemented
        cap = min(self.cap, other.cap)
        out = {e: c for e, c in self.terms.items() if sum(e) <= cap}
        for e, c in other.terms.items():
            if sum(e) > cap:
                continue
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return TruncatedSeries(self.ngens, cap, out, normalize=False)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(
            self.ngens, self.cap, {e: -c for e, c in self.terms.items()}, normalize=False
        )

    def __sub__(self, other):
        if isinstance(other, _SCALARS):
            other = self._wrap(other)
        elif not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            c0 = gr(other)
            if not c0:
                return TruncatedSeries(self.ngens, self.cap, {}, normalize=False)
            return TruncatedSeries(
                self.ngens,
                self.cap,
                {e: c * c0 for e, c in self.terms.items()},
                normalize=False,
            )
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        cap = min(self.cap, other.cap)
        out = {}
        n = self.ngens
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            if d1 > cap:
                continue
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > cap:
                    continue
                e = tuple(e1[i] + e2[i] for i in range(n))
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return TruncatedSeries(self.ngens, cap, out, normalize=False)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = TruncatedSeries.const(self.ngens, self.cap, ONE)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def inverse(self):
        c0 = self.constant()
        if not c0:
            raise DivisionByZero("series with zero constant term")
        inv0 = c0.inverse()
        nil = self * inv0 - ONE
        out = TruncatedSeries.const(self.ngens, self.cap, ONE)
        power = TruncatedSeries.const(self.ngens, self.cap, ONE)
        for _ in range(self.cap):
            power = power * nil
            if not power.terms:
                break
            out = out + (power if _ % 2 == 1 else -power)
        return out * inv0

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            return self * gr(other).inverse()
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    # -- structure -------------------------------------------------------

    @property
    def is_unit(self):
        return bool(self.constant())

    def constant(self):
        return self.terms.get((0,) * self.ngens, ZERO)

    def coeff(self, expts):
        return self.terms.get(tuple(expts), ZERO)

    def partial(self, index):
        out = {}
        for e, c in self.terms.items():
            k = e[index]
            if not k:
                continue
            e2 = list(e)
            e2[index] = k - 1
            out[tuple(e2)] = c * k
        return TruncatedSeries(self.ngens, self.cap - 1, out, normalize=False)

    def truncated(self, cap):
        if cap >= self.cap:
            return TruncatedSeries(self.ngens, cap, dict(self.terms), normalize=False)
        return TruncatedSeries(
            self.ngens,
            cap,
            {e: c for e, c in self.terms.items() if sum(e) <= cap},
            normalize=False,
        )

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return (
                self.ngens == other.ngens
                and self.cap == other.cap
                and self.terms == other.terms
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.ngens, self.cap, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"TruncatedSeries({self.ngens} gens, cap {self.cap}, {len(self.terms)} terms)"
