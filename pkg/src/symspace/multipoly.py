"""Multivariate polynomials over Q(i) with canonical graded-lex term order.

Terms live in a dict keyed by exponent tuples; zero coefficients are never
stored, so equality is structural.  Also hosts the fraction-free (Bareiss)
determinant for polynomial matrices and graded p-th root extraction.
"""

from __future__ import annotations

from .errors import NotAPerfectPower, SingularMatrix
from .scalars import ONE, ZERO, GaussianRational, gr


def _grlex_key(expts):
    # Highest total degree first, then lexicographically largest exponent.
    return (-sum(expts), tuple(-e for e in expts))


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None, normalize=True):
        self.vars = tuple(vars)
        if terms is None:
            self.terms = {}
        elif normalize:
            self.terms = {e: c for e, c in terms.items() if c}
        else:
            self.terms = terms

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, vars, value):
        value = gr(value)
        if not value:
            return cls(vars, {}, normalize=False)
        return cls(vars, {(0,) * len(vars): value}, normalize=False)

    @classmethod
    def variable(cls, vars, index):
        e = [0] * len(vars)
        e[index] = 1
        return cls(vars, {tuple(e): ONE}, normalize=False)

    @classmethod
    def zero(cls, vars):
        return cls(vars, {}, normalize=False)

    # -- basic structure --------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self):
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), ZERO)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def graded_part(self, d):
        return MultiPoly(
            self.vars,
            {e: c for e, c in self.terms.items() if sum(e) == d},
            normalize=False,
        )

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, tuple(self.sorted_terms())))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError("mixed variable sets")
            return other
        return MultiPoly.constant(self.vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return MultiPoly(self.vars, out, normalize=False)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()}, normalize=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (GaussianRational, int)):
            c0 = gr(other)
            if not c0:
                return MultiPoly.zero(self.vars)
            return MultiPoly(
                self.vars, {e: c * c0 for e, c in self.terms.items()}, normalize=False
            )
        other = self._coerce(other)
        out = {}
        n = len(self.vars)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(e1[i] + e2[i] for i in range(n))
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return MultiPoly(self.vars, out, normalize=False)

    __rmul__ = __mul__

    def mul_truncated(self, other, max_degree):
        other = self._coerce(other)
        out = {}
        n = len(self.vars)
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > max_degree:
                    continue
                e = tuple(e1[i] + e2[i] for i in range(n))
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return MultiPoly(self.vars, out, normalize=False)

    def __pow__(self, n, max_degree=None):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a nonnegative integer")
        out = MultiPoly.constant(self.vars, ONE)
        base = self
        while n:
            if n & 1:
                out = out.mul_truncated(base, max_degree) if max_degree is not None else out * base
            n >>= 1
            if n:
                base = base.mul_truncated(base, max_degree) if max_degree is not None else base * base
        return out

    # -- calculus ----------------------------------------------------------

    def partial(self, index):
        out = {}
        for e, c in self.terms.items():
            k = e[index]
            if not k:
                continue
            e2 = list(e)
            e2[index] = k - 1
            out[tuple(e2)] = c * k
        return MultiPoly(self.vars, out, normalize=False)

    def directional(self, direction):
        """Derivative along a coefficient vector over the variables."""
        out = MultiPoly.zero(self.vars)
        for i, d in enumerate(direction):
            if isinstance(d, GaussianRational) and not d:
                continue
            out = out + self.partial(i) * d
        return out

    def evaluate(self, values, zero=ZERO):
        """Evaluate at ring elements; works for scalars, jets, and series."""
        acc = None
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if not k:
                    continue
                f = values[i] ** k
                term = f if term is None else term * f
            term = c if term is None else term * c
            acc = term if acc is None else acc + term
        if acc is None:
            return zero
        return acc

    def substitute(self, images):
        """Compose with polynomials (one image per variable, shared var set)."""
        target_vars = None
        for img in images:
            if isinstance(img, MultiPoly):
                target_vars = img.vars
                break
        if target_vars is None:
            raise ValueError("need at least one polynomial image")
        imgs = [
            img if isinstance(img, MultiPoly) else MultiPoly.constant(target_vars, img)
            for img in images
        ]
        out = MultiPoly.zero(target_vars)
        cache = {}

        def power(i, k):
            key = (i, k)
            p = cache.get(key)
            if p is None:
                p = imgs[i] ** k
                cache[key] = p
            return p

        for e, c in self.terms.items():
            term = MultiPoly.constant(target_vars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def rename(self, new_vars):
        if len(new_vars) != len(self.vars):
            raise ValueError("variable count mismatch")
        return MultiPoly(tuple(new_vars), dict(self.terms), normalize=False)

    # -- display ------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{self.vars[i]}^{k}" if k > 1 else self.vars[i]
                for i, k in enumerate(e)
                if k
            )
            ctxt = str(c)
            if mono:
                bits.append(f"({ctxt})*{mono}" if ("+" in ctxt or "-" in ctxt[1:]) else f"{ctxt}*{mono}")
            else:
                bits.append(ctxt)
        return " + ".join(bits)

    def __repr__(self):
        return f"MultiPoly({len(self.vars)} vars, {len(self.terms)} terms)"


def exact_div(num, den):
    """Exact polynomial quotient; raises if the division leaves a remainder."""
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if num.is_zero():
        return MultiPoly.zero(num.vars)
    n = len(num.vars)
    lead_e, lead_c = min(den.terms.items(), key=lambda kv: _grlex_key(kv[0]))
    rem = dict(num.terms)
    out = {}
    while rem:
        e, c = min(rem.items(), key=lambda kv: _grlex_key(kv[0]))
        q = tuple(e[i] - lead_e[i] for i in range(n))
        if any(k < 0 for k in q):
            raise NotAPerfectPower("polynomial division is not exact")
        qc = c / lead_c
        out[q] = qc
        for e2, c2 in den.terms.items():
            key = tuple(q[i] + e2[i] for i in range(n))
            s = rem.get(key, ZERO) - qc * c2
            if s:
                rem[key] = s
            elif key in rem:
                del rem[key]
    return MultiPoly(num.vars, out)


def poly_det(rows):
    """Fraction-free Bareiss determinant of a square MultiPoly matrix."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    vars = rows[0][0].vars
    m = [[rows[i][j] for j in range(n)] for i in range(n)]
    sign = 1
    prev = MultiPoly.constant(vars, ONE)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(vars)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = exact_div(num, prev)
            m[i][k] = MultiPoly.zero(vars)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def poly_nth_root(P, p):
    """Graded Newton extraction of R with R^p = P and R(0) = 1."""
    if not isinstance(p, int) or p <= 0:
        raise ValueError("exponent must be a positive integer")
    if P.constant_term() != ONE:
        raise NotAPerfectPower("constant term must be 1")
    if p == 1:
        return P
    deg = P.total_degree()
    if deg % p:
        raise NotAPerfectPower(f"degree {deg} is not a multiple of {p}")
    rdeg = deg // p
    R = MultiPoly.constant(P.vars, ONE)
    pc = GaussianRational(p)
    for d in range(1, rdeg + 1):
        approx = R.__pow__(p, max_degree=d)
        R_d = (P.graded_part(d) - approx.graded_part(d)) * pc.inverse()
        R = R + R_d
    if R.__pow__(p) != P:
        raise NotAPerfectPower(f"input is not an exact {p}-th power")
    return R
