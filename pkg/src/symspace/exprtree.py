"""Rational expression trees over named variables, with exact jet evaluation."""

from __future__ import annotations

from .errors import DivisionByZero
from .jets import Jet
from .scalars import ZERO, GaussianRational, gr


class Expr:
    __slots__ = ()

    def __add__(self, other):
        return Add(self, _wrap(other))

    def __radd__(self, other):
        return Add(_wrap(other), self)

    def __sub__(self, other):
        return Sub(self, _wrap(other))

    def __rsub__(self, other):
        return Sub(_wrap(other), self)

    def __mul__(self, other):
        return Mul(self, _wrap(other))

    def __rmul__(self, other):
        return Mul(_wrap(other), self)

    def __truediv__(self, other):
        return Div(self, _wrap(other))

    def __rtruediv__(self, other):
        return Div(_wrap(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, n):
        return Pow(self, n)


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = gr(value)


class Var(Expr):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name


class Add(Expr):
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a, self.b = a, b


class Sub(Expr):
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a, self.b = a, b


class Mul(Expr):
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a, self.b = a, b


class Div(Expr):
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a, self.b = a, b


class Neg(Expr):
    __slots__ = ("a",)

    def __init__(self, a):
        self.a = a


class Pow(Expr):
    __slots__ = ("a", "n")

    def __init__(self, a, n):
        if not isinstance(n, int):
            raise ValueError("integer exponents only")
        self.a = a
        self.n = n


def _wrap(x):
    if isinstance(x, Expr):
        return x
    return Const(x)


def var(name):
    return Var(name)


def evaluate(expr, env):
    """Evaluate over any exact ring (scalars, jets, series)."""
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Var):
        return env[expr.name]
    if isinstance(expr, Add):
        return evaluate(expr.a, env) + evaluate(expr.b, env)
    if isinstance(expr, Sub):
        return evaluate(expr.a, env) - evaluate(expr.b, env)
    if isinstance(expr, Mul):
        return evaluate(expr.a, env) * evaluate(expr.b, env)
    if isinstance(expr, Neg):
        return -evaluate(expr.a, env)
    if isinstance(expr, Div):
        num = evaluate(expr.a, env)
        den = evaluate(expr.b, env)
        unit = getattr(den, "is_unit", bool(den))
        if not unit:
            raise DivisionByZero("denominator vanishes at the evaluation point")
        return num / den
    if isinstance(expr, Pow):
        return evaluate(expr.a, env) ** expr.n
    raise TypeError(f"not an expression node: {expr!r}")


def jet_eval(expr, point, direction):
    """Exact value and directional derivative of a rational expression.

    point and direction map variable names to GaussianRationals; missing
    direction entries mean a zero component.
    """
    zero = ZERO
    env = {}
    for name, value in point.items():
        env[name] = Jet(gr(value), gr(direction.get(name, zero)))
    for name, d in direction.items():
        if name not in env:
            env[name] = Jet(zero, gr(d))
    return evaluate(expr, env)


def eval_point(expr, point):
    env = {name: gr(v) for name, v in point.items()}
    return evaluate(expr, env)
