"""Reduced rational functions over SparsePoly.

Canonical form: num/den with the polynomial gcd removed, the denominator
primitive (coprime integer coefficients) with positive graded-lex leading
coefficient.  Equality is then term-by-term.
"""

from __future__ import annotations

from gmpy2 import mpq

from .errors import ZeroDenominator
from .gcdres import poly_divexact, poly_gcd
from .poly import SparsePoly, align, rational


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: SparsePoly, den: SparsePoly, *, _canonical=False):
        if _canonical:
            self.num = num
            self.den = den
            return
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        num, den = align(num, den)
        if num.is_zero():
            self.num = SparsePoly.zero(num.vars)
            self.den = SparsePoly.const(1, num.vars)
            return
        if not den.is_constant():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = poly_divexact(num, g)
                den = poly_divexact(den, g)
        c = den.content()
        self.den = den * (1 / c)
        self.num = num * (1 / c)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_poly(cls, p: SparsePoly):
        return cls(p, SparsePoly.const(1, p.vars), _canonical=True)

    @classmethod
    def const(cls, value, variables=()):
        return cls.from_poly(SparsePoly.const(value, variables))

    @classmethod
    def variable(cls, name, variables=None):
        return cls.from_poly(SparsePoly.variable(name, variables))

    # -- predicates ---------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> mpq:
        return self.num.constant_value() / self.den.constant_value()

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, SparsePoly):
            return RatFunc.from_poly(other)
        return RatFunc.const(rational(other), self.num.vars)

    def __add__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return RatFunc(-self.num, self.den, _canonical=True)

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc(self.den ** (-k), self.num ** (-k))
        return RatFunc(self.num ** k, self.den ** k, _canonical=(k <= 1))

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            a, b = align(self.num, other.num)
            c, d = align(self.den, other.den)
            return a.terms == b.terms and c.terms == d.terms
        if isinstance(other, SparsePoly):
            return self == RatFunc.from_poly(other)
        if isinstance(other, (int, str, mpq)):
            return self.is_constant() and self.constant_value() == rational(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    # -- evaluation ---------------------------------------------------

    def evaluate(self, point) -> mpq:
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(point) / d

    def eval_partial(self, point) -> "RatFunc":
        return RatFunc(self.num.eval_partial(point), self.den.eval_partial(point))

    def sign_at(self, point) -> int:
        """Exact sign at a rational point where the denominator is nonzero."""
        v = self.evaluate(point)
        return (v > 0) - (v < 0)

    # -- serialization ------------------------------------------------

    def to_text(self) -> str:
        if self.den.is_constant() and self.den.constant_value() == 1:
            return self.num.to_text()
        return "(%s) / (%s)" % (self.num.to_text(), self.den.to_text())

    @classmethod
    def from_text(cls, text: str, variables=None):
        text = text.strip()
        if ") / (" in text:
            left, _, right = text.partition(") / (")
            num = SparsePoly.from_text(left.lstrip("("), variables)
            den = SparsePoly.from_text(right.rstrip(")"), variables)
            return cls(num, den)
        return cls.from_poly(SparsePoly.from_text(text, variables))

    def __repr__(self):
        return "RatFunc(%s)" % self.to_text()


def ratfunc_normalize(num: SparsePoly, den: SparsePoly) -> RatFunc:
    """Spec-named constructor; same canonicalization as RatFunc(num, den)."""
    return RatFunc(num, den)
