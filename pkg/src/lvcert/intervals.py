"""Exact rational intervals and sound interval evaluation of polynomials.

Endpoints are gmpy2.mpq.  All operations produce enclosures; the optional
outward dyadic rounding (`outward`) replaces endpoints by enclosing dyadic
rationals so deep refinements cannot blow up endpoint bit-length.
"""

from __future__ import annotations

from gmpy2 import mpq, mpz

from .poly import SparsePoly, rational, rational_str


class RatInterval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo = rational(lo)
        hi = rational(hi)
        if lo > hi:
            raise ValueError("interval with lo > hi")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, value):
        v = rational(value)
        return cls(v, v)

    def width(self) -> mpq:
        return self.hi - self.lo

    def midpoint(self) -> mpq:
        return (self.lo + self.hi) / 2

    def contains(self, value) -> bool:
        v = rational(value)
        return self.lo <= v <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def contains_interval(self, other: "RatInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def strictly_contains(self, other: "RatInterval") -> bool:
        return self.lo < other.lo and other.hi < self.hi

    def intersects(self, other: "RatInterval") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def intersection(self, other: "RatInterval") -> "RatInterval":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            raise ValueError("empty intersection")
        return RatInterval(lo, hi)

    def hull(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def sign(self) -> int:
        """+1 / -1 if the interval excludes zero, else 0."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        o = _as_interval(other)
        return RatInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_interval(other)
        return RatInterval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return _as_interval(other) - self

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __mul__(self, other):
        o = _as_interval(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RatInterval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_interval(other)
        if o.contains_zero():
            raise ZeroDivisionError("division by an interval containing zero")
        return self * RatInterval(1 / o.hi, 1 / o.lo)

    def __pow__(self, k: int):
        """Power-aware rule: even powers never go below zero."""
        if k < 0:
            raise ValueError("negative power")
        if k == 0:
            return RatInterval.point(1)
        if k % 2 == 1 or self.lo >= 0:
            return RatInterval(self.lo ** k, self.hi ** k)
        if self.hi <= 0:
            return RatInterval(self.hi ** k, self.lo ** k)
        return RatInterval(mpq(0), max(self.lo ** k, self.hi ** k))

    def __eq__(self, other):
        return isinstance(other, RatInterval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return "RatInterval(%s, %s)" % (rational_str(self.lo), rational_str(self.hi))


def _as_interval(x):
    if isinstance(x, RatInterval):
        return x
    return RatInterval.point(x)


def _round_down(x: mpq, bits: int) -> mpq:
    scaled = x * (mpz(1) << bits)
    floor = scaled.numerator // scaled.denominator
    return mpq(floor, mpz(1) << bits)


def _round_up(x: mpq, bits: int) -> mpq:
    scaled = x * (mpz(1) << bits)
    ceil = -((-scaled.numerator) // scaled.denominator)
    return mpq(ceil, mpz(1) << bits)


def outward(iv: RatInterval, bits: int) -> RatInterval:
    """Enclose by dyadic endpoints with ~`bits` bits of relative precision.

    Widening only; soundness of any enclosure is preserved.
    """
    scale = max(abs(iv.lo), abs(iv.hi))
    if not scale:
        return iv
    # absolute grid fine enough for `bits` relative precision at this scale
    mag = int(scale.numerator).bit_length() - int(scale.denominator).bit_length()
    shift = max(1, bits - mag)
    return RatInterval(_round_down(iv.lo, shift), _round_up(iv.hi, shift))


def eval_interval(p: SparsePoly, box: dict, bits: int | None = None) -> RatInterval:
    """Sound enclosure of the range of p over the box {var: RatInterval}.

    Each monomial uses the power-aware rule (x^2 over [-1, 2] contributes
    [0, 4]); with `bits` set, partial sums are outward-rounded to dyadics.
    """
    for v in p.active_vars():
        if v not in box:
            raise ValueError("no interval for variable %r" % v)
    total = RatInterval.point(0)
    pow_cache: dict = {}
    for expo, coeff in p.terms.items():
        term = RatInterval.point(coeff)
        for name, e in zip(p.vars, expo):
            if e:
                key = (name, e)
                if key not in pow_cache:
                    pow_cache[key] = _as_interval(box[name]) ** e
                term = term * pow_cache[key]
        total = total + term
        if bits is not None:
            total = outward(total, bits)
    return total


def eval_interval_ratfunc(rf, box: dict, bits: int | None = None) -> RatInterval:
    """Enclosure of num/den over the box; den's enclosure must exclude 0."""
    den = eval_interval(rf.den, box, bits)
    if den.contains_zero():
        raise ZeroDivisionError("denominator enclosure contains zero")
    num = eval_interval(rf.num, box, bits)
    out = num / den
    return outward(out, bits) if bits is not None else out
