"""Polynomials in the transformed phase variables with RatFunc coefficients.

`YPoly` is a sparse polynomial in y1..y_k (k = 2 or 3) whose coefficients
are rational functions of the free parameters.  It is the workhorse of the
center-manifold reduction and the Lyapunov-function solves.
"""

from __future__ import annotations

from .ratfunc import RatFunc


class YPoly:
    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs=None):
        self.nvars = nvars
        self.coeffs = {}
        if coeffs:
            for expo, c in coeffs.items():
                if len(expo) != nvars:
                    raise ValueError("exponent arity mismatch")
                if not c.is_zero():
                    self.coeffs[tuple(expo)] = c

    @classmethod
    def zero(cls, nvars: int):
        return cls(nvars)

    @classmethod
    def monomial(cls, nvars: int, expo, coeff: RatFunc):
        return cls(nvars, {tuple(expo): coeff})

    def is_zero(self):
        return not self.coeffs

    def degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def min_degree(self) -> int:
        if not self.coeffs:
            return -1
        return min(sum(e) for e in self.coeffs)

    def homogeneous_part(self, k: int) -> "YPoly":
        return YPoly(self.nvars, {e: c for e, c in self.coeffs.items() if sum(e) == k})

    def truncate(self, max_degree: int) -> "YPoly":
        return YPoly(self.nvars, {e: c for e, c in self.coeffs.items()
                                  if sum(e) <= max_degree})

    def drop_below(self, min_degree: int) -> "YPoly":
        return YPoly(self.nvars, {e: c for e, c in self.coeffs.items()
                                  if sum(e) >= min_degree})

    def __add__(self, other: "YPoly") -> "YPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return YPoly(self.nvars, out)

    def __sub__(self, other: "YPoly") -> "YPoly":
        return self + (-other)

    def __neg__(self) -> "YPoly":
        return YPoly(self.nvars, {e: -c for e, c in self.coeffs.items()})

    def mul(self, other: "YPoly", max_degree: int | None = None) -> "YPoly":
        out: dict = {}
        for ea, ca in self.coeffs.items():
            da = sum(ea)
            for eb, cb in other.coeffs.items():
                if max_degree is not None and da + sum(eb) > max_degree:
                    continue
                key = tuple(x + y for x, y in zip(ea, eb))
                prod = ca * cb
                if key in out:
                    s = out[key] + prod
                    if s.is_zero():
                        del out[key]
                    else:
                        out[key] = s
                elif not prod.is_zero():
                    out[key] = prod
        return YPoly(self.nvars, out)

    def __mul__(self, other):
        if isinstance(other, YPoly):
            return self.mul(other)
        return self.scale(other)

    def scale(self, factor: RatFunc) -> "YPoly":
        if factor.is_zero():
            return YPoly.zero(self.nvars)
        return YPoly(self.nvars, {e: c * factor for e, c in self.coeffs.items()})

    def derivative(self, i: int) -> "YPoly":
        out = {}
        for expo, c in self.coeffs.items():
            if expo[i]:
                new = list(expo)
                new[i] -= 1
                out[tuple(new)] = c * expo[i]
        return YPoly(self.nvars, out)

    def subs_last(self, h: "YPoly", max_degree: int | None = None) -> "YPoly":
        """Substitute the last variable by h(y1..y_{nvars-1}) (e.g. y3 = h)."""
        if h.nvars != self.nvars - 1:
            raise ValueError("substitution arity mismatch")
        nv = self.nvars - 1
        by_power: dict = {}
        for expo, c in self.coeffs.items():
            by_power.setdefault(expo[-1], {})[expo[:-1]] = c
        result = YPoly.zero(nv)
        h_pow, cur = None, 0
        for power in sorted(by_power):
            base = YPoly(nv, by_power[power])
            if power == 0:
                result = result + base
                continue
            if h_pow is None:
                h_pow, cur = h, 1
            while cur < power:
                h_pow = h_pow.mul(h, max_degree)
                cur += 1
            result = result + base.mul(h_pow, max_degree)
        return result if max_degree is None else result.truncate(max_degree)

    def evaluate_coeffs(self, point) -> dict:
        """{exponent: mpq} after evaluating every coefficient at a point."""
        return {e: c.evaluate(point) for e, c in self.coeffs.items()}

    def map_coeffs(self, f) -> "YPoly":
        return YPoly(self.nvars, {e: f(c) for e, c in self.coeffs.items()})

    def __eq__(self, other):
        return (isinstance(other, YPoly) and other.nvars == self.nvars
                and other.coeffs == self.coeffs)

    def __repr__(self):
        parts = []
        for expo, c in sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join("y%d^%d" % (i + 1, e) for i, e in enumerate(expo) if e)
            parts.append("(%s)%s" % (c.to_text(), ("*" + mono) if mono else ""))
        return "YPoly(%s)" % (" + ".join(parts) or "0")
