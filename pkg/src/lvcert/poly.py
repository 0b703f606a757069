"""Sparse multivariate polynomials over exact rationals.

Coefficients are ``gmpy2.mpq`` values (arbitrary precision, always reduced,
positive denominator).  A polynomial stores an ordered variable tuple and a
map from exponent vectors to nonzero coefficients.  Variable tuples follow a
single global order so canonical forms are reproducible across runs.
"""

from __future__ import annotations

from gmpy2 import mpq, mpz

from . import _kernel

# Global variable order; every SparsePoly variable tuple is a subsequence.
CANONICAL_VARS = ("lambda", "n", "mu", "y1", "y2", "y3", "u", "v")

_VAR_RANK = {name: i for i, name in enumerate(CANONICAL_VARS)}


def var_sort_key(name: str):
    return (_VAR_RANK.get(name, len(CANONICAL_VARS)), name)


def rational(value) -> mpq:
    """Coerce ints, strings like '-3/7', Fractions or mpq to mpq."""
    if isinstance(value, mpq):
        return value
    if isinstance(value, str):
        return mpq(value)
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string or rational")
    return mpq(value)


def rational_str(q) -> str:
    """Serialize a rational as 'p' or 'p/q' (never decimal)."""
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%s/%s" % (q.numerator, q.denominator)


def _grlex_key(expo):
    return (sum(expo), expo)


class SparsePoly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables, terms, *, _clean=False):
        variables = tuple(variables)
        if list(variables) != sorted(variables, key=var_sort_key):
            raise ValueError("variables must follow the canonical order: %r" % (variables,))
        if _clean:
            self.terms = terms
        else:
            clean = {}
            nv = len(variables)
            for expo, coeff in terms.items():
                expo = tuple(int(e) for e in expo)
                if len(expo) != nv:
                    raise ValueError("exponent vector length mismatch")
                if any(e < 0 for e in expo):
                    raise ValueError("negative exponent")
                c = rational(coeff)
                if c:
                    clean[expo] = clean.get(expo, mpq(0)) + c
            self.terms = {e: c for e, c in clean.items() if c}
        self.vars = variables
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables=()):
        return cls(variables, {}, _clean=True)

    @classmethod
    def const(cls, value, variables=()):
        c = rational(value)
        if not c:
            return cls.zero(variables)
        return cls(variables, {(0,) * len(tuple(variables)): c}, _clean=True)

    @classmethod
    def variable(cls, name, variables=None):
        if variables is None:
            variables = (name,)
        variables = tuple(variables)
        expo = [0] * len(variables)
        expo[variables.index(name)] = 1
        return cls(variables, {tuple(expo): mpq(1)}, _clean=True)

    # -- basic predicates ---------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> mpq:
        if not self.terms:
            return mpq(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    # -- degree -------------------------------------------------------

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def leading_term(self):
        """(exponent, coeff) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        expo = max(self.terms, key=_grlex_key)
        return expo, self.terms[expo]

    def leading_coeff(self) -> mpq:
        return self.leading_term()[1]

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SparsePoly):
            if other.vars != self.vars:
                a, b = align(self, other)
                return a, b
            return self, other
        return self, SparsePoly.const(other, self.vars)

    def __add__(self, other):
        a, b = self._coerce(other)
        return SparsePoly(a.vars, _kernel.add_terms(a.terms, b.terms, 1), _clean=True)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        return SparsePoly(a.vars, _kernel.add_terms(a.terms, b.terms, -1), _clean=True)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return SparsePoly(self.vars, {e: -c for e, c in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        if isinstance(other, SparsePoly):
            a, b = self._coerce(other)
            return SparsePoly(a.vars, _kernel.mul_terms(a.terms, b.terms), _clean=True)
        c = rational(other)
        if not c:
            return SparsePoly.zero(self.vars)
        return SparsePoly(self.vars, {e: k * c for e, k in self.terms.items()}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = SparsePoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k > 1
            k >>= 1
            if base_needed and k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            if other.vars != self.vars:
                a, b = align(self, other)
                return a.terms == b.terms
            return self.terms == other.terms
        if isinstance(other, (int, mpq, mpz, str)):
            return self.is_constant() and (not self.terms if not rational(other)
                                           else self.constant_value() == rational(other))
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- content / normalization --------------------------------------

    def content(self) -> mpq:
        """Rational c > 0 (times leading sign) with self = c * primitive part.

        The primitive part has coprime integer coefficients and positive
        graded-lex leading coefficient.
        """
        if not self.terms:
            return mpq(0)
        num_gcd = mpz(0)
        den_lcm = mpz(1)
        for c in self.terms.values():
            num_gcd = gcd_mpz(num_gcd, mpz(c.numerator))
            den_lcm = den_lcm * mpz(c.denominator) // gcd_mpz(den_lcm, mpz(c.denominator))
        c = mpq(num_gcd, den_lcm)
        if self.leading_coeff() < 0:
            c = -c
        return c

    def primitive(self):
        """self / content(): integer coprime coefficients, positive lead."""
        c = self.content()
        if not c:
            return self
        inv = 1 / c
        return SparsePoly(self.vars, {e: k * inv for e, k in self.terms.items()}, _clean=True)

    def monic_primitive(self):
        return self.primitive()

    # -- calculus / evaluation ----------------------------------------

    def derivative(self, name: str):
        i = self.vars.index(name)
        terms = {}
        for expo, coeff in self.terms.items():
            if expo[i]:
                new = list(expo)
                new[i] -= 1
                terms[tuple(new)] = terms.get(tuple(new), mpq(0)) + coeff * expo[i]
        return SparsePoly(self.vars, {e: c for e, c in terms.items() if c}, _clean=True)

    def evaluate(self, point) -> mpq:
        """Exact value at a full rational point {var: rational}."""
        vals = [rational(point[v]) for v in self.vars]
        total = mpq(0)
        pow_cache = [{0: mpq(1)} for _ in vals]
        for expo, coeff in self.terms.items():
            term = coeff
            for i, e in enumerate(expo):
                if e:
                    cache = pow_cache[i]
                    if e not in cache:
                        cache[e] = vals[i] ** e
                    term = term * cache[e]
            total += term
        return total

    def eval_partial(self, point):
        """Substitute rational values for a subset of the variables."""
        keep = [v for v in self.vars if v not in point]
        keep_idx = [self.vars.index(v) for v in keep]
        sub_idx = [(i, rational(point[v])) for i, v in enumerate(self.vars) if v in point]
        terms = {}
        for expo, coeff in self.terms.items():
            c = coeff
            for i, val in sub_idx:
                if expo[i]:
                    c = c * val ** expo[i]
            if not c:
                continue
            key = tuple(expo[i] for i in keep_idx)
            c0 = terms.get(key, mpq(0)) + c
            if c0:
                terms[key] = c0
            elif key in terms:
                del terms[key]
        return SparsePoly(tuple(keep), terms, _clean=True)

    def subs_poly(self, name: str, replacement: "SparsePoly"):
        """Substitute a polynomial for one variable (exact, may be slow)."""
        i = self.vars.index(name)
        rest_vars = tuple(v for v in self.vars if v != name)
        merged = merge_vars(rest_vars, replacement.vars)
        result = SparsePoly.zero(merged)
        # group by power of the substituted variable, Horner in that variable
        by_power = {}
        for expo, coeff in self.terms.items():
            key = expo[i]
            rest = tuple(e for j, e in enumerate(expo) if j != i)
            by_power.setdefault(key, {})[rest] = coeff
        repl = SparsePoly(replacement.vars, replacement.terms, _clean=True)
        for power in sorted(by_power, reverse=True):
            part = SparsePoly(rest_vars, by_power[power], _clean=True)
            result = result + part * repl ** power
        return result

    # -- univariate views ---------------------------------------------

    def active_vars(self):
        """Variables that actually occur."""
        active = set()
        for expo in self.terms:
            for i, e in enumerate(expo):
                if e:
                    active.add(self.vars[i])
        return tuple(sorted(active, key=var_sort_key))

    def as_univariate(self):
        """(name, [c0, c1, ...]) for a polynomial in at most one variable."""
        active = self.active_vars()
        if len(active) > 1:
            raise ValueError("polynomial is not univariate: %r" % (active,))
        name = active[0] if active else (self.vars[0] if self.vars else "u")
        if not self.terms:
            return name, []
        i = self.vars.index(name) if name in self.vars else None
        deg = self.degree_in(name) if name in self.vars else 0
        coeffs = [mpq(0)] * (deg + 1)
        for expo, coeff in self.terms.items():
            coeffs[expo[i] if i is not None else 0] += coeff
        return name, coeffs

    @classmethod
    def from_univariate(cls, name, coeffs, variables=None):
        if variables is None:
            variables = (name,)
        variables = tuple(variables)
        i = variables.index(name)
        terms = {}
        for e, c in enumerate(coeffs):
            c = rational(c)
            if c:
                expo = [0] * len(variables)
                expo[i] = e
                terms[tuple(expo)] = c
        return cls(variables, terms, _clean=True)

    def restricted(self):
        """Drop variables that do not occur."""
        active = self.active_vars()
        if active == self.vars:
            return self
        idx = [self.vars.index(v) for v in active]
        terms = {tuple(e[i] for i in idx): c for e, c in self.terms.items()}
        return SparsePoly(active, terms, _clean=True)

    def with_vars(self, variables):
        """Reinterpret over another variable tuple (inactive vars may drop)."""
        variables = tuple(variables)
        if variables == self.vars:
            return self
        pos = {}
        for i, v in enumerate(self.vars):
            if v in variables:
                pos[i] = variables.index(v)
            elif any(e[i] for e in self.terms):
                raise ValueError("cannot drop active variable %r" % v)
        n = len(variables)
        terms = {}
        for expo, coeff in self.terms.items():
            new = [0] * n
            for i, e in enumerate(expo):
                if e:
                    new[pos[i]] = e
            terms[tuple(new)] = coeff
        return SparsePoly(variables, terms, _clean=True)

    # -- serialization ------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for expo, coeff in self.sorted_terms():
            factors = [rational_str(coeff)]
            for name, e in zip(self.vars, expo):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append("%s^%d" % (name, e))
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str, variables=None):
        text = text.strip()
        if variables is not None:
            variables = tuple(variables)
        seen_vars = set()
        raw_terms = []
        if text in ("", "0"):
            return cls.zero(variables or ())
        for chunk in text.split("+"):
            chunk = chunk.strip()
            if not chunk:
                raise ValueError("empty term")
            coeff = mpq(1)
            expo = {}
            for factor in chunk.split("*"):
                factor = factor.strip()
                if not factor:
                    raise ValueError("empty factor in %r" % chunk)
                if factor[0].isdigit() or factor[0] in "+-":
                    coeff = coeff * mpq(factor)
                else:
                    if "^" in factor:
                        name, _, e = factor.partition("^")
                        name, e = name.strip(), int(e)
                    else:
                        name, e = factor, 1
                    seen_vars.add(name)
                    expo[name] = expo.get(name, 0) + e
            raw_terms.append((coeff, expo))
        if variables is None:
            variables = tuple(sorted(seen_vars, key=var_sort_key))
        missing = seen_vars - set(variables)
        if missing:
            raise ValueError("undeclared variables: %r" % (sorted(missing),))
        terms = {}
        for coeff, expo in raw_terms:
            key = tuple(expo.get(v, 0) for v in variables)
            terms[key] = terms.get(key, mpq(0)) + coeff
        return cls(variables, {e: c for e, c in terms.items() if c})

    def __repr__(self):
        return "SparsePoly(%s)" % self.to_text()


def gcd_mpz(a, b):
    from gmpy2 import gcd
    return gcd(a, b)


def merge_vars(a, b):
    return tuple(sorted(set(a) | set(b), key=var_sort_key))


def align(a: SparsePoly, b: SparsePoly):
    """Bring two polynomials over the union of their variables."""
    merged = merge_vars(a.vars, b.vars)
    return a.with_vars(merged), b.with_vars(merged)


def poly_arith(a: SparsePoly, b: SparsePoly, op: str) -> SparsePoly:
    """Named entry point for add/sub/mul (the operators do the work)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError("unknown op %r" % op)
