"""Polynomial gcd, exact division and resultants.

The heavy lifting (multivariate gcd, Sylvester resultants) is delegated to
sympy's polynomial domain code; results are renormalized to our canonical
form (coprime integer coefficients, positive graded-lex leading coefficient)
so outputs are bit-reproducible regardless of backend internals.
"""

from __future__ import annotations

import sympy as _sp
from gmpy2 import mpq

from .errors import IdenticallyZero
from .poly import SparsePoly, align, merge_vars

_SYMBOL_CACHE: dict = {}


def _symbols(names):
    out = []
    for name in names:
        if name not in _SYMBOL_CACHE:
            _SYMBOL_CACHE[name] = _sp.Symbol(name)
        out.append(_SYMBOL_CACHE[name])
    return out


def _to_sympy(p: SparsePoly):
    gens = _symbols(p.vars) if p.vars else _symbols(("u",))
    rep = {}
    for expo, coeff in p.terms.items():
        key = expo if p.vars else (0,)
        rep[key] = _sp.Rational(int(coeff.numerator), int(coeff.denominator))
    if not rep:
        return _sp.Poly(0, *gens, domain="QQ")
    return _sp.Poly(rep, *gens, domain="QQ")


def _from_sympy(poly, variables) -> SparsePoly:
    terms = {}
    for monom, coeff in poly.terms():
        q = _sp.Rational(coeff)
        terms[tuple(monom)] = mpq(int(q.p), int(q.q))
    if not variables:
        terms = {(): c for _, c in terms.items()} if terms else {}
    return SparsePoly(variables, terms)


def poly_gcd(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    """Canonical gcd: primitive, positive graded-lex leading coefficient."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = align(a, b)
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    if a.is_constant() or b.is_constant():
        return SparsePoly.const(1, a.vars)
    g = _sp.gcd(_to_sympy(a), _to_sympy(b))
    return _from_sympy(g, a.vars).primitive()


def poly_divexact(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    """Exact quotient a/b; raises ValueError if b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    a, b = align(a, b)
    if a.is_zero():
        return a
    if b.is_constant():
        return a * (1 / b.constant_value())
    q, r = _sp.div(_to_sympy(a), _to_sympy(b))
    if not r.is_zero:
        raise ValueError("not an exact division")
    return _from_sympy(q, a.vars)


def poly_divides(b: SparsePoly, a: SparsePoly) -> bool:
    """True iff b divides a exactly (b nonzero)."""
    if b.is_zero():
        return a.is_zero()
    try:
        poly_divexact(a, b)
        return True
    except ValueError:
        return False


def resultant(a: SparsePoly, b: SparsePoly, var: str) -> SparsePoly:
    """Sylvester resultant eliminating `var`.

    Raises IdenticallyZero when the resultant vanishes identically, which
    signals a nontrivial common factor; the caller should divide out the
    gcd and retry.
    """
    if a.degree_in(var) <= 0 or b.degree_in(var) <= 0:
        raise ValueError("both inputs must have positive degree in %r" % var)
    a, b = align(a, b)
    x = _symbols((var,))[0]
    res = _sp.resultant(_to_sympy(a).as_expr(), _to_sympy(b).as_expr(), x)
    rest = tuple(v for v in a.vars if v != var)
    if res == 0:
        raise IdenticallyZero("resultant in %s vanishes identically" % var)
    if not rest:
        q = _sp.Rational(res)
        return SparsePoly.const(mpq(int(q.p), int(q.q)))
    out = _sp.Poly(res, *_symbols(rest), domain="QQ")
    return _from_sympy(out, rest)


def squarefree_part(p: SparsePoly) -> SparsePoly:
    """p with repeated factors collapsed (univariate or multivariate)."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.is_constant():
        return SparsePoly.const(1, p.vars)
    # divide out gcd with the derivative, one active variable at a time
    result = p
    for v in p.active_vars():
        der = result.derivative(v)
        if der.is_zero():
            continue
        g = poly_gcd(result, der)
        if not g.is_constant():
            result = poly_divexact(result, g)
    return result.primitive()
