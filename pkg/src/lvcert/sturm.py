"""Univariate real-root isolation via Sturm chains.

Polynomials are handled as integer coefficient lists (low degree first,
primitive-scaled after every remainder step to control growth).  Isolation
returns disjoint rational intervals, each containing exactly one root of the
square-free part.
"""

from __future__ import annotations

from gmpy2 import gcd as _gcd
from gmpy2 import mpq, mpz

from .intervals import RatInterval
from .poly import SparsePoly, rational


def _trim(coeffs):
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def to_int_coeffs(p: SparsePoly):
    """Integer coefficient list (low first) of a univariate polynomial."""
    _, coeffs = p.as_univariate()
    den_lcm = mpz(1)
    for c in coeffs:
        c = mpq(c)
        den_lcm = den_lcm * c.denominator // _gcd(den_lcm, mpz(c.denominator))
    out = [mpz(mpq(c) * den_lcm) for c in coeffs]
    return _trim(out)


def _primitive_int(coeffs):
    g = mpz(0)
    for c in coeffs:
        g = _gcd(g, c)
        if g == 1:
            return list(coeffs)
    if not g:
        return []
    return [c // g for c in coeffs]


def _derivative(coeffs):
    return [c * i for i, c in enumerate(coeffs)][1:]


def _neg_rem(a, b):
    """-rem(a, b) over Q, scaled to a primitive integer list.

    The scaling is by a positive rational, which preserves the Sturm
    sign-variation property.
    """
    a = [mpq(c) for c in a]
    b = list(b)
    db = len(b) - 1
    lead_b = mpq(b[-1])
    while len(a) - 1 >= db and _trim(list(a)):
        a = _trim(a)
        if len(a) - 1 < db:
            break
        factor = a[-1] / lead_b
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
        a.pop()
    a = _trim(a)
    den_lcm = mpz(1)
    for c in a:
        den_lcm = den_lcm * c.denominator // _gcd(den_lcm, mpz(c.denominator))
    out = _primitive_int([mpz(-c * den_lcm) for c in a])
    return out


def sturm_chain(coeffs):
    """Sturm chain of an integer coefficient list (square-free input)."""
    chain = [_primitive_int(_trim(list(coeffs)))]
    d = _derivative(chain[0])
    if d:
        chain.append(_primitive_int(d))
    while len(chain[-1]) > 1:
        nxt = _neg_rem(chain[-2], chain[-1])
        if not nxt:
            break
        chain.append(nxt)
    return chain


def eval_sign(coeffs, x: mpq) -> int:
    """Exact sign of p(x) for rational x, via integer Horner."""
    if not coeffs:
        return 0
    x = mpq(x)
    p, q = mpz(x.numerator), mpz(x.denominator)
    total = mpz(0)
    qq = mpz(1)
    powers = [mpz(1)]
    for _ in range(len(coeffs) - 1):
        powers.append(powers[-1] * p)
    total = mpz(0)
    qpow = mpz(1)
    for i in range(len(coeffs) - 1, -1, -1):
        total += coeffs[i] * powers[i] * qpow
        qpow *= q
    return (total > 0) - (total < 0)


def variations_at(chain, x: mpq) -> int:
    signs = [eval_sign(c, x) for c in chain]
    return _count_variations(signs)


def variations_at_inf(chain, positive: bool) -> int:
    signs = []
    for c in chain:
        if not c:
            signs.append(0)
            continue
        s = (c[-1] > 0) - (c[-1] < 0)
        if not positive and (len(c) - 1) % 2 == 1:
            s = -s
        signs.append(s)
    return _count_variations(signs)


def _count_variations(signs):
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def count_roots(chain, lo, hi) -> int:
    """Number of distinct real roots in (lo, hi]."""
    return variations_at(chain, lo) - variations_at(chain, hi)


def root_bound(coeffs) -> mpq:
    """Cauchy bound: all real roots lie in (-B, B)."""
    lead = abs(coeffs[-1])
    m = max((abs(c) for c in coeffs[:-1]), default=mpz(0))
    return mpq(m, lead) + 1


def squarefree_int(coeffs):
    """Square-free part of an integer coefficient list (primitive)."""
    coeffs = _primitive_int(_trim(list(coeffs)))
    if len(coeffs) <= 2:
        return coeffs
    g = _int_gcd_poly(coeffs, _derivative(coeffs))
    if len(g) <= 1:
        return coeffs
    q = _exact_div(coeffs, g)
    return _primitive_int(q)


def _int_gcd_poly(a, b):
    """Univariate gcd over Q, primitive integer output (Euclid)."""
    a = _primitive_int(_trim(list(a)))
    b = _primitive_int(_trim(list(b)))
    while b:
        r = _neg_rem(a, b)
        a, b = b, r
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def _exact_div(a, b):
    """Exact univariate division over Q (a = q*b)."""
    a = [mpq(c) for c in a]
    db = len(b) - 1
    lead = mpq(b[-1])
    q = [mpq(0)] * (len(a) - db)
    while _trim(list(a)) and len(_trim(list(a))) - 1 >= db:
        a = _trim(a)
        k = len(a) - 1 - db
        f = a[-1] / lead
        q[k] = f
        for i, c in enumerate(b):
            a[i + k] -= f * c
        a.pop()
    den_lcm = mpz(1)
    for c in q:
        den_lcm = den_lcm * c.denominator // _gcd(den_lcm, mpz(c.denominator))
    return [mpz(c * den_lcm) for c in q]


def sturm_isolate(p: SparsePoly, rng: RatInterval | None = None,
                  delta=mpq(1, 2 ** 20)) -> list[RatInterval]:
    """Isolate the real roots of p (univariate) within `rng`.

    Returns disjoint intervals of width <= delta, each containing exactly
    one root of the square-free part of p; their union covers every real
    root of p inside the range (whole line when rng is None).
    """
    delta = rational(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    coeffs = to_int_coeffs(p)
    if len(coeffs) <= 1:
        return []
    sf = squarefree_int(coeffs)
    chain = sturm_chain(sf)

    bound = root_bound(sf)
    if rng is None:
        lo, hi = -bound, bound
    else:
        lo, hi = rational(rng.lo), rational(rng.hi)
        lo = max(lo, -bound)
        hi = min(hi, bound)
        if lo > hi:
            return []

    out = []
    if rng is not None and eval_sign(sf, rational(rng.lo)) == 0 and lo == rational(rng.lo):
        out.append(RatInterval(lo, lo))

    def nonroot_cut(a, b):
        m = (a + b) / 2
        step = (b - a) / 4
        while eval_sign(sf, m) == 0:
            m = m + step
            step = step / 2
        return m

    stack = [(lo, hi, None)]
    while stack:
        a, b, cnt = stack.pop()
        if cnt is None:
            cnt = count_roots(chain, a, b)
        if cnt == 0:
            continue
        if cnt == 1 and b - a <= delta:
            out.append(RatInterval(a, b))
            continue
        m = nonroot_cut(a, b)
        left = count_roots(chain, a, m)
        stack.append((a, m, left))
        stack.append((m, b, cnt - left))

    out.sort(key=lambda iv: iv.lo)
    return out


def refine_root(p: SparsePoly, iv: RatInterval, delta) -> RatInterval:
    """Shrink an isolating interval below width delta by sign bisection."""
    delta = rational(delta)
    coeffs = squarefree_int(to_int_coeffs(p))
    lo, hi = iv.lo, iv.hi
    s_lo = eval_sign(coeffs, lo)
    if s_lo == 0:
        return RatInterval(lo, lo)
    while hi - lo > delta:
        m = (lo + hi) / 2
        s_m = eval_sign(coeffs, m)
        if s_m == 0:
            return RatInterval(m, m)
        if s_m == s_lo:
            lo = m
        else:
            hi = m
    return RatInterval(lo, hi)
