"""Univariate Sturm isolation against a plain bisection oracle."""

from gmpy2 import mpq

from lvcert import RatInterval, SparsePoly, refine_root, sturm_isolate


def poly_from_roots(roots, var="t"):
    p = SparsePoly.const(1, (var,))
    t = SparsePoly.variable(var, (var,))
    for r in roots:
        p = p * (t - SparsePoly.const(r, (var,)))
    return p


def bisection_roots(p, lo, hi, depth=40):
    """Sign-change bisection oracle; assumes simple roots, no root at ends."""
    out = []

    def rec(a, b, d):
        fa, fb = p.evaluate({"t": a}), p.evaluate({"t": b})
        if fa * fb > 0 and d == 0:
            return
        if d == 0:
            if fa * fb < 0:
                out.append((a, b))
            return
        m = (a + b) / 2
        if p.evaluate({"t": m}) == 0:
            out.append((m, m))
            eps = (b - a) / 1000
            rec(a, m - eps, d - 1)
            rec(m + eps, b, d - 1)
        else:
            rec(a, m, d - 1)
            rec(m, b, d - 1)

    rec(lo, hi, 8)
    return out


def test_isolates_known_rational_roots(rng):
    for _ in range(25):
        roots = sorted({mpq(rng.randint(-20, 20), rng.randint(1, 9))
                        for _ in range(rng.randint(1, 5))})
        p = poly_from_roots(roots)
        ivs = sturm_isolate(p)
        assert len(ivs) == len(roots)
        for r, iv in zip(roots, sorted(ivs, key=lambda i: i.lo)):
            assert iv.lo <= r <= iv.hi


def test_multiple_roots_counted_once():
    p = poly_from_roots([mpq(1), mpq(1), mpq(-2)])
    ivs = sturm_isolate(p)
    assert len(ivs) == 2


def test_no_real_roots():
    t = SparsePoly.variable("t", ("t",))
    p = t * t + SparsePoly.const(1, ("t",))
    assert sturm_isolate(p) == []


def test_range_restriction():
    p = poly_from_roots([mpq(-3), mpq(2), mpq(5)])
    ivs = sturm_isolate(p, RatInterval(mpq(0), mpq(3)))
    assert len(ivs) == 1
    assert ivs[0].lo <= 2 <= ivs[0].hi


def test_matches_bisection_oracle(rng):
    for _ in range(15):
        roots = sorted({mpq(rng.randint(-8, 8)) + mpq(1, 2)
                        for _ in range(rng.randint(1, 4))})
        p = poly_from_roots(roots)
        ivs = sorted(sturm_isolate(p, RatInterval(mpq(-10), mpq(10))),
                     key=lambda i: i.lo)
        oracle = bisection_roots(p, mpq(-10), mpq(10))
        assert len(ivs) == len(oracle)


def test_refine_root_shrinks_and_keeps_root():
    p = poly_from_roots([mpq(1, 3)])
    iv = sturm_isolate(p)[0]
    small = refine_root(p, iv, mpq(1, 10 ** 12))
    assert small.width() <= mpq(1, 10 ** 12)
    assert small.lo <= mpq(1, 3) <= small.hi


def test_irrational_root_enclosure():
    t = SparsePoly.variable("t", ("t",))
    p = t * t - SparsePoly.const(2, ("t",))
    ivs = sturm_isolate(p)
    assert len(ivs) == 2
    pos = [iv for iv in ivs if iv.hi > 0][0]
    tight = refine_root(p, pos, mpq(1, 10 ** 20))
    lo, hi = tight.lo, tight.hi
    assert lo * lo < 2 < hi * hi
