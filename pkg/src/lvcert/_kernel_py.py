"""Pure-Python term-map kernel for sparse polynomial arithmetic.

The compiled Cython twin (`_kernel_cy`) implements the same two functions;
`lvcert._kernel` picks whichever is importable.  Coefficients are gmpy2.mpq,
exponent vectors are tuples of ints.
"""

from gmpy2 import mpq

BACKEND = "python"


def add_terms(a, b, sign):
    """a + sign*b over term maps; drops exact zeros."""
    out = dict(a)
    if sign == 1:
        for expo, coeff in b.items():
            cur = out.get(expo)
            if cur is None:
                out[expo] = coeff
            else:
                s = cur + coeff
                if s:
                    out[expo] = s
                else:
                    del out[expo]
    else:
        for expo, coeff in b.items():
            cur = out.get(expo)
            if cur is None:
                out[expo] = -coeff
            else:
                s = cur - coeff
                if s:
                    out[expo] = s
                else:
                    del out[expo]
    return out


def mul_terms(a, b):
    """Distributive product of two term maps; drops exact zeros."""
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    out = {}
    a_items = list(a.items())
    for eb, cb in b.items():
        for ea, ca in a_items:
            key = tuple(x + y for x, y in zip(ea, eb))
            cur = out.get(key)
            if cur is None:
                out[key] = ca * cb
            else:
                s = cur + ca * cb
                if s:
                    out[key] = s
                else:
                    del out[key]
    return out
