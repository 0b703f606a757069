# cython: language_level=3
"""Compiled twin of _kernel_py: hot loops for sparse term-map arithmetic.

Coefficients stay gmpy2.mpq objects; the win is in the dict/tuple plumbing
around them, not the bignum arithmetic itself.
"""

BACKEND = "cython"


def add_terms(dict a, dict b, int sign):
    cdef dict out = dict(a)
    cdef object expo, coeff, cur, s
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


def mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef list a_items
    cdef tuple ea, eb, key
    cdef object ca, cb, cur, s
    cdef Py_ssize_t i, j, na, nv
    if not a or not b:
        return out
    if len(a) < len(b):
        a, b = b, a
    a_items = list(a.items())
    na = len(a_items)
    for eb, cb in b.items():
        nv = len(eb)
        for i in range(na):
            ea = <tuple> a_items[i][0]
            ca = a_items[i][1]
            key = tuple([<long> ea[j] + <long> eb[j] for j in range(nv)])
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
