"""Reference class-31 tables: the published example this package replays.

The large polynomials live as JSON under `data/`; the small matrices are
inlined here.  Everything is exact (`p/q` strings, integer exponents).
"""

from __future__ import annotations

import json
from importlib import resources

from gmpy2 import mpq

from .poly import SparsePoly
from .ratfunc import RatFunc

PV = ("lambda", "n")

MATRIX_TEXT = """-4/45, -4/91, lambda
-89/93, -25/27, mu
1 * n, 91 * n, -47/74
"""

# mu solving the imaginary-pair eigenvalue condition for the matrix above
MU_NUM = "-222495265686330 * lambda^1 * n^1 + 2798106304433"
MU_DEN = "360057794237550 * n^1"


def _rf(text: str) -> RatFunc:
    return RatFunc.from_text(text, PV)


def _rf2(num: str, den: str) -> RatFunc:
    return RatFunc(SparsePoly.from_text(num, PV),
                   SparsePoly.from_text(den, PV))


def reference_transform() -> list:
    """The published 3x3 transform T for the reference matrix."""
    lam = RatFunc.variable("lambda", PV)
    n = RatFunc.variable("n", PV)
    return [
        [_rf("-89/93"), _rf("2411/3330"), _rf2(MU_NUM, MU_DEN)],
        [n, RatFunc.const(91, PV) * n, _rf("137/135")],
        [_rf("4967417788/180209106225")
         + _rf("225192627933/4004646805") * lam * n,
         RatFunc.const(91, PV) * lam * n + _rf("548/12285"),
         _rf2("-22832853806177415 * lambda^1 * n^1 + -11192425217732",
              "32765259275617050 * n^1")],
    ]


def reference_block() -> list:
    """The published block matrix T A T^{-1} (zeros included)."""
    z = RatFunc.const(0, PV)
    return [
        [_rf("13869599860/22271798367"),
         _rf2("-91766105462556215337465 * lambda^1 * n^1 + "
              "-607101471485504566516",
              "148502492476397927779275 * n^1"),
         z],
        [_rf2("221187981128 * n^1", "2474644263"),
         _rf("-13869599860/22271798367"), z],
        [z, z, _rf("-16483/9990")],
    ]


def _load_poly(name: str) -> SparsePoly:
    path = resources.files("lvcert").joinpath("data/class31_%s.json" % name)
    d = json.loads(path.read_text())
    terms = {tuple(e): mpq(c) for e, c in d["terms"]}
    return SparsePoly(tuple(d["vars"]), terms)


def reference_focal_tables() -> dict:
    """Published focal-value fractions: {lv1: (num, den), lv2: ..., lv3: ...}."""
    return {k: (_load_poly("%s_num" % k), _load_poly("%s_den" % k))
            for k in ("lv1", "lv2", "lv3")}


_FACTOR_TEXTS = {
    "n": "1 * n^1",
    "A": "723163327134803519328 * lambda^1 * n^1 + 3667082790637941895",
    "B": "91766105462556215337465 * lambda^1 * n^1 + 607101471485504566516",
    "C": "321405923171023786368 * lambda^1 * n^1 + 3830032074202152391",
    "D": "401757403963779732960 * lambda^1 * n^1 + 19639008221703393443",
    "E": "6428118463420475727360 * lambda^1 * n^1 + 17194768968240236003",
    "lin": "1018985380559055 * lambda^1 * n^1 + -413291543818",
}


def reference_denominator_factors() -> dict:
    """Published irreducible factors of the lv2 and lv3 denominators."""
    f = {k: SparsePoly.from_text(t, PV) for k, t in _FACTOR_TEXTS.items()}
    return {"lv2": [f[k] for k in ("n", "A", "B", "C", "D")],
            "lv3": [f[k] for k in ("n", "A", "B", "C", "D", "E", "lin")]}


# published isolating box for the reported parameter root
BOX_LAMBDA = (
    mpq("-149768422799541462651825945028449/"
        "2596148429267413814265248164610048"),
    mpq("-74884211399770731325912972514103/"
        "1298074214633706907132624082305024"),
)
BOX_N = (
    mpq("-153114826873895465369593577180012763583/"
        "21778071482940061661655974875633165533184"),
    mpq("-1087946279724117924228707/154742504910672534362390528"),
)

# published strict sign vector over the box:
# [lv1 den, lv2 den, lv3 num, lv3 den, det A]
BOX_SIGNS = (-1, -1, -1, -1, -1)
