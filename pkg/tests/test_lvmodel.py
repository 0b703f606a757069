"""Parameterized LV matrices, boundary invariants and classification."""

import pytest
from gmpy2 import mpq

from lvcert import RatInterval
from lvcert.errors import NotCompetitive, SingularFace
from lvcert.lvmodel import (CLASS_31, OTHER_OR_UNKNOWN, ParamMatrix3,
                            boundary_equilibria, classify,
                            competitiveness_check, growth_vector,
                            zeeman_invariants)

DUMMY = {"lambda": mpq(-1), "n": mpq(-1), "mu": mpq(-1)}

MATRIX_TEXT = """-4/45, -4/91, lambda
-89/93, -25/27, mu
1 * n, 91 * n, -47/74
"""


def test_text_round_trip():
    A = ParamMatrix3.from_text(MATRIX_TEXT)
    B = ParamMatrix3.from_text(A.to_text())
    assert A.to_text() == B.to_text()


def test_evaluate():
    A = ParamMatrix3.from_text(MATRIX_TEXT)
    pt = {"lambda": mpq(-1, 2), "n": mpq(-1, 3), "mu": mpq(-2)}
    m = A.evaluate(pt)
    assert m[0][0] == mpq(-4, 45)
    assert m[0][2] == mpq(-1, 2)
    assert m[2][1] == mpq(-91, 3)


def test_growth_vector_symbolic():
    A = ParamMatrix3.from_text(MATRIX_TEXT)
    b = growth_vector(A)
    pt = {"lambda": mpq(-1, 2), "n": mpq(-1, 3), "mu": mpq(-2)}
    assert b[0].evaluate(pt) == mpq(4, 45) + mpq(4, 91) + mpq(1, 2)


def test_boundary_equilibria_constant_matrix():
    # May's two-species-like fixed matrix extended to 3D, all entries -1/2
    A = ParamMatrix3.from_text("""-1/2, -1/4, -1/4
-1/4, -1/2, -1/4
-1/4, -1/4, -1/2
""")
    inv = boundary_equilibria(A, point=DUMMY)
    for i in range(3):
        assert inv.R[i] == 2  # b_i = 1, c_ii = 1/2
    for k in range(3):
        assert inv.Q[k] is not None
        xi, xj = inv.Q[k]
        assert xi == xj == mpq(4, 3)


def test_zeeman_rejects_non_competitive_point():
    A = ParamMatrix3.from_text(MATRIX_TEXT)
    with pytest.raises(NotCompetitive):
        zeeman_invariants(A, {"lambda": mpq(1), "n": mpq(-1, 10),
                              "mu": mpq(-1)})


def test_singular_face_detected():
    A = ParamMatrix3.from_text("""-1, -1, -1
-1, -1, -1
-1, -1, -1
""")
    with pytest.raises(SingularFace):
        boundary_equilibria(A, point=DUMMY)


def test_classify_requires_complete_invariants():
    A = ParamMatrix3.from_text("""-1/2, -1/4, -1/4
-1/4, -1/2, -1/4
-1/4, -1/4, -1/2
""")
    inv = zeeman_invariants(A, DUMMY)
    assert classify(inv) in (CLASS_31, OTHER_OR_UNKNOWN)


def test_competitiveness_check_interval():
    A = ParamMatrix3.from_text(MATRIX_TEXT)
    neg = RatInterval(mpq(-1, 2), mpq(-1, 4))
    assert competitiveness_check(A, {"lambda": neg, "n": neg, "mu": neg})
    straddle = RatInterval(mpq(-1, 4), mpq(1, 4))
    assert not competitiveness_check(A, {"lambda": straddle, "n": neg,
                                         "mu": neg})


def test_template_generation():
    tpl = [[("fixed", mpq(-1, 2)), ("fixed", mpq(-1, 3)), ("sym", "lambda")],
           [("fixed", mpq(-2, 5)), ("fixed", mpq(-3, 7)), ("sym", "mu")],
           [("n_mult", 1), ("n_mult", mpq(7, 2)), ("fixed", mpq(-1, 9))]]
    A = ParamMatrix3.from_template(tpl)
    pt = {"lambda": mpq(-1), "n": mpq(-2), "mu": mpq(-3)}
    m = A.evaluate(pt)
    assert m[0][0] == mpq(-1, 2)
    assert m[2][0] == mpq(-2)
    assert m[2][1] == mpq(-7)
    assert m[1][2] == mpq(-3)
