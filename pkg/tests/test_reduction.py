"""Eigencondition, block form and center-manifold reduction."""

import pytest
from gmpy2 import mpq

from lvcert.errors import NotLinearInMu
from lvcert.lvmodel import ParamMatrix3
from lvcert.ratfunc import RatFunc
from lvcert.reduction import (build_transform, center_manifold,
                              eigencondition_residual, externalize,
                              internalize, invariance_residual, reduce_planar,
                              solve_for_mu, transform_system)

MATRIX_TEXT = """-4/45, -4/91, lambda
-89/93, -25/27, mu
1 * n, 91 * n, -47/74
"""

PV = ("lambda", "n")


def reference_matrix():
    return ParamMatrix3.from_text(MATRIX_TEXT)


def mu_substituted():
    A = reference_matrix()
    mu = solve_for_mu(A)
    mu = RatFunc(mu.num.restricted().with_vars(PV),
                 mu.den.restricted().with_vars(PV))
    return A.substitute_mu(mu), mu


def test_solve_for_mu_golden():
    from lvcert.poly import SparsePoly

    A = reference_matrix()
    mu = solve_for_mu(A)
    mu = RatFunc(mu.num.restricted().with_vars(PV),
                 mu.den.restricted().with_vars(PV))
    expect = RatFunc(
        SparsePoly.from_text(
            "-222495265686330 * lambda^1 * n^1 + 2798106304433", PV),
        SparsePoly.from_text("360057794237550 * n^1", PV))
    assert mu == expect


def test_eigencondition_residual_vanishes_after_substitution():
    A2, _ = mu_substituted()
    assert eigencondition_residual(A2).is_zero()


def test_solve_for_mu_rejects_mu_free_matrix():
    A = ParamMatrix3.from_text("""-1/2, -1/4, -1/4
-1/4, -1/2, -1/4
-1/4, -1/4, -1/2
""")
    with pytest.raises(NotLinearInMu):
        solve_for_mu(A)


def test_internalize_round_trip():
    A2, mu = mu_substituted()
    for row in A2.entries:
        for e in row:
            assert externalize(internalize(e)) == e
    assert externalize(internalize(mu)) == mu


def test_default_transform_block_structure():
    A2, _ = mu_substituted()
    Ai = ParamMatrix3([[internalize(e) for e in row] for row in A2.entries])
    bf = build_transform(Ai)
    # companion-form block: c11 = c22 = 0, c12 = 1, c21 = -omega^2
    assert bf.c11.is_zero() and bf.c22.is_zero()
    assert bf.c12.is_constant() and bf.c12.constant_value() == 1
    assert bf.c21 == -bf.omega2()
    assert (bf.c11 + bf.c22).is_zero()


def test_omega_squared_positive_at_sample_point():
    A2, _ = mu_substituted()
    Ai = ParamMatrix3([[internalize(e) for e in row] for row in A2.entries])
    bf = build_transform(Ai)
    w2 = externalize(bf.omega2())
    pt = {"lambda": mpq(-18, 100), "n": mpq(-28, 1000)}  # lambda*n > root
    assert w2.evaluate(pt) > 0


@pytest.fixture(scope="module")
def small_reduction():
    A2, _ = mu_substituted()
    Ai = ParamMatrix3([[internalize(e) for e in row] for row in A2.entries])
    bf = build_transform(Ai)
    sys_t = transform_system(Ai, bf)
    cm = center_manifold(sys_t, 4)
    return Ai, bf, sys_t, cm


def test_invariance_residual_starts_above_truncation(small_reduction):
    _, _, sys_t, cm = small_reduction
    res = invariance_residual(sys_t, cm.h, through_degree=4)
    assert res.is_zero()


def test_manifold_has_no_linear_part(small_reduction):
    _, _, _, cm = small_reduction
    assert cm.h.min_degree() >= 2


def test_planar_reduction_truncates(small_reduction):
    _, bf, sys_t, cm = small_reduction
    ps = reduce_planar(sys_t, cm)
    assert ps.P.degree() <= 7
    assert ps.Q.degree() <= 7
    assert ps.P.min_degree() >= 2
    assert ps.c11 == bf.c11
