"""Acceptance criteria for the certified limit-cycle search.

One test per criterion, asserted exactly as stated (tolerances, runtime
budgets, golden values).  Criteria 9 and 10 are diagnostic and
non-blocking: 9 is opt-in via LVCERT_DIAGNOSTICS=1, 10 never fails the
build.  The expensive replay artifacts are computed once per module.
"""

import os
import time
from types import SimpleNamespace

import pytest
from gmpy2 import mpq

from lvcert import refdata
from lvcert.focal import focal_values, perturbation_schedule, verify_schedule
from lvcert.gcdres import poly_divides
from lvcert.linalg import mat_inv3, mat_mul
from lvcert.lvmodel import CLASS_31, ParamMatrix3, classify, zeeman_invariants
from lvcert.poly import SparsePoly
from lvcert.ratfunc import RatFunc
from lvcert.realroots import mrealroot
from lvcert.reduction import (build_transform, center_manifold, externalize,
                              internalize, reduce_planar, solve_for_mu,
                              transform_system)

PV = ("lambda", "n")


def reference_matrix():
    return ParamMatrix3.from_text(refdata.MATRIX_TEXT)


def reference_mu():
    mu = solve_for_mu(reference_matrix())
    return RatFunc(mu.num.restricted().with_vars(PV),
                   mu.den.restricted().with_vars(PV))


@pytest.fixture(scope="module")
def replay():
    """Full replay reduction with the published transform (shared by
    criteria 3, 4, 5, 7 and 10)."""
    t0 = time.monotonic()
    A = reference_matrix()
    mu = reference_mu()
    A2 = A.substitute_mu(mu)
    A2i = ParamMatrix3([[internalize(e) for e in row] for row in A2.entries])
    Ti = [[internalize(e) for e in row]
          for row in refdata.reference_transform()]
    bf = build_transform(A2i, explicit_T=Ti)
    sys_t = transform_system(A2i, bf)
    cm = center_manifold(sys_t, 6)
    ps = reduce_planar(sys_t, cm)
    det_c = bf.omega2()
    fv = focal_values(ps, scale=bf.c21 * bf.c21 / (det_c * det_c))
    fv.lv1 = externalize(fv.lv1)
    fv.lv2 = externalize(fv.lv2)
    fv.lv3 = externalize(fv.lv3)
    return SimpleNamespace(A=A, mu=mu, A2=A2, fv=fv,
                           elapsed=time.monotonic() - t0)


@pytest.fixture(scope="module")
def isolation(replay):
    """Criterion 5's mrealroot call on the computed system (shared with
    criteria 7 and 10)."""
    t0 = time.monotonic()
    fv = replay.fv
    det_rf = _det3(replay.A2.entries)
    sign_polys = [fv.lv1.den, fv.lv2.den, fv.lv3.num, fv.lv3.den, det_rf.num]
    boxes = mrealroot((fv.lv1.num, fv.lv2.num), PV, mpq(1, 10 ** 10),
                      sign_polys)
    return SimpleNamespace(boxes=boxes, elapsed=time.monotonic() - t0)


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def test_criterion_01_mu_elimination_golden():
    t0 = time.monotonic()
    mu = reference_mu()
    expect = RatFunc(SparsePoly.from_text(refdata.MU_NUM, PV),
                     SparsePoly.from_text(refdata.MU_DEN, PV))
    assert mu == expect
    assert time.monotonic() - t0 < 1.0


def test_criterion_02_replay_block_form():
    t0 = time.monotonic()
    A2 = reference_matrix().substitute_mu(reference_mu())
    T = refdata.reference_transform()
    M = mat_mul(mat_mul(T, A2.entries), mat_inv3(T))
    expect = refdata.reference_block()
    for i in range(3):
        for j in range(3):
            assert M[i][j] == expect[i][j], "block entry (%d,%d)" % (i, j)
    assert time.monotonic() - t0 < 30.0


def test_criterion_03_lv1_oracle(replay):
    tables = refdata.reference_focal_tables()
    f1, f2 = tables["lv1"]
    lv1 = replay.fv.lv1
    # cross-multiplication: lv1.num * f2 = const * f1 * lv1.den, const > 0
    lhs = lv1.num * f2
    rhs = f1 * lv1.den
    const = RatFunc(lhs, rhs)
    assert const.is_constant()
    assert const.constant_value() > 0
    assert lhs * const.den == rhs * SparsePoly.const(
        const.constant_value() * const.den.constant_value(), lhs.vars)
    assert replay.elapsed < 15 * 60


def test_criterion_04_higher_focal_structure(replay):
    t0 = time.monotonic()
    tables = refdata.reference_focal_tables()
    f1, f2 = tables["lv1"]
    lv1 = replay.fv.lv1
    const = RatFunc(lv1.num * f2, f1 * lv1.den)
    if const.is_constant() and const.constant_value() == 1:
        lv2_num = replay.fv.lv2.num
        lv3_num = replay.fv.lv3.num
        assert max(sum(e) for e in lv2_num.terms) == 26
        assert len(lv2_num.terms) == 63
        assert max(sum(e) for e in lv3_num.terms) == 50
        assert len(lv3_num.terms) == 169
    else:
        factors = refdata.reference_denominator_factors()
        failures = []
        for key, den in (("lv2", replay.fv.lv2.den),
                         ("lv3", replay.fv.lv3.den)):
            for f in factors[key]:
                if not poly_divides(f, den):
                    failures.append("%s den lacks factor %s"
                                    % (key, f.to_text()))
        assert not failures, "; ".join(failures)
    assert replay.elapsed + (time.monotonic() - t0) < 45 * 60


def test_criterion_05_root_isolation_golden(replay, isolation):
    assert isolation.elapsed < 30 * 60
    boxes = isolation.boxes
    failures = []
    certified = [b for b in boxes if b.certified]
    if len(certified) != 1:
        failures.append("expected exactly one certified box, got %d"
                        % len(certified))
    lam_lo, lam_hi = refdata.BOX_LAMBDA
    n_lo, n_hi = refdata.BOX_N
    inside = [b for b in certified
              if lam_lo <= b.lambda_iv.lo and b.lambda_iv.hi <= lam_hi
              and n_lo <= b.n_iv.lo and b.n_iv.hi <= n_hi]
    if not inside:
        failures.append("no certified box lies inside the published "
                        "lambda1 x n1 box")
    matching = [b for b in certified
                if tuple(b.signs) == refdata.BOX_SIGNS]
    if not matching:
        failures.append("no certified box carries the published sign "
                        "vector %s; got %s"
                        % (list(refdata.BOX_SIGNS),
                           [list(b.signs) for b in certified]))
    assert not failures, "; ".join(failures)


def test_criterion_06_class_certification():
    t0 = time.monotonic()
    A = reference_matrix()
    mu = reference_mu()
    mid = {"lambda": sum(refdata.BOX_LAMBDA) / 2,
           "n": sum(refdata.BOX_N) / 2}
    mid["mu"] = mu.evaluate(mid)
    inv = zeeman_invariants(A, mid)
    # published pattern: R12 = Q33 = R21 = -R23 = R32 = Q22 = R31 = R13 = -1
    assert inv.alpha_signs[(0, 1)] == -1
    assert inv.alpha_signs[(1, 0)] == -1
    assert inv.alpha_signs[(1, 2)] == 1
    assert inv.alpha_signs[(2, 1)] == -1
    assert inv.alpha_signs[(2, 0)] == -1
    assert inv.alpha_signs[(0, 2)] == -1
    assert inv.beta_signs[1] == -1
    assert inv.beta_signs[2] == -1
    assert classify(inv) == CLASS_31
    assert time.monotonic() - t0 < 10.0


def qualifying_box(isolation):
    for box in isolation.boxes:
        if box.certified and all(s != 0 for s in box.signs):
            return box
    pytest.skip("no strictly-signed certified box to build a schedule on")


@pytest.fixture(scope="module")
def schedule(replay, isolation):
    box = qualifying_box(isolation)
    lv3_sign = 1 if box.signs[2] * box.signs[3] > 0 else -1
    target = (-lv3_sign, lv3_sign, -lv3_sign, lv3_sign)
    t0 = time.monotonic()
    sched = perturbation_schedule(replay.fv, box, replay.A, mpq(1, 1000),
                                  target_signs=target)
    return SimpleNamespace(sched=sched, box=box,
                           elapsed=time.monotonic() - t0)


def test_criterion_07_perturbation_schedule(replay, schedule):
    sched = schedule.sched
    assert schedule.elapsed < 10 * 60
    assert len(sched.stages) == 3
    verify_schedule(sched, replay.fv, replay.A)
    # alternating chain at the final stage: lv0 and lv2 against lv1 and lv3
    t0, t1, t2, t3 = sched.target_signs
    assert t0 == -t1 and t2 == -t3 and t1 == -t2
    last = sched.stages[-1]
    pn = {k: last.point[k] for k in ("lambda", "n")}
    v1 = replay.fv.lv1.evaluate(pn)
    v2 = replay.fv.lv2.evaluate(pn)
    v3 = replay.fv.lv3.evaluate(pn)
    for val, want in ((v1, t1), (v2, t2), (v3, t3)):
        assert (1 if val > 0 else -1) == want
    # magnitude chain with epsilon = 1/1000
    assert abs(v1) <= mpq(1, 1000) * abs(v2)


def test_criterion_08_property_suites():
    import subprocess
    import sys

    here = os.path.dirname(__file__)
    suites = ["test_kernel.py", "test_sturm.py", "test_gcdres.py",
              "test_intervals.py", "test_focal.py", "test_properties.py"]
    t0 = time.monotonic()
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider"]
        + [os.path.join(here, s) for s in suites],
        cwd=os.path.dirname(here), capture_output=True, text=True)
    elapsed = time.monotonic() - t0
    assert proc.returncode == 0, proc.stdout[-2000:]
    assert elapsed < 5 * 60


@pytest.mark.skipif(os.environ.get("LVCERT_DIAGNOSTICS") != "1",
                    reason="diagnostic, non-blocking; set "
                           "LVCERT_DIAGNOSTICS=1 to run")
def test_criterion_09_statistical_sanity(tmp_path):
    from lvcert.search import SearchConfig, search

    cfg = SearchConfig(seed=1, count=500, out_dir=str(tmp_path),
                       budget_seconds=float(os.environ.get(
                           "LVCERT_DIAG_BUDGET", "60")))
    report = search(cfg)
    assert report.generated >= 500
    # qualifying class-31 certificates are rare
    assert len(report.certificates) <= report.generated // 100
    assert sum(report.reason_tally.values()) == len(report.rejections)
    assert (tmp_path / "summary.md").exists()


@pytest.mark.xfail(strict=False,
                   reason="diagnostic, non-blocking: float return-map "
                          "contraction check")
def test_criterion_10_numeric_diagnostic(replay, schedule):
    from lvcert.numeric import cycle_report

    last = schedule.sched.stages[-1]
    A = replay.A

    def matrix_at(pt):
        return [[float(e) for e in row] for row in A.evaluate(pt)]

    csv = cycle_report(matrix_at, [last.name], [last.point], t_max=400.0,
                       tol=1e-10)
    rows = [r.split(",") for r in csv.strip().splitlines()[1:]
            if r.split(",")[6]]
    dists = [float(r[6]) for r in rows]
    assert len(dists) >= 5
    assert all(b < a for a, b in zip(dists, dists[1:]))
