"""Float diagnostics: integrator order, positivity, report schema."""

import math

import pytest

from lvcert.errors import PositivityLoss
from lvcert.numeric import (cycle_report, integrate, integrate_field,
                            lv_field, poincare_crossings)


def final_state(traj):
    return traj.samples[-1][1:]


def test_integrator_order_on_closed_forms():
    """Halving tol shrinks the observed error by at least 4x (5th order
    pair; measured across two decades to smooth step-control noise)."""
    cases = [
        # x' = -x, exact e^{-t}
        (lambda x: [-x[0]], [1.0], lambda t: [math.exp(-t)]),
        # harmonic oscillator
        (lambda x: [x[1], -x[0]], [1.0, 0.0],
         lambda t: [math.cos(t), -math.sin(t)]),
    ]
    for f, x0, exact in cases:
        errs = []
        for tol in (1e-5, 1e-7, 1e-9):
            traj = integrate_field(f, x0, 10.0, tol)
            got = final_state(traj)
            want = exact(10.0)
            errs.append(max(abs(g - w) for g, w in zip(got, want)) + 1e-16)
        # two tol-decades: demand at least 4x per decade
        assert errs[0] / errs[1] >= 4.0
        assert errs[1] / errs[2] >= 4.0


def test_positivity_preserved_on_random_competitive_systems(rng):
    for _ in range(100):
        a = [[-rng.uniform(0.05, 2.0) for _ in range(3)] for _ in range(3)]
        x0 = [rng.uniform(0.2, 3.0) for _ in range(3)]
        traj = integrate(a, x0, 50.0, 1e-9)
        assert all(v > 0 for t, *x in traj.samples for v in x)


def test_positivity_loss_detected_for_hostile_field():
    # not an LV field: constant drift pushes through zero
    f = lambda x: [-1.0, 0.0, 0.0]
    with pytest.raises(PositivityLoss):
        integrate_field(f, [0.5, 1.0, 1.0], 10.0, 1e-9, check_positive=True)


def test_tol_range_guard():
    with pytest.raises(ValueError):
        integrate_field(lambda x: [0.0], [1.0], 1.0, 1e-2)


def test_poincare_crossings_on_circular_orbit():
    # planar rotation lifted to 3D; section plane x1 = 1 through (1,1,1)
    f = lambda x: [-(x[1] - 1.0), x[0] - 1.0, 0.0]
    traj = integrate_field(f, [1.0, 0.5, 1.0], 25.0, 1e-10)
    crossings = poincare_crossings(traj, field=f, normal=(1.0, 0.0, 0.0))
    # period 2*pi, start on the section: crossings at 2pi, 4pi, 6pi < 25
    assert len(crossings) == 3
    for t, x in crossings:
        assert abs(x[0] - 1.0) < 1e-6


def test_cycle_report_schema_and_reparse():
    a = [[-0.5, -0.25, -0.25], [-0.25, -0.5, -0.25], [-0.25, -0.25, -0.5]]
    csv = cycle_report(lambda pt: a, ["stage1"], [None], t_max=60.0)
    lines = csv.strip().splitlines()
    assert lines[0] == "stage,crossing,t,x1,x2,x3,distance"
    assert len(lines) >= 2
    for line in lines[1:]:
        cells = line.split(",")
        assert len(cells) == 7
        assert cells[0] == "stage1"
        for cell in cells[2:6]:
            if cell:
                # 17 significant digits round-trip exactly through repr
                assert float(cell) == float("%.17g" % float(cell))
                assert abs(float(cell) - float(cell)) < 1e-15


def test_cycle_report_constant_equilibrium_single_row():
    a = [[-0.5, -0.25, -0.25], [-0.25, -0.5, -0.25], [-0.25, -0.25, -0.5]]
    csv = cycle_report(lambda pt: a, ["eq"], [None], x0=(1.0, 1.0, 1.0),
                       t_max=20.0)
    lines = csv.strip().splitlines()
    assert lines[1].startswith("eq,")
