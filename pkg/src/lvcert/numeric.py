"""Floating-point sanity layer: trajectory integration and return maps.

Nothing in this module certifies anything.  It integrates the original
system at exact parameter points from a certificate, detects crossings of
a Poincare section and emits plot-ready CSV tables; all conclusions stay
with the exact-arithmetic modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import PositivityLoss, StepFailure

# Dormand-Prince 5(4) embedded pair
_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_DP_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
          187 / 2100, 1 / 40)


@dataclass
class Trajectory:
    samples: list  # (t, x1, x2, x3)
    steps: int = 0
    rejected: int = 0
    tol: float = 1e-9


def lv_field(a):
    """Right-hand side of the model for a float 3x3 matrix."""
    def f(x):
        return [x[i] * sum(a[i][j] * (x[j] - 1.0) for j in range(3))
                for i in range(3)]
    return f


def _rk_step(f, x, h):
    k = []
    for i in range(7):
        xi = list(x)
        for j, aij in enumerate(_DP_A[i]):
            if aij:
                for d in range(len(x)):
                    xi[d] += h * aij * k[j][d]
        k.append(f(xi))
    x5 = [x[d] + h * sum(b * k[i][d] for i, b in enumerate(_DP_B5))
          for d in range(len(x))]
    err = max(abs(h * sum((b5 - b4) * k[i][d]
                          for i, (b5, b4) in enumerate(zip(_DP_B5, _DP_B4))))
              for d in range(len(x)))
    return x5, err


def integrate_field(f, x0, t_max, tol, check_positive=False) -> Trajectory:
    """Adaptive embedded Runge-Kutta 5(4) for an arbitrary field."""
    if not 1e-13 < tol < 1e-3:
        raise ValueError("tol out of the supported range")
    t = 0.0
    x = [float(v) for v in x0]
    traj = Trajectory(samples=[(t, *x)], tol=tol)
    h = min(1e-2, t_max / 10) or 1e-2
    hmin = 1e-14 * max(1.0, t_max)
    while t < t_max:
        h = min(h, t_max - t)
        x_new, err = _rk_step(f, x, h)
        if err <= tol or h <= hmin:
            if h <= hmin and err > tol:
                raise StepFailure("step size underflow at t = %g" % t)
            t += h
            x = x_new
            if check_positive and any(v < -tol for v in x):
                raise PositivityLoss("coordinate crossed zero at t = %g" % t)
            traj.samples.append((t, *x))
            traj.steps += 1
        else:
            traj.rejected += 1
        scale = 0.9 * (tol / err) ** 0.2 if err > 0 else 5.0
        h *= min(5.0, max(0.2, scale))
    return traj


def integrate(a_point, x0, t_max, tol) -> Trajectory:
    """Integrate the model at a (rational or float) parameter matrix."""
    if any(float(v) <= 0 for v in x0):
        raise ValueError("initial point must be strictly positive")
    a = [[float(e) for e in row] for row in a_point]
    return integrate_field(lv_field(a), x0, t_max, tol, check_positive=True)


def poincare_crossings(traj: Trajectory, field=None, point=(1.0, 1.0, 1.0),
                       normal=(1.0, 1.0, 1.0), t_tol=1e-10) -> list:
    """Transversal section crossings in the positive orientation.

    Crossings are detected by sign change of the section function along
    the samples, then refined by the secant method with short fixed-step
    re-integration from the preceding sample; `field` defaults to finite
    differencing along the stored samples when not supplied.
    """
    nrm = [float(v) for v in normal]
    if not any(nrm):
        raise ValueError("zero section normal")
    p0 = [float(v) for v in point]

    def s_of(x):
        return sum((x[d] - p0[d]) * nrm[d] for d in range(3))

    out = []
    for k in range(1, len(traj.samples)):
        t0, *x0 = traj.samples[k - 1]
        t1, *x1 = traj.samples[k]
        s0, s1 = s_of(x0), s_of(x1)
        if s0 < 0 <= s1 and s0 != s1:
            if field is None:
                # linear interpolation fallback on the stored samples
                frac = -s0 / (s1 - s0)
                tc = t0 + frac * (t1 - t0)
                xc = [x0[d] + frac * (x1[d] - x0[d]) for d in range(3)]
                out.append((tc, tuple(xc)))
                continue
            out.append(_refine_crossing(field, t0, x0, t1, s0, s1, s_of, t_tol))
    return out


def _advance(field, x, dt, nsub=16):
    """Fixed-step classical RK4 from a sample, for crossing refinement."""
    h = dt / nsub
    x = list(x)
    for _ in range(nsub):
        k1 = field(x)
        k2 = field([x[d] + 0.5 * h * k1[d] for d in range(3)])
        k3 = field([x[d] + 0.5 * h * k2[d] for d in range(3)])
        k4 = field([x[d] + h * k3[d] for d in range(3)])
        x = [x[d] + h / 6 * (k1[d] + 2 * k2[d] + 2 * k3[d] + k4[d])
             for d in range(3)]
    return x


def _refine_crossing(field, t0, x0, t1, s0, s1, s_of, t_tol):
    ta, sa = 0.0, s0
    tb, sb = t1 - t0, s1
    tc = tb
    xc = None
    for _ in range(80):
        tc = tb - sb * (tb - ta) / (sb - sa)
        if not ta <= tc <= tb:
            tc = 0.5 * (ta + tb)
        xc = _advance(field, x0, tc)
        sc = s_of(xc)
        if abs(tb - ta) < t_tol:
            break
        if sc < 0:
            ta, sa = tc, sc
        else:
            tb, sb = tc, sc
    return (t0 + tc, tuple(xc if xc is not None else x0))


def cycle_report(a_point, stage_names, stage_points, x0=None, t_max=200.0,
                 tol=1e-10) -> str:
    """CSV with per-stage return-map crossings and successive distances.

    `a_point` is a callable mapping a stage parameter point to the float
    3x3 matrix.  Columns: stage, crossing, t, x1, x2, x3, distance (the
    Euclidean gap to the previous crossing; empty on the first).
    """
    rows = ["stage,crossing,t,x1,x2,x3,distance"]
    for name, pt in zip(stage_names, stage_points):
        a = a_point(pt)
        f = lv_field(a)
        start = x0 or (1.001, 1.0, 1.0)
        traj = integrate_field(f, start, t_max, tol, check_positive=True)
        crossings = poincare_crossings(traj, field=f)
        prev = None
        for i, (t, x) in enumerate(crossings):
            dist = ""
            if prev is not None:
                dist = "%.17g" % math.sqrt(sum((x[d] - prev[d]) ** 2
                                               for d in range(3)))
            rows.append("%s,%d,%.17g,%.17g,%.17g,%.17g,%s"
                        % (name, i, t, x[0], x[1], x[2], dist))
            prev = x
        if not crossings:
            rows.append("%s,,,,,," % name)
    return "\n".join(rows) + "\n"
