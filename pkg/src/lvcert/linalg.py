"""Small exact linear algebra over RatFunc (3x3) and generic field solves."""

from __future__ import annotations

from .errors import SingularSolve
from .ratfunc import RatFunc


def mat_map(m, f):
    return [[f(e) for e in row] for row in m]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(k)),
                 start=_zero_like(a[i][0])) for j in range(m)] for i in range(n)]


def _zero_like(e: RatFunc):
    return RatFunc.const(0, e.num.vars)


def mat_vec(a, v):
    return [sum((a[i][j] * v[j] for j in range(len(v))), start=_zero_like(v[0]))
            for i in range(len(a))]


def mat_trace(a):
    return sum((a[i][i] for i in range(len(a))), start=_zero_like(a[0][0]))


def det2(a, b, c, d):
    return a * d - b * c


def mat_det3(m):
    return (m[0][0] * det2(m[1][1], m[1][2], m[2][1], m[2][2])
            - m[0][1] * det2(m[1][0], m[1][2], m[2][0], m[2][2])
            + m[0][2] * det2(m[1][0], m[1][1], m[2][0], m[2][1]))


def principal_minors_sum(m):
    """Sum of the three principal 2x2 minors."""
    return (det2(m[1][1], m[1][2], m[2][1], m[2][2])
            + det2(m[0][0], m[0][2], m[2][0], m[2][2])
            + det2(m[0][0], m[0][1], m[1][0], m[1][1]))


def mat_inv3(m):
    d = mat_det3(m)
    if d.is_zero():
        raise ZeroDivisionError("singular 3x3 matrix")
    cof = [
        [det2(m[1][1], m[1][2], m[2][1], m[2][2]),
         -det2(m[0][1], m[0][2], m[2][1], m[2][2]),
         det2(m[0][1], m[0][2], m[1][1], m[1][2])],
        [-det2(m[1][0], m[1][2], m[2][0], m[2][2]),
         det2(m[0][0], m[0][2], m[2][0], m[2][2]),
         -det2(m[0][0], m[0][2], m[1][0], m[1][2])],
        [det2(m[1][0], m[1][1], m[2][0], m[2][1]),
         -det2(m[0][0], m[0][1], m[2][0], m[2][1]),
         det2(m[0][0], m[0][1], m[1][0], m[1][1])],
    ]
    return [[cof[i][j] / d for j in range(3)] for i in range(3)]


def solve_linear(matrix, rhs):
    """Gaussian elimination over the RatFunc field.

    `matrix` is a list of rows (possibly rank-deficient, possibly more
    columns than rows); returns a particular solution with every non-pivot
    unknown set to zero (the deterministic tie-break used by the Lyapunov
    solves).  Raises SingularSolve when the system is inconsistent.
    """
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    ncols = len(matrix[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        piv = rows[r][c]
        rows[r] = [e / piv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if not rows[i][ncols].is_zero():
            raise SingularSolve("inconsistent linear system")
    zero = _zero_like(rows[0][0])
    sol = [zero] * ncols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][ncols]
    return sol
