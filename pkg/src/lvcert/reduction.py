"""Hopf eigenvalue condition, block-diagonalization and center-manifold
reduction of the transformed 3D system to a planar one.

Naming note: the free matrix parameter is `lambda`; the real eigenvalue of
the block form is called `r` throughout (it equals trace(A) whenever the
eigenvalue condition holds, since the remaining pair sums to zero).
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .errors import (DegenerateSpectrum, NotBlockDiagonal, NotLinearInMu,
                     SingularHomological, ZeroCoefficient)
from .linalg import (mat_det3, mat_inv3, mat_mul, mat_trace,
                     principal_minors_sum, solve_linear)
from .lvmodel import ParamMatrix3
from .planar import YPoly
from .poly import SparsePoly
from .ratfunc import RatFunc


def internalize(rf: RatFunc) -> RatFunc:
    """Re-express a rational function of (lambda, n) in (n, u), u = lambda*n.

    The template couples lambda and n almost exclusively through their
    product, so the internal pipeline runs in product coordinates where
    gcd reduction is nearly univariate; `externalize` inverts the map.
    """

    def conv(p: SparsePoly):
        p = p.restricted()
        if "u" in p.vars:
            raise ValueError("already in internal coordinates")
        p = p.with_vars(("lambda", "n")) if "lambda" in p.vars \
            else p.with_vars(("n",)).with_vars(("lambda", "n"))
        shift = max((i - j for (i, j) in p.terms), default=0)
        shift = max(shift, 0)
        terms = {(j - i + shift, i): c for (i, j), c in p.terms.items()}
        return SparsePoly(("n", "u"), terms), shift

    num, s_num = conv(rf.num)
    den, s_den = conv(rf.den)
    n_pow = SparsePoly(("n", "u"), {(1, 0): mpq(1)})
    return RatFunc(num * n_pow ** s_den, den * n_pow ** s_num)


def externalize(rf: RatFunc) -> RatFunc:
    """Inverse of `internalize`: substitute u = lambda * n back."""

    def conv(p: SparsePoly):
        p = p.restricted()
        if "lambda" in p.vars:
            raise ValueError("already in external coordinates")
        p = p.with_vars(("n", "u")) if "n" in p.vars \
            else p.with_vars(("u",)).with_vars(("n", "u"))
        terms = {(i, k + i): c for (k, i), c in p.terms.items()}
        return SparsePoly(("lambda", "n"), terms)

    return RatFunc(conv(rf.num), conv(rf.den))


def eigencondition_residual(A: ParamMatrix3) -> RatFunc:
    """det(A) - (sum of principal 2x2 minors) * trace(A).

    Identically zero iff the eigenvalues are {trace(A), +-i*omega} with
    omega^2 the minor sum (for positive minor sum).
    """
    m = A.entries
    return mat_det3(m) - principal_minors_sum(m) * mat_trace(m)


def omega_squared(m) -> RatFunc:
    """Sum of principal 2x2 minors = omega^2 on the eigencondition locus."""
    return principal_minors_sum(m)


def solve_for_mu(A: ParamMatrix3) -> RatFunc:
    """The unique mu(lambda, n) making the eigencondition hold identically."""
    delta = eigencondition_residual(A)
    num = delta.num
    if "mu" not in num.vars or num.degree_in("mu") != 1:
        raise NotLinearInMu("eigencondition residual has mu-degree %d"
                            % (num.degree_in("mu") if "mu" in num.vars else -1))
    i = num.vars.index("mu")
    rest_vars = tuple(v for v in num.vars if v != "mu")
    c0, c1 = {}, {}
    for expo, coeff in num.terms.items():
        rest = tuple(e for k, e in enumerate(expo) if k != i)
        (c1 if expo[i] else c0)[rest] = coeff
    lead = SparsePoly(rest_vars, c1)
    if lead.is_zero():
        raise ZeroCoefficient("mu coefficient vanishes identically")
    const = SparsePoly(rest_vars, c0)
    return RatFunc(-const, lead)


@dataclass
class BlockForm:
    """Transform T and block-diagonalized linear part C = T A T^-1."""

    T: list
    C: list
    c11: RatFunc
    c12: RatFunc
    c21: RatFunc
    c22: RatFunc
    r: RatFunc

    def omega2(self) -> RatFunc:
        return self.c11 * self.c22 - self.c12 * self.c21


def _rref(mat):
    """Reduced row echelon form over RatFunc; returns (rows, pivot_cols)."""
    rows = [list(r) for r in mat]
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
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
    return rows, pivots


def _kernel_basis(mat):
    """Basis of the null space of a 3x3 RatFunc matrix, echelon-normalized."""
    rows, pivots = _rref(mat)
    free = [c for c in range(3) if c not in pivots]
    variables = mat[0][0].num.vars
    zero = RatFunc.const(0, variables)
    one = RatFunc.const(1, variables)
    basis = []
    for fc in free:
        vec = [zero, zero, zero]
        vec[fc] = one
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fc]
        basis.append(vec)
    return basis


def build_transform(A: ParamMatrix3, explicit_T=None) -> BlockForm:
    """Block-diagonalize A (entries already reduced to (lambda, n)).

    With `explicit_T` (replay mode) the supplied transform is verified to
    produce the zero pattern and the c-entries are read off.  Otherwise the
    default deterministic construction is used: row3 spans the left kernel
    of (A - r I), row1 the first echelon basis vector of the left kernel of
    (A^2 + omega^2 I), and row2 = row1 * A, which gives c11 = c22 = 0,
    c12 = 1, c21 = -omega^2.
    """
    m = A.entries
    r = mat_trace(m)
    w2 = omega_squared(m)
    delta = mat_det3(m) - w2 * r
    if not delta.is_zero():
        raise DegenerateSpectrum("eigencondition residual is not identically zero")
    if w2.is_zero():
        raise DegenerateSpectrum("omega^2 vanishes identically")
    if r.is_zero():
        raise DegenerateSpectrum("real eigenvalue (trace) vanishes identically")

    if explicit_T is not None:
        T = [[e if isinstance(e, RatFunc) else RatFunc.const(e) for e in row]
             for row in explicit_T]
        C = mat_mul(mat_mul(T, m), mat_inv3(T))
        for (i, j) in ((0, 2), (1, 2), (2, 0), (2, 1)):
            if not C[i][j].is_zero():
                raise NotBlockDiagonal("C[%d][%d] is not identically zero" % (i, j))
        bf = BlockForm(T=T, C=C, c11=C[0][0], c12=C[0][1],
                       c21=C[1][0], c22=C[1][1], r=C[2][2])
        if not (bf.c11 + bf.c22).is_zero():
            raise NotBlockDiagonal("c11 + c22 is not identically zero")
        return bf

    # default construction
    variables = m[0][0].num.vars
    zero = RatFunc.const(0, variables)
    At = [[m[j][i] for j in range(3)] for i in range(3)]
    shifted = [[At[i][j] - (r if i == j else zero) for j in range(3)] for i in range(3)]
    k3 = _kernel_basis(shifted)
    if len(k3) != 1:
        raise DegenerateSpectrum("left eigenspace of r has dimension %d" % len(k3))
    row3 = k3[0]

    A2 = mat_mul(m, m)
    B = [[A2[j][i] + (w2 if i == j else zero) for j in range(3)] for i in range(3)]
    k1 = _kernel_basis(B)
    if len(k1) != 2:
        raise DegenerateSpectrum("left kernel of A^2 + w^2 I has dimension %d" % len(k1))
    row1 = k1[0]
    row2 = [sum((row1[t] * m[t][j] for t in range(3)), start=zero) for j in range(3)]
    T = [row1, row2, row3]
    det = mat_det3(T)
    if det.is_zero():
        raise DegenerateSpectrum("default transform is singular")
    C = [[zero, RatFunc.const(1, variables), zero],
         [-w2, zero, zero],
         [zero, zero, r]]
    return BlockForm(T=T, C=C, c11=zero, c12=C[0][1], c21=-w2, c22=zero, r=r)


@dataclass
class TransformedSystem:
    """y' = C y + G(y) with G purely quadratic (YPoly in y1, y2, y3)."""

    bf: BlockForm
    G: list


def transform_system(A: ParamMatrix3, bf: BlockForm) -> TransformedSystem:
    """Exact quadratic vector field in y = T (x - 1) coordinates.

    x' has components x_i * (A(x - 1))_i, so with u = T^-1 y the field is
    y' = C y + T diag(u) A u.
    """
    m = A.entries
    Tinv = mat_inv3(bf.T)
    zero = RatFunc.const(0, m[0][0].num.vars)

    def linear_form(coeffs):
        return YPoly(3, {(1, 0, 0): coeffs[0], (0, 1, 0): coeffs[1],
                         (0, 0, 1): coeffs[2]})

    u = [linear_form(Tinv[i]) for i in range(3)]
    w = [linear_form([sum((m[i][t] * Tinv[t][j] for t in range(3)), start=zero)
                      for j in range(3)]) for i in range(3)]
    uw = [u[i] * w[i] for i in range(3)]
    G = []
    for i in range(3):
        acc = YPoly.zero(3)
        for j in range(3):
            acc = acc + uw[j].scale(bf.T[i][j])
        G.append(acc)
    return TransformedSystem(bf=bf, G=G)


@dataclass
class CenterManifold:
    """y3 = h(y1, y2), homogeneous degrees 2..max_degree."""

    h: YPoly
    max_degree: int

    def coeff(self, j: int, k_minus_j: int) -> RatFunc:
        fallback = RatFunc.const(0)
        return self.h.coeffs.get((j, k_minus_j), fallback)


def _homological_solve(c11, c12, c21, c22, r, k, rhs: YPoly) -> YPoly:
    """Solve L[h_k] = rhs_k where L is the degree-k homological operator
    h -> dh/dy1*(c11 y1 + c12 y2) + dh/dy2*(c21 y1 + c22 y2) - r h."""
    basis = [(j, k - j) for j in range(k + 1)]
    index = {e: i for i, e in enumerate(basis)}
    zero = RatFunc.const(0, c11.num.vars)
    mat = [[zero for _ in basis] for _ in basis]
    for col, (a, b) in enumerate(basis):
        contrib = {(a, b): c11 * a + c22 * b - r}
        if a:
            key = (a - 1, b + 1)
            contrib[key] = contrib.get(key, zero) + c12 * a
        if b:
            key = (a + 1, b - 1)
            contrib[key] = contrib.get(key, zero) + c21 * b
        for e, val in contrib.items():
            mat[index[e]][col] = val
    vec = [rhs.coeffs.get(e, zero) for e in basis]
    try:
        sol = solve_linear(mat, vec)
    except Exception as exc:
        raise SingularHomological(str(exc)) from exc
    # the degree-k solve must be uniquely solvable; verify full rank
    rows, pivots = _rref(mat)
    if len(pivots) != len(basis):
        raise SingularHomological("degree-%d homological operator is singular" % k)
    return YPoly(2, {e: sol[index[e]] for e in basis})


def center_manifold(sys: TransformedSystem, max_degree: int = 6,
                    checkpoint=None) -> CenterManifold:
    """Solve the invariance equation degree by degree up to max_degree.

    Residual terms of the invariance equation then all have total degree
    >= max_degree + 1.  `checkpoint` (if given) is called before each
    degree step; drivers use it to enforce time budgets.
    """
    bf = sys.bf
    h = YPoly.zero(2)
    for k in range(2, max_degree + 1):
        if checkpoint is not None:
            checkpoint()
        res = invariance_residual(sys, h, through_degree=k)
        rhs = res.homogeneous_part(k)
        # L[h_k] = -rhs
        h_k = _homological_solve(bf.c11, bf.c12, bf.c21, bf.c22, bf.r, k, -rhs)
        h = h + h_k
    return CenterManifold(h=h, max_degree=max_degree)


def invariance_residual(sys: TransformedSystem, h: YPoly,
                        through_degree: int) -> YPoly:
    """dh/dy1 * y1' + dh/dy2 * y2' - y3', with y3 = h, truncated."""
    bf = sys.bf
    d = through_degree
    f1 = _component(sys, 0, h, d)
    f2 = _component(sys, 1, h, d)
    f3 = _component(sys, 2, h, d)
    res = h.derivative(0).mul(f1, d) + h.derivative(1).mul(f2, d) - f3
    return res.truncate(d)


def _component(sys: TransformedSystem, i: int, h: YPoly, max_degree: int) -> YPoly:
    """Component i of the field with y3 = h substituted, truncated."""
    bf = sys.bf
    lin3 = YPoly(3, {(1, 0, 0): bf.C[i][0], (0, 1, 0): bf.C[i][1],
                     (0, 0, 1): bf.C[i][2]})
    full = lin3 + sys.G[i]
    return full.subs_last(h, max_degree)


@dataclass
class PlanarSystem:
    """Reduced planar field: linear block plus nonlinearities P, Q (deg >= 2)."""

    c11: RatFunc
    c12: RatFunc
    c21: RatFunc
    c22: RatFunc
    P: YPoly
    Q: YPoly


def reduce_planar(sys: TransformedSystem, cm: CenterManifold,
                  max_degree: int = 7) -> PlanarSystem:
    """Substitute y3 = h into the first two components, truncate at degree 7."""
    bf = sys.bf
    P = sys.G[0].subs_last(cm.h, max_degree).drop_below(2)
    Q = sys.G[1].subs_last(cm.h, max_degree).drop_below(2)
    return PlanarSystem(c11=bf.c11, c12=bf.c12, c21=bf.c21, c22=bf.c22,
                        P=P.truncate(max_degree), Q=Q.truncate(max_degree))
