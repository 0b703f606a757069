"""The 3D competitive Lotka-Volterra model and its boundary invariants.

The system is dx_i/dt = x_i * sum_j a_ij (x_j - 1) with every a_ij < 0, so
(1,1,1) is an interior equilibrium by construction.  Boundary equilibria
and the sign invariants built from them decide the Zeeman class.

Sign convention (locked by the golden class-31 test): write the system as
dx_i/dt = x_i (b_i - sum_j c_ij x_j) with c = -a > 0 and b_i = sum_j c_ij;
then alpha_ij = b_i c_ji / c_ii - b_j and beta_kk = b_k - (c Q_k)_k, and
the reported signs are R_ij = sgn(alpha_ij), Q_kk = sgn(beta_kk).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .errors import (DegenerateSign, IncompleteInvariants, NotCompetitive,
                     ParseError, SingularFace)
from .intervals import RatInterval, eval_interval_ratfunc
from .poly import SparsePoly, rational, rational_str
from .ratfunc import RatFunc

PARAM_VARS = ("lambda", "n", "mu")

CLASS_31 = "Class31"
CLASS_30_BY_DUALITY = "Class30ByDuality"
OTHER_OR_UNKNOWN = "OtherOrUnknown"


def _rf(value) -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, SparsePoly):
        return RatFunc.from_poly(value.with_vars(PARAM_VARS))
    return RatFunc.const(rational(value), PARAM_VARS)


def _sign(q) -> int:
    return (q > 0) - (q < 0)


class ParamMatrix3:
    """3x3 interaction matrix with rational-function entries in (lambda, n, mu).

    `template` tags each entry: ("fixed", q), ("sym", name) for a bare
    parameter, or ("n_mult", k) for k*n with a fixed rational multiplier.
    """

    def __init__(self, entries, template=None):
        self.entries = [[_rf(e) for e in row] for row in entries]
        if len(self.entries) != 3 or any(len(r) != 3 for r in self.entries):
            raise ValueError("need a 3x3 matrix")
        self.template = template

    @classmethod
    def from_template(cls, template):
        entries = []
        for row in template:
            out = []
            for tag in row:
                kind = tag[0]
                if kind == "fixed":
                    out.append(RatFunc.const(tag[1], PARAM_VARS))
                elif kind == "sym":
                    out.append(RatFunc.variable(tag[1], PARAM_VARS))
                elif kind == "n_mult":
                    out.append(RatFunc.variable("n", PARAM_VARS) * rational(tag[1]))
                else:
                    raise ValueError("unknown template tag %r" % (tag,))
            entries.append(out)
        return cls(entries, template=template)

    def evaluate(self, point) -> list:
        """3x3 of exact rationals at {lambda: q, n: q, mu: q}."""
        return [[e.evaluate(point) for e in row] for row in self.entries]

    def substitute_mu(self, mu: RatFunc) -> "ParamMatrix3":
        """Entries as rational functions of (lambda, n) after mu = mu(lambda, n)."""
        out = []
        for row in self.entries:
            new_row = []
            for e in row:
                if "mu" in e.num.active_vars() or "mu" in e.den.active_vars():
                    new_row.append(_substitute_mu_entry(e, mu))
                else:
                    new_row.append(RatFunc(e.num.restricted().with_vars(("lambda", "n")),
                                           e.den.restricted().with_vars(("lambda", "n"))))
            out.append(new_row)
        return ParamMatrix3(out, template=self.template)

    # -- serialization ------------------------------------------------

    def to_text(self) -> str:
        lines = []
        for i, row in enumerate(self.entries):
            cells = []
            for j, e in enumerate(row):
                tag = self.template[i][j] if self.template else None
                if tag and tag[0] == "sym":
                    cells.append(tag[1])
                elif tag and tag[0] == "n_mult":
                    cells.append("%s * n" % rational_str(tag[1]))
                elif e.is_constant():
                    cells.append(rational_str(e.constant_value()))
                else:
                    cells.append(e.to_text())
            lines.append(", ".join(cells))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ParamMatrix3":
        rows = [line for line in text.strip().splitlines() if line.strip()]
        if len(rows) != 3:
            raise ParseError("matrix file must have 3 non-empty lines")
        entries, template = [], []
        for line in rows:
            cells = [c.strip() for c in line.split(",")]
            if len(cells) != 3:
                raise ParseError("each matrix row needs 3 comma-separated entries")
            erow, trow = [], []
            for cell in cells:
                try:
                    e, tag = _parse_entry(cell)
                except (ValueError, ZeroDivisionError) as exc:
                    raise ParseError("bad matrix entry %r: %s" % (cell, exc)) from exc
                erow.append(e)
                trow.append(tag)
            entries.append(erow)
            template.append(trow)
        return cls(entries, template=template)


def _parse_entry(cell: str):
    if cell in ("lambda", "mu", "n"):
        return RatFunc.variable(cell, PARAM_VARS), ("sym", cell)
    if "*" in cell:
        k, _, rest = cell.partition("*")
        if rest.strip() == "n":
            q = rational(k.strip())
            return RatFunc.variable("n", PARAM_VARS) * q, ("n_mult", q)
        return RatFunc.from_text(cell, PARAM_VARS), None
    if any(v in cell for v in PARAM_VARS) or "(" in cell:
        return RatFunc.from_text(cell, PARAM_VARS), None
    q = rational(cell)
    return RatFunc.const(q, PARAM_VARS), ("fixed", q)


def _substitute_mu_entry(e: RatFunc, mu: RatFunc) -> RatFunc:
    def sub(p: SparsePoly) -> RatFunc:
        # p(lambda, n, mu) -> rational function of (lambda, n)
        out = RatFunc.const(0, ("lambda", "n"))
        i = p.vars.index("mu")
        by_power: dict = {}
        for expo, coeff in p.terms.items():
            rest = tuple(x for k, x in enumerate(expo) if k != i)
            by_power.setdefault(expo[i], {})[rest] = coeff
        rest_vars = tuple(v for v in p.vars if v != "mu")
        for power, terms in by_power.items():
            part = RatFunc.from_poly(SparsePoly(rest_vars, terms))
            out = out + part * mu ** power
        return out

    return sub(e.num) / sub(e.den)


@dataclass
class ZeemanInvariants:
    """Growth rates, boundary equilibria and their sign invariants.

    Signs are +1 / -1 / 0, or None for "undetermined" (absent face point).
    Indices are 0-based internally; reports print them 1-based.
    """

    b: list
    R: list
    Q: list  # per axis k: (x_i, x_j) coordinates or None if absent/singular
    alpha_signs: dict = field(default_factory=dict)
    beta_signs: list = field(default_factory=lambda: [None, None, None])


def growth_vector(A: ParamMatrix3) -> list:
    """b_i = -sum_j a_ij as rational functions."""
    out = []
    for row in A.entries:
        out.append(-(row[0] + row[1] + row[2]))
    return out


def boundary_equilibria(A: ParamMatrix3, point=None) -> ZeemanInvariants:
    """Axial points R_i and face points Q_k (at a rational point if given).

    With `point`, Q_k is marked absent (None) when a coordinate is <= 0;
    symbolically the coordinates are returned as rational functions and
    absence is left undetermined.
    """
    if point is not None:
        a = A.evaluate(point)
        return _boundary_equilibria_exact(a)
    c = [[-e for e in row] for row in A.entries]
    b = growth_vector(A)
    for i in range(3):
        if c[i][i].is_zero():
            raise SingularFace("zero diagonal entry a_%d%d" % (i + 1, i + 1))
    R = [b[i] / c[i][i] for i in range(3)]
    Q = []
    for k in range(3):
        idx = [i for i in range(3) if i != k]
        det = c[idx[0]][idx[0]] * c[idx[1]][idx[1]] - c[idx[0]][idx[1]] * c[idx[1]][idx[0]]
        if det.is_zero():
            raise SingularFace("face x_%d = 0 subsystem is singular" % (k + 1))
        xi = (b[idx[0]] * c[idx[1]][idx[1]] - c[idx[0]][idx[1]] * b[idx[1]]) / det
        xj = (c[idx[0]][idx[0]] * b[idx[1]] - b[idx[0]] * c[idx[1]][idx[0]]) / det
        Q.append((xi, xj))
    return ZeemanInvariants(b=b, R=R, Q=Q)


def _boundary_equilibria_exact(a) -> ZeemanInvariants:
    c = [[-x for x in row] for row in a]
    b = [sum(row) for row in c]
    for i in range(3):
        if not c[i][i]:
            raise SingularFace("zero diagonal entry a_%d%d" % (i + 1, i + 1))
    R = [b[i] / c[i][i] for i in range(3)]
    Q = []
    for k in range(3):
        idx = [i for i in range(3) if i != k]
        det = c[idx[0]][idx[0]] * c[idx[1]][idx[1]] - c[idx[0]][idx[1]] * c[idx[1]][idx[0]]
        if not det:
            raise SingularFace("face x_%d = 0 subsystem is singular" % (k + 1))
        xi = (b[idx[0]] * c[idx[1]][idx[1]] - c[idx[0]][idx[1]] * b[idx[1]]) / det
        xj = (c[idx[0]][idx[0]] * b[idx[1]] - b[idx[0]] * c[idx[1]][idx[0]]) / det
        Q.append((xi, xj) if xi > 0 and xj > 0 else None)
    return ZeemanInvariants(b=b, R=R, Q=Q)


def zeeman_invariants(A: ParamMatrix3, point) -> ZeemanInvariants:
    """Exact sign invariants at a rational parameter point."""
    a = A.evaluate(point)
    for row in a:
        for e in row:
            if e >= 0:
                raise NotCompetitive("entry %s >= 0 at the point" % rational_str(e))
    inv = _boundary_equilibria_exact(a)
    c = [[-x for x in row] for row in a]
    b = inv.b
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            alpha = b[i] * c[j][i] / c[i][i] - b[j]
            s = _sign(alpha)
            if s == 0:
                raise DegenerateSign("alpha_%d%d is exactly zero" % (i + 1, j + 1))
            inv.alpha_signs[(i, j)] = s
    for k in range(3):
        if inv.Q[k] is None:
            inv.beta_signs[k] = None
            continue
        idx = [i for i in range(3) if i != k]
        x = [mpq(0)] * 3
        x[idx[0]], x[idx[1]] = inv.Q[k]
        beta = b[k] - sum(c[k][j] * x[j] for j in range(3))
        s = _sign(beta)
        if s == 0:
            raise DegenerateSign("beta_%d%d is exactly zero" % (k + 1, k + 1))
        inv.beta_signs[k] = s
    return inv


# Printed class-31 pattern: R12 = Q33 = R21 = -R23 = R32 = Q22 = R31 = R13 = -1
_CLASS31_ALPHA = {(0, 1): -1, (1, 0): -1, (1, 2): 1,
                  (2, 1): -1, (2, 0): -1, (0, 2): -1}
_CLASS31_BETA = {1: -1, 2: -1}


def classify(inv: ZeemanInvariants) -> str:
    """Class31 on the exact printed sign pattern; everything else unknown.

    Class30 is never detected directly: restricted to the carrying simplex
    it is the time-reversal of class 31, and certificates only ever carry
    it as a derived note on a Class31 result.

    An absent face equilibrium (Q_k = None with beta sign None) is a
    definite structural fact, not missing information: the pattern needs
    that equilibrium to exist, so the verdict is OtherOrUnknown.
    """
    for i, j in _CLASS31_ALPHA:
        s = inv.alpha_signs.get((i, j))
        if s in (None, 0):
            raise IncompleteInvariants("alpha_%d%d sign missing" % (i + 1, j + 1))
    for k in _CLASS31_BETA:
        if inv.beta_signs[k] is None and inv.Q[k] is None:
            return OTHER_OR_UNKNOWN
        if inv.beta_signs[k] in (None, 0):
            raise IncompleteInvariants("beta_%d%d sign missing" % (k + 1, k + 1))
    ok = all(inv.alpha_signs[(i, j)] == s for (i, j), s in _CLASS31_ALPHA.items())
    ok = ok and all(inv.beta_signs[k] == s for k, s in _CLASS31_BETA.items())
    return CLASS_31 if ok else OTHER_OR_UNKNOWN


def competitiveness_check(A: ParamMatrix3, box: dict, bits: int = 256) -> bool:
    """True iff every entry's interval enclosure over the box is < 0.

    `box` maps each of lambda, n, mu to a RatInterval (mu may be omitted
    when no entry references it).
    """
    for row in A.entries:
        for e in row:
            need = set(e.num.active_vars()) | set(e.den.active_vars())
            missing = need - set(box)
            if missing:
                raise ValueError("box missing intervals for %r" % sorted(missing))
            try:
                enclosure = eval_interval_ratfunc(e, box, bits)
            except ZeroDivisionError:
                return False
            if not enclosure.hi < 0:
                return False
    return True
