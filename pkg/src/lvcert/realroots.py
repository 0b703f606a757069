"""Certified real-root isolation for bivariate polynomial systems.

The driver routine `mrealroot` takes a pair of bivariate polynomials, an
isolation width and a list of auxiliary sign polynomials.  Projections of
the common roots are obtained from the two resultants, isolated by Sturm
chains, paired into candidate boxes and certified with a Krawczyk
contraction test; the auxiliary polynomials are then given strict signs
over each certified (possibly further refined) box.

All arithmetic is exact; interval endpoints are widened outward onto a
dyadic grid so deep refinement cannot blow up endpoint bit lengths.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .errors import (ParseError, PositiveDimensional, SignUndetermined,
                     UncertifiableBox)
from .gcdres import poly_divexact, poly_gcd, resultant
from .intervals import RatInterval, eval_interval, outward
from .poly import SparsePoly, rational, rational_str
from .sturm import refine_root, sturm_isolate

DEFAULT_BITS = 256


@dataclass
class IsolatingBox:
    """A rational rectangle certified to contain exactly one common root."""

    lambda_iv: RatInterval
    n_iv: RatInterval
    signs: list = field(default_factory=list)
    certified: bool = False
    system: tuple | None = None

    def as_dict(self) -> dict:
        v1, v2 = self.system[0].vars if self.system else ("lambda", "n")
        return {v1: self.lambda_iv, v2: self.n_iv}

    def widths(self):
        return self.lambda_iv.width(), self.n_iv.width()


def triangularize(p: SparsePoly, q: SparsePoly, elim_var: str):
    """Resultant elimination of one variable from a coprime bivariate pair.

    Returns (res, kept_var).  A nonconstant gcd makes the resultant
    identically zero; `resultant` reports that as IdenticallyZero and the
    caller must divide the gcd out first.  When one input does not involve
    elim_var the Sylvester determinant degenerates to a power of that
    input, which carries the same root projection.
    """
    dp = p.degree_in(elim_var) if elim_var in p.vars else 0
    dq = q.degree_in(elim_var) if elim_var in q.vars else 0
    if dp == 0 and dq == 0:
        raise ValueError("neither polynomial involves %r" % elim_var)
    if dq == 0:
        res = q ** dp
    elif dp == 0:
        res = p ** dq
    else:
        res = resultant(p, q, elim_var)
    kept = next(v for v in p.vars if v != elim_var)
    return res.restricted().with_vars((kept,)), kept


def _mid_jacobian(jac, point):
    return [[e.evaluate(point) for e in row] for row in jac]


def _inv2(m):
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if not det:
        return None
    return [[m[1][1] / det, -m[0][1] / det],
            [-m[1][0] / det, m[0][0] / det]]


def _krawczyk(p, q, jac, box: dict, bits: int):
    """One Krawczyk step for F = (p, q) over the box.

    Returns ("empty", None) when the image proves there is no root,
    ("unique", K) when K lies strictly inside the box (existence and
    uniqueness), or ("ambiguous", K intersected with the box) otherwise.
    """
    names = p.vars
    X = [box[v] for v in names]
    y = {v: box[v].midpoint() for v in names}
    Y = _inv2([[jac[i][j].evaluate(y) for j in range(2)] for i in range(2)])
    if Y is None:
        return "singular", None
    Fy = [p.evaluate(y), q.evaluate(y)]
    J = [[eval_interval(jac[i][j], box, bits) for j in range(2)] for i in range(2)]
    # I - Y * J(X)
    M = [[RatInterval.point(1 if i == j else 0)
          - (Y[i][0] * J[0][j] + Y[i][1] * J[1][j]) for j in range(2)]
         for i in range(2)]
    dX = [X[j] - y[names[j]] for j in range(2)]
    K = []
    for i in range(2):
        center = y[names[i]] - (Y[i][0] * Fy[0] + Y[i][1] * Fy[1])
        spread = M[i][0] * dX[0] + M[i][1] * dX[1]
        K.append(outward(RatInterval.point(center) + spread, bits))
    if any(not K[i].intersects(X[i]) for i in range(2)):
        return "empty", None
    if all(X[i].strictly_contains(K[i]) for i in range(2)):
        return "unique", {names[i]: K[i] for i in range(2)}
    return "ambiguous", {names[i]: K[i].intersection(X[i]) for i in range(2)}


def _jacobian(p, q):
    v1, v2 = p.vars
    return [[p.derivative(v1), p.derivative(v2)],
            [q.derivative(v1), q.derivative(v2)]]


def isolate_system(p: SparsePoly, q: SparsePoly, variables=("lambda", "n"),
                   delta=mpq(1, 10 ** 10), region=None, bits: int = DEFAULT_BITS,
                   budget: int = 400) -> list:
    """Disjoint certified boxes around all common real roots in the region.

    The default region is the open negative quadrant.  Certification is a
    Krawczyk contraction: the interval image lies in the strict interior
    of the box, proving existence and uniqueness simultaneously; boxes
    that cannot be certified within the budget raise UncertifiableBox.

    A nonconstant common factor is split off first: it carries a whole
    curve of (degenerate) common zeros, so only the residual system's
    isolated roots are reported.  PositiveDimensional is raised when no
    zero-dimensional residual system remains after the split.
    """
    delta = rational(delta)
    v1, v2 = variables
    p = p.restricted().with_vars(variables)
    q = q.restricted().with_vars(variables)
    g = poly_gcd(p, q)
    if not g.is_constant():
        p = poly_divexact(p, g)
        q = poly_divexact(q, g)
        if p.is_constant() or q.is_constant() \
                or not poly_gcd(p, q).is_constant():
            raise PositiveDimensional(
                "no zero-dimensional residual system after splitting off "
                "the common factor %s" % g.to_text())
    if region is None:
        huge = mpq(10 ** 40)
        region = {v1: RatInterval(-huge, 0), v2: RatInterval(-huge, 0)}

    res2, _ = triangularize(p, q, v1)  # eliminate v1 first, keep v2
    res1, _ = triangularize(p, q, v2)
    iv1s = sturm_isolate(res1, region[v1], delta)
    iv2s = sturm_isolate(res2, region[v2], delta)

    jac = _jacobian(p, q)
    out = []
    for a in iv1s:
        for b in iv2s:
            cert = _certify_candidate(p, q, jac, {v1: a, v2: b}, delta, bits,
                                      budget, res1, res2)
            if cert is not None:
                box = IsolatingBox(lambda_iv=cert[v1], n_iv=cert[v2],
                                   certified=True, system=(p, q))
                if _inside_open_region(box, region, v1, v2):
                    out.append(box)
    return out


def _inside_open_region(box: IsolatingBox, region, v1, v2) -> bool:
    return (region[v1].lo < box.lambda_iv.lo and box.lambda_iv.hi < region[v1].hi
            and region[v2].lo < box.n_iv.lo and box.n_iv.hi < region[v2].hi)


def _certify_candidate(p, q, jac, box, delta, bits, budget, res1, res2):
    """Certify or discard one candidate box; None when it holds no root."""
    v1, v2 = p.vars
    stack = [box]
    spent = 0
    while stack:
        cur = stack.pop()
        spent += 1
        if spent > budget:
            raise UncertifiableBox("candidate box exhausted its refinement "
                                   "budget of %d" % budget)
        if eval_interval(p, cur, bits).sign() != 0 \
                or eval_interval(q, cur, bits).sign() != 0:
            continue
        status, K = _krawczyk(p, q, jac, cur, bits)
        if status == "empty":
            continue
        if status == "unique":
            return _shrink_to_delta(p, q, jac, K, delta, bits, budget)
        if status == "ambiguous" and _shrank(K, cur, v1, v2):
            stack.append(K)
            continue
        # no progress: split the wider coordinate
        wide = v1 if cur[v1].width() >= cur[v2].width() else v2
        iv = cur[wide]
        if iv.width() == 0:
            raise UncertifiableBox("degenerate box failed certification")
        m = iv.midpoint()
        left = dict(cur)
        left[wide] = RatInterval(iv.lo, m)
        right = dict(cur)
        right[wide] = RatInterval(m, iv.hi)
        stack.extend((left, right))
    return None


def _shrank(K, cur, v1, v2) -> bool:
    shrink = mpq(3, 4)
    return (K[v1].width() <= shrink * cur[v1].width()
            or K[v2].width() <= shrink * cur[v2].width())


def _shrink_to_delta(p, q, jac, box, delta, bits, budget):
    """Contract a certified box until both sides are at most delta."""
    v1, v2 = p.vars
    for _ in range(budget):
        if box[v1].width() <= delta and box[v2].width() <= delta:
            return box
        status, K = _krawczyk(p, q, jac, box, bits)
        if status == "unique":
            box = K
        elif status == "ambiguous" and _shrank(K, box, v1, v2):
            box = K
        else:
            # fall back to more interval precision
            bits *= 2
            if bits > 1 << 16:
                break
    raise UncertifiableBox("could not contract certified box to width %s"
                           % rational_str(delta))


def sign_on_box(poly: SparsePoly, box: IsolatingBox, budget: int = 64,
                bits: int = DEFAULT_BITS) -> int:
    """Strict sign of poly over the (refined) box.

    Refinement uses the stored system's Krawczyk contraction, so the
    certified root stays inside the box while it shrinks.  Mutates the
    box intervals in place; raises SignUndetermined when the enclosure
    still straddles zero after the budget (e.g. poly shares the root).
    """
    if box.system is None or not box.certified:
        raise ValueError("sign_on_box needs a certified box with its system")
    p, q = box.system
    v1, v2 = p.vars
    poly = poly.restricted().merge_vars(p)[0] if poly.vars != p.vars else poly
    jac = _jacobian(p, q)
    cur = {v1: box.lambda_iv, v2: box.n_iv}
    for _ in range(budget):
        s = eval_interval(poly, cur, bits).sign()
        if s != 0:
            box.lambda_iv, box.n_iv = cur[v1], cur[v2]
            return s
        status, K = _krawczyk(p, q, jac, cur, bits)
        if status == "unique" or (status == "ambiguous" and _shrank(K, cur, v1, v2)):
            cur = K
        else:
            bits *= 2
            if bits > 1 << 16:
                break
    raise SignUndetermined("sign of %s undetermined after refinement"
                           % poly.to_text())


def mrealroot(system, variables, delta, sign_polys, region=None,
              bits: int = DEFAULT_BITS, budget: int = 400) -> list:
    """Isolate the system's real roots and sign the auxiliary polynomials.

    Facade over triangularize, isolate_system and sign_on_box; returns
    every root in the region with its full sign vector (callers filter by
    sign conditions afterwards).  An entry that still straddles zero after
    the refinement budget (e.g. the polynomial shares the root) is
    recorded as 0; only nonzero entries are certified strict.
    """
    p, q = system
    boxes = isolate_system(p, q, variables, delta, region, bits, budget)
    for box in boxes:
        signs = []
        for sp in sign_polys:
            try:
                signs.append(sign_on_box(sp, box, bits=bits))
            except SignUndetermined:
                signs.append(0)
        box.signs = signs
    return boxes


# -- request / response text format -----------------------------------


def format_request(system, variables, delta, sign_polys, region=None) -> str:
    lines = [
        "system: %s ; %s" % (system[0].to_text(), system[1].to_text()),
        "vars: %s, %s" % tuple(variables),
        "delta: %s" % rational_str(rational(delta)),
        "signs: %s" % " ; ".join(sp.to_text() for sp in sign_polys),
    ]
    if region is not None:
        lines.append("region: %s" % " ; ".join(
            "%s in [%s, %s]" % (v, rational_str(iv.lo), rational_str(iv.hi))
            for v, iv in region.items()))
    return "\n".join(lines) + "\n"


def parse_request(text: str) -> dict:
    fields = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        key, sep, val = line.partition(":")
        if not sep:
            raise ParseError("bad request line %r" % line)
        fields[key.strip()] = val.strip()
    for needed in ("system", "vars", "delta", "signs"):
        if needed not in fields:
            raise ParseError("request is missing the %r field" % needed)
    variables = tuple(v.strip() for v in fields["vars"].split(","))
    if len(variables) != 2:
        raise ParseError("exactly two variables expected")
    ps = [SparsePoly.from_text(s.strip(), variables)
          for s in fields["system"].split(";")]
    if len(ps) != 2:
        raise ParseError("exactly two system polynomials expected")
    signs = [SparsePoly.from_text(s.strip(), variables)
             for s in fields["signs"].split(";") if s.strip()]
    region = None
    if "region" in fields:
        region = {}
        for part in fields["region"].split(";"):
            name, _, rng = part.strip().partition(" in ")
            lo, hi = rng.strip().lstrip("[").rstrip("]").split(",")
            region[name.strip()] = RatInterval(rational(lo.strip()),
                                               rational(hi.strip()))
    return {"system": ps, "vars": variables,
            "delta": rational(fields["delta"]), "sign_polys": signs,
            "region": region}


def format_response(boxes, variables) -> str:
    v1, v2 = variables
    lines = []
    for box in boxes:
        sig = ",".join("+" if s > 0 else ("-" if s < 0 else "0")
                       for s in box.signs)
        lines.append(
            "box: %s in [%s, %s]; %s in [%s, %s]; signs: %s; certified: %s"
            % (v1, rational_str(box.lambda_iv.lo), rational_str(box.lambda_iv.hi),
               v2, rational_str(box.n_iv.lo), rational_str(box.n_iv.hi),
               sig, "true" if box.certified else "false"))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_response(text: str) -> list:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if not line.startswith("box:"):
            raise ParseError("bad response line %r" % line)
        parts = [s.strip() for s in line[4:].split(";")]
        if len(parts) != 4:
            raise ParseError("bad response line %r" % line)
        ivs = []
        for part in parts[:2]:
            _, _, rng = part.partition(" in ")
            lo, hi = rng.strip().lstrip("[").rstrip("]").split(",")
            ivs.append(RatInterval(rational(lo.strip()), rational(hi.strip())))
        signs = [1 if s == "+" else (-1 if s == "-" else 0)
                 for s in parts[2].partition(":")[2].strip().split(",") if s]
        certified = parts[3].partition(":")[2].strip() == "true"
        out.append(IsolatingBox(lambda_iv=ivs[0], n_iv=ivs[1], signs=signs,
                                certified=certified))
    return out
