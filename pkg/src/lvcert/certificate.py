"""Machine-checkable certificates and their independent re-verification.

A certificate is a JSON document whose every number is an exact `p/q`
string.  `verify_certificate` re-establishes each claim from the file
alone: the eigenvalue condition, one fresh Krawczyk contraction for the
isolating box, every recorded sign, the Zeeman pattern at the box
midpoint, competitiveness over the box and the perturbation stages.  It
never re-runs the symbolic reduction.
"""

from __future__ import annotations

import hashlib
import json

from gmpy2 import mpq

from . import __version__
from .errors import ParseError, VerificationFailed
from .focal import FocalValueSet, PerturbationSchedule, ScheduleStage, \
    lv0_gap, lv0_sign, verify_schedule
from .intervals import RatInterval, eval_interval_ratfunc
from .lvmodel import CLASS_31, ParamMatrix3, classify, \
    competitiveness_check, zeeman_invariants
from .poly import rational, rational_str
from .ratfunc import RatFunc
from .realroots import IsolatingBox, _jacobian, _krawczyk
from .reduction import eigencondition_residual

_KERNEL_NOTE = "lvcert exact kernel (gmpy2 rationals, sympy gcd/resultant)"


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _iv(iv: RatInterval):
    return [rational_str(iv.lo), rational_str(iv.hi)]


def _parse_iv(pair) -> RatInterval:
    return RatInterval(rational(pair[0]), rational(pair[1]))


def build_certificate(A: ParamMatrix3, mu: RatFunc, bf, fv: FocalValueSet,
                      box: IsolatingBox, inv, class_tag: str,
                      schedule: PerturbationSchedule, delta,
                      rng_note: str = "") -> dict:
    lv_texts = {k: f.to_text() for k, f in
                (("lv1", fv.lv1), ("lv2", fv.lv2), ("lv3", fv.lv3))}
    mid = {"lambda": box.lambda_iv.midpoint(), "n": box.n_iv.midpoint()}
    cert = {
        "format": "lvcert-certificate",
        "version": 1,
        "toolchain": {"package": "lvcert %s" % __version__,
                      "kernel": _KERNEL_NOTE, "rng": rng_note},
        "matrix": A.to_text(),
        "mu": mu.to_text(),
        "transform": [[e.to_text() for e in row] for row in bf.T],
        "block": {"c11": bf.c11.to_text(), "c12": bf.c12.to_text(),
                  "c21": bf.c21.to_text(), "c22": bf.c22.to_text(),
                  "r": bf.r.to_text()},
        "focal": {**lv_texts,
                  "digests": {k: _digest(v) for k, v in lv_texts.items()},
                  "normalization": fv.normalization_note},
        "box": {"lambda": _iv(box.lambda_iv), "n": _iv(box.n_iv),
                "signs": list(box.signs), "delta": rational_str(rational(delta)),
                "midpoint": {k: rational_str(v) for k, v in mid.items()}},
        "zeeman": {
            "alpha_signs": {"%d%d" % (i + 1, j + 1): s
                            for (i, j), s in inv.alpha_signs.items()},
            "beta_signs": [s for s in inv.beta_signs],
            "class": class_tag,
            "duality_note": "time-reversal on the carrying simplex gives "
                            "a class 30 example from this one",
        },
        "schedule": {
            "epsilon": rational_str(schedule.epsilon),
            "target_signs": list(schedule.target_signs),
            "stages": [{
                "name": st.name,
                "point": {k: rational_str(v) for k, v in st.point.items()},
                "signs": list(st.signs),
                "magnitudes": {k: rational_str(v)
                               for k, v in st.magnitudes.items()},
            } for st in schedule.stages],
        },
        "conclusion": _conclusion(class_tag),
    }
    return cert


def _conclusion(class_tag: str) -> dict:
    argument = [
        "lv1 = lv2 = 0 with lv3 nonzero at the certified box root",
        "three perturbation stages give the alternating sign chain "
        "lv0, lv1, lv2, lv3, hence three nested small-amplitude "
        "limit cycles",
    ]
    total = 3
    if class_tag == CLASS_31:
        argument.append(
            "the outermost small cycle is unstable (lv3 > 0) and the "
            "class-31 boundary of the carrying simplex is a repellor, "
            "so a fourth enclosing limit cycle exists")
        total = 4
    else:
        argument.append(
            "the boundary-repellor argument needs class 31, which this "
            "matrix does not certify, so no fourth cycle is claimed")
    return {"small_cycles": 3, "argument": argument, "total_cycles": total}


def save_certificate(cert: dict, path: str):
    with open(path, "w") as fh:
        json.dump(cert, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_certificate(path: str) -> dict:
    try:
        with open(path) as fh:
            cert = json.load(fh)
    except (OSError, ValueError) as exc:
        raise ParseError("cannot read certificate: %s" % exc) from exc
    if cert.get("format") != "lvcert-certificate":
        raise ParseError("not a certificate file")
    return cert


def _fail(msg):
    raise VerificationFailed(msg)


def verify_certificate(path: str) -> bool:
    """Re-check every exact claim of a saved certificate from the file."""
    cert = load_certificate(path)
    PV = ("lambda", "n")
    A = ParamMatrix3.from_text(cert["matrix"])
    mu = RatFunc.from_text(cert["mu"], PV)

    # eigencondition: residual vanishes identically after substitution
    A2 = A.substitute_mu(mu)
    if not eigencondition_residual(A2).is_zero():
        _fail("eigencondition residual does not vanish for the stored mu")

    # focal digests
    focal = cert["focal"]
    for k in ("lv1", "lv2", "lv3"):
        if _digest(focal[k]) != focal["digests"][k]:
            _fail("digest mismatch for %s" % k)
    lv1 = RatFunc.from_text(focal["lv1"], PV)
    lv2 = RatFunc.from_text(focal["lv2"], PV)
    lv3 = RatFunc.from_text(focal["lv3"], PV)

    # box: fresh Krawczyk contraction certifies the root from the file
    lam_iv = _parse_iv(cert["box"]["lambda"])
    n_iv = _parse_iv(cert["box"]["n"])
    p = lv1.num.restricted().with_vars(PV)
    q = lv2.num.restricted().with_vars(PV)
    boxmap = {"lambda": lam_iv, "n": n_iv}
    status, _ = _krawczyk(p, q, _jacobian(p, q), boxmap, 512)
    if status != "unique":
        _fail("stored box failed Krawczyk re-certification (%s)" % status)

    # recorded sign vector over the box
    sign_rfs = [RatFunc.from_poly(lv1.den), RatFunc.from_poly(lv2.den),
                RatFunc.from_poly(lv3.num), RatFunc.from_poly(lv3.den)]
    det_rf = _det3(A2.entries)
    sign_rfs.append(det_rf)
    stored = cert["box"]["signs"]
    if len(stored) != len(sign_rfs):
        _fail("sign vector has unexpected length")
    for rf, s in zip(sign_rfs, stored):
        enc = eval_interval_ratfunc(rf, boxmap, 512)
        if enc.sign() != s:
            _fail("sign %+d not re-established for %s" % (s, rf.to_text()))

    # competitiveness over the box (mu through its formula)
    mu_iv = eval_interval_ratfunc(mu, boxmap, 512)
    if not competitiveness_check(A, {"lambda": lam_iv, "n": n_iv,
                                     "mu": mu_iv}):
        _fail("competitiveness does not hold over the box")

    # Zeeman pattern at the midpoint
    mid = {k: rational(v) for k, v in cert["box"]["midpoint"].items()}
    mid["mu"] = mu.evaluate(mid)
    inv = zeeman_invariants(A, mid)
    for key, s in cert["zeeman"]["alpha_signs"].items():
        i, j = int(key[0]) - 1, int(key[1]) - 1
        if inv.alpha_signs.get((i, j)) != s:
            _fail("alpha_%s sign mismatch" % key)
    for k, s in enumerate(cert["zeeman"]["beta_signs"]):
        if inv.beta_signs[k] != s:
            _fail("beta_%d%d sign mismatch" % (k + 1, k + 1))
    if classify(inv) != cert["zeeman"]["class"]:
        _fail("class tag does not re-classify")

    # perturbation schedule re-verification (independent code path)
    sched = cert["schedule"]
    stages = [ScheduleStage(
        name=st["name"],
        point={k: rational(v) for k, v in st["point"].items()},
        signs=tuple(st["signs"]),
        magnitudes={k: rational(v) for k, v in st["magnitudes"].items()},
    ) for st in sched["stages"]]
    schedule = PerturbationSchedule(stages=stages,
                                    epsilon=rational(sched["epsilon"]),
                                    target_signs=tuple(sched["target_signs"]))
    fv = FocalValueSet(lv1=lv1, lv2=lv2, lv3=lv3,
                       normalization_note=focal["normalization"],
                       V=None, swapped=False)
    try:
        verify_schedule(schedule, fv, A)
    except Exception as exc:
        _fail("schedule does not re-verify: %s" % exc)
    return True


def _det3(m) -> RatFunc:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
