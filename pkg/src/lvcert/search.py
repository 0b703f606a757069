"""Automated search driver: seeded random matrices, the full certifying
pipeline and reproducible batch reports.

Randomness comes from a counter-based generator (numpy Philox keyed by
the seed, counter = matrix index), so every matrix is a pure function of
(seed, index) and batches are order-independent.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq

from .certificate import build_certificate, save_certificate
from .errors import BudgetExhausted, LvcertError
from .focal import focal_values, perturbation_schedule
from .lvmodel import CLASS_31, ParamMatrix3, classify, zeeman_invariants
from .poly import rational, rational_str
from .ratfunc import RatFunc
from .realroots import mrealroot
from .reduction import (BlockForm, build_transform, center_manifold,
                        externalize, internalize, reduce_planar,
                        solve_for_mu, transform_system)

RNG_NOTE = "numpy Philox4x64-10, key = seed, counter = matrix index"


@dataclass
class SearchConfig:
    seed: int = 0
    count: int = 1
    template: list | None = None  # ParamMatrix3 template rows, or None
    num_max: int = 100
    den_max: int = 100
    delta: mpq = mpq(1, 10 ** 10)
    epsilon: mpq = mpq(1, 1000)
    target_class: str | None = CLASS_31  # None accepts any classifiable root
    out_dir: str = "out"
    max_degree: int = 6
    budget_seconds: float = 600.0

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("count must be nonnegative")
        if self.num_max < 1 or self.den_max < 1:
            raise ValueError("bounds must be at least 1")
        self.delta = mpq(self.delta)
        self.epsilon = mpq(self.epsilon)
        if not 0 < self.delta < 1 or not 0 < self.epsilon < 1:
            raise ValueError("delta and epsilon must lie in (0, 1)")


def _rng_for(cfg: SearchConfig, index: int):
    return np.random.Generator(np.random.Philox(key=cfg.seed, counter=index))


def _rand_rational(rng, num_max, den_max) -> mpq:
    p = int(rng.integers(1, num_max + 1))
    q = int(rng.integers(1, den_max + 1))
    return mpq(p, q)


def rand_matrix(cfg: SearchConfig, index: int) -> ParamMatrix3:
    """Deterministic random competitive template instance for (seed, index).

    Default template mirrors the reference shape: a13 = lambda, a23 = mu,
    a31 = n, a32 = k*n with a random positive rational multiplier k; the
    remaining entries are random strictly negative rationals.
    """
    rng = _rng_for(cfg, index)
    if cfg.template is not None:
        rows = cfg.template
    else:
        rows = [[("rand",), ("rand",), ("sym", "lambda")],
                [("rand",), ("rand",), ("sym", "mu")],
                [("n_mult", 1), ("n_mult", "rand"), ("rand",)]]
    out = []
    for row in rows:
        cells = []
        for tag in row:
            if tag[0] == "rand":
                cells.append(("fixed", -_rand_rational(rng, cfg.num_max,
                                                       cfg.den_max)))
            elif tag[0] == "n_mult" and tag[1] == "rand":
                cells.append(("n_mult", _rand_rational(rng, cfg.num_max,
                                                       cfg.den_max)))
            else:
                cells.append(tag)
        out.append(cells)
    return ParamMatrix3.from_template(out)


@dataclass
class Rejection:
    index: int
    reason: str
    detail: str = ""


@dataclass
class SearchReport:
    config: dict
    generated: int = 0
    entered: int = 0
    certificates: list = field(default_factory=list)
    rejections: list = field(default_factory=list)
    class_tally: dict = field(default_factory=dict)
    reason_tally: dict = field(default_factory=dict)


def run_pipeline(A: ParamMatrix3, cfg: SearchConfig, index: int = 0,
                 explicit_T=None):
    """One full pipeline pass: (certificate dict, None) or (None, Rejection)."""
    started = time.monotonic()

    def overtime():
        if time.monotonic() - started > cfg.budget_seconds:
            raise BudgetExhausted("per-matrix budget exhausted")

    try:
        mu = solve_for_mu(A)
        PV = ("lambda", "n")
        mu = RatFunc(mu.num.restricted().with_vars(PV),
                     mu.den.restricted().with_vars(PV))
        A2 = A.substitute_mu(mu)
        # the reduction runs in product coordinates (n, u = lambda*n),
        # where the template's rational functions are nearly univariate
        A2i = ParamMatrix3([[internalize(e) for e in row]
                            for row in A2.entries])
        Ti = None
        if explicit_T is not None:
            Ti = [[internalize(e) for e in row] for row in explicit_T]
        bf = build_transform(A2i, explicit_T=Ti)
        sys_t = transform_system(A2i, bf)
        overtime()
        cm = center_manifold(sys_t, cfg.max_degree, checkpoint=overtime)
        ps = reduce_planar(sys_t, cm)
        overtime()
        det_c = bf.omega2()
        fv = focal_values(ps, scale=bf.c21 * bf.c21 / (det_c * det_c),
                          checkpoint=overtime)
        fv.lv1 = externalize(fv.lv1)
        fv.lv2 = externalize(fv.lv2)
        fv.lv3 = externalize(fv.lv3)
        bf = BlockForm(T=[[externalize(e) for e in row] for row in bf.T],
                       C=[[externalize(e) for e in row] for row in bf.C],
                       c11=externalize(bf.c11), c12=externalize(bf.c12),
                       c21=externalize(bf.c21), c22=externalize(bf.c22),
                       r=externalize(bf.r))
        if fv.lv1.is_zero() or fv.lv2.is_zero():
            return None, Rejection(index, "DegenerateFocalValues")
        overtime()
        det_rf = _det3(A2.entries)
        sign_polys = [fv.lv1.den, fv.lv2.den, fv.lv3.num, fv.lv3.den,
                      _primary(det_rf)]
        boxes = mrealroot([fv.lv1.num, fv.lv2.num], PV, cfg.delta, sign_polys)
        overtime()
        qualifying = []
        seen_classes = []
        for box in boxes:
            if any(s == 0 for s in box.signs):
                continue  # a sign polynomial shares the root: degenerate
            target = 1 if box.signs[2] * box.signs[3] > 0 else -1
            mid = {"lambda": box.lambda_iv.midpoint(),
                   "n": box.n_iv.midpoint()}
            mid["mu"] = mu.evaluate(mid)
            try:
                inv = zeeman_invariants(A, mid)
                tag = classify(inv)
            except LvcertError as exc:
                seen_classes.append("%s: %s" % (type(exc).__name__, exc))
                continue
            if cfg.target_class is not None and tag != cfg.target_class:
                seen_classes.append(tag)
                continue
            qualifying.append((box, inv, tag, target))
        if not qualifying:
            if seen_classes:
                return None, Rejection(index, "WrongClass",
                                       ", ".join(seen_classes))
            return None, Rejection(index, "NoQualifyingRoot")
        box, inv, tag, lv3_sign = qualifying[0]
        target_signs = (-lv3_sign, lv3_sign, -lv3_sign, lv3_sign)
        schedule = perturbation_schedule(fv, box, A, cfg.epsilon,
                                         target_signs=target_signs)
        cert = build_certificate(A, mu, bf, fv, box, inv, tag, schedule,
                                 cfg.delta, rng_note=RNG_NOTE)
        return cert, None
    except LvcertError as exc:
        return None, Rejection(index, type(exc).__name__, str(exc))
    except (ZeroDivisionError, ValueError) as exc:
        return None, Rejection(index, type(exc).__name__, str(exc))


def _primary(rf: RatFunc):
    return rf.num


def _det3(m) -> RatFunc:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def search(cfg: SearchConfig) -> SearchReport:
    """Run the pipeline over cfg.count seeded matrices and persist results."""
    os.makedirs(cfg.out_dir, exist_ok=True)
    report = SearchReport(config=_config_dict(cfg))
    for index in range(cfg.count):
        A = rand_matrix(cfg, index)
        report.generated += 1
        report.entered += 1
        cert, rej = run_pipeline(A, cfg, index)
        if cert is not None:
            path = os.path.join(cfg.out_dir, "certificate-%06d.json" % index)
            save_certificate(cert, path)
            report.certificates.append(path)
            tag = cert["zeeman"]["class"]
            report.class_tally[tag] = report.class_tally.get(tag, 0) + 1
        else:
            report.rejections.append(rej)
            report.reason_tally[rej.reason] = \
                report.reason_tally.get(rej.reason, 0) + 1
    _write_report(report, cfg)
    return report


def _config_dict(cfg: SearchConfig) -> dict:
    return {"seed": cfg.seed, "count": cfg.count,
            "num_max": cfg.num_max, "den_max": cfg.den_max,
            "delta": rational_str(cfg.delta),
            "epsilon": rational_str(cfg.epsilon),
            "target_class": cfg.target_class, "rng": RNG_NOTE}


def _write_report(report: SearchReport, cfg: SearchConfig):
    summary = {
        "config": report.config,
        "generated": report.generated,
        "entered": report.entered,
        "certificates": sorted(report.certificates),
        "class_tally": dict(sorted(report.class_tally.items())),
        "reason_tally": dict(sorted(report.reason_tally.items())),
        "rejections": [{"index": r.index, "reason": r.reason,
                        "detail": r.detail}
                       for r in sorted(report.rejections,
                                       key=lambda r: r.index)],
    }
    with open(os.path.join(cfg.out_dir, "summary.json"), "w") as fh:
        json.dump(summary, fh, indent=1, sort_keys=True)
        fh.write("\n")
    lines = ["# Search summary", "",
             "- seed: %s" % report.config["seed"],
             "- matrices generated: %d" % report.generated,
             "- pipeline entered: %d" % report.entered,
             "- certificates: %d" % len(report.certificates), "",
             "## Class tally", ""]
    for tag, count in sorted(report.class_tally.items()):
        lines.append("- %s: %d" % (tag, count))
    lines += ["", "## Rejection reasons", ""]
    for reason, count in sorted(report.reason_tally.items()):
        lines.append("- %s: %d" % (reason, count))
    with open(os.path.join(cfg.out_dir, "summary.md"), "w") as fh:
        fh.write("\n".join(lines) + "\n")
