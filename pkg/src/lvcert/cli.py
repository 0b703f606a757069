"""Command line interface.

Subcommands: search, replay, isolate, classify, verify, simulate.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from gmpy2 import mpq

from .certificate import verify_certificate
from .errors import LvcertError
from .lvmodel import ParamMatrix3, classify, zeeman_invariants
from .numeric import cycle_report
from .poly import rational, rational_str
from .ratfunc import RatFunc
from .realroots import format_response, mrealroot, parse_request
from .search import SearchConfig, run_pipeline, search


def _parse_point(text: str) -> dict:
    out = {}
    for part in text.split(","):
        name, sep, val = part.partition("=")
        if not sep:
            raise ValueError("bad point component %r" % part)
        name = name.strip()
        if name not in ("lambda", "n", "mu"):
            raise ValueError("unknown parameter %r" % name)
        out[name] = rational(val.strip())
    return out


def _cmd_search(args) -> int:
    cfg = SearchConfig(seed=args.seed, count=args.count,
                       delta=mpq(args.delta), epsilon=mpq(args.epsilon),
                       out_dir=args.out, budget_seconds=args.budget)
    if args.template:
        with open(args.template) as fh:
            cfg.template = ParamMatrix3.from_text(fh.read()).template
    report = search(cfg)
    print("generated %d, certificates %d, rejections %d"
          % (report.generated, len(report.certificates),
             len(report.rejections)))
    print("summary written to %s" % os.path.join(cfg.out_dir, "summary.md"))
    return 0


def _cmd_replay(args) -> int:
    from .reduction import build_transform, solve_for_mu

    with open(args.matrix) as fh:
        A = ParamMatrix3.from_text(fh.read())
    # replay accepts whatever class the matrix honestly has and gets a
    # generous budget: the reference computation runs for several minutes
    cfg = SearchConfig(seed=0, count=1, delta=mpq(1, 10 ** 20),
                       out_dir=args.out, target_class=None,
                       budget_seconds=args.budget)
    explicit_T = None
    if args.transform:
        # pre-verify the supplied transform, then run the pipeline with it
        PV = ("lambda", "n")
        with open(args.transform) as fh:
            rows = [line for line in fh.read().strip().splitlines()
                    if line.strip()]
        T = [[RatFunc.from_text(c.strip(), PV) for c in row.split(",")]
             for row in rows]
        mu = solve_for_mu(A)
        mu = RatFunc(mu.num.restricted().with_vars(PV),
                     mu.den.restricted().with_vars(PV))
        A2 = A.substitute_mu(mu)
        build_transform(A2, explicit_T=T)
        explicit_T = T
    cert, rej = run_pipeline(A, cfg, index=0, explicit_T=explicit_T)
    os.makedirs(args.out, exist_ok=True)
    if cert is None:
        print("replay rejected: %s %s" % (rej.reason, rej.detail))
        return 1
    path = os.path.join(args.out, "certificate-replay.json")
    from .certificate import save_certificate
    save_certificate(cert, path)
    print("certificate written to %s" % path)
    return 0


def _cmd_isolate(args) -> int:
    with open(args.system) as fh:
        req = parse_request(fh.read())
    delta = mpq(args.delta) if args.delta else req["delta"]
    sign_polys = req["sign_polys"]
    if args.signs:
        with open(args.signs) as fh:
            extra = parse_request("system: 0 ; 0\nvars: %s, %s\ndelta: 1/2\n"
                                  "signs: %s" % (*req["vars"], fh.read().strip()))
        sign_polys = extra["sign_polys"]
    boxes = mrealroot(req["system"], req["vars"], delta, sign_polys,
                      req["region"])
    sys.stdout.write(format_response(boxes, req["vars"]))
    return 0


def _cmd_classify(args) -> int:
    with open(args.matrix) as fh:
        A = ParamMatrix3.from_text(fh.read())
    point = _parse_point(args.point)
    inv = zeeman_invariants(A, point)
    for (i, j), s in sorted(inv.alpha_signs.items()):
        print("alpha_%d%d: %+d" % (i + 1, j + 1, s))
    for k, s in enumerate(inv.beta_signs):
        print("beta_%d%d: %s" % (k + 1, k + 1,
                                 "absent" if s is None else "%+d" % s))
    print("class: %s" % classify(inv))
    return 0


def _cmd_verify(args) -> int:
    ok = verify_certificate(args.certificate)
    print("certificate verifies" if ok else "certificate rejected")
    return 0 if ok else 1


def _cmd_simulate(args) -> int:
    from .certificate import load_certificate

    cert = load_certificate(args.certificate)
    A = ParamMatrix3.from_text(cert["matrix"])
    stages = cert["schedule"]["stages"]
    names = [st["name"] for st in stages]
    points = [{k: rational(v) for k, v in st["point"].items()}
              for st in stages]

    def matrix_at(point):
        return [[float(e) for e in row] for row in A.evaluate(point)]

    csv = cycle_report(matrix_at, names, points, t_max=args.tmax,
                       tol=args.tol)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv)
        print("report written to %s" % args.out)
    else:
        sys.stdout.write(csv)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="lvcert",
        description="certified search for competitive systems with "
                    "multiple small limit cycles")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="seeded random search")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--template", help="matrix template file")
    p.add_argument("--delta", default="1/10000000000")
    p.add_argument("--epsilon", default="1/1000")
    p.add_argument("--out", default="out")
    p.add_argument("--budget", type=float, default=600.0,
                   help="per-matrix budget in seconds")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("replay", help="run the pipeline on a given matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--transform", help="optional explicit transform file")
    p.add_argument("--out", default="out")
    p.add_argument("--budget", type=float, default=3600.0,
                   help="budget in seconds")
    p.set_defaults(func=_cmd_replay)

    p = sub.add_parser("isolate", help="certified bivariate root isolation")
    p.add_argument("--system", required=True, help="request file")
    p.add_argument("--delta")
    p.add_argument("--signs", help="extra sign polynomial file")
    p.set_defaults(func=_cmd_isolate)

    p = sub.add_parser("classify", help="Zeeman invariants at a point")
    p.add_argument("--matrix", required=True)
    p.add_argument("--point", required=True,
                   help='e.g. "lambda=-1/18,n=-1/145,mu=-1/2"')
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("verify", help="re-verify a certificate file")
    p.add_argument("--certificate", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("simulate", help="numeric return-map diagnostic")
    p.add_argument("--certificate", required=True)
    p.add_argument("--tmax", type=float, default=200.0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_simulate)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LvcertError as exc:
        print("error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
