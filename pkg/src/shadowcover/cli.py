"""Command-line interface.

Exit codes: 0 when the tested relation holds, 1 when it fails, 2 on input
errors.  All output is JSON with sorted keys and floats rounded to 12
significant digits, so runs are byte-stable for fixed inputs and seed.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import polytope
from .config import tolerances
from .containment import max_scale, min_cover_dilate, translate_into
from .errors import ShadowCoverError
from .mixedvol import base_height_mixed, interp_family, optimize_interp, steiner_fit
from .repro import GROUPS, run_suite
from .shadow import bound_report, covering_sweep

EXIT_HOLDS, EXIT_FAILS, EXIT_ERROR = 0, 1, 2


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if x != x or x in (float("inf"), float("-inf")):
            return str(x)
        x = float(f"{x:.12g}")
        return 0.0 if x == 0 else x
    return obj


def dumps(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=True, indent=2)


def _emit(obj, out=None):
    out = out or sys.stdout
    out.write(dumps(obj) + "\n")


def _load(path):
    try:
        return polytope.load_body(path)
    except FileNotFoundError as exc:
        raise _InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path}: malformed JSON ({exc})") from exc


class _InputError(Exception):
    pass


def cmd_covering(args) -> int:
    K, L = _load(args.K), _load(args.L)
    report = covering_sweep(K, L, args.codim, args.dirs, args.seed, refine=args.refine)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            report.write_csv(fh)
    out = report.to_json(include_verdicts=args.verdicts)
    out["tolerance"] = tolerances().geom
    _emit(out)
    return EXIT_HOLDS if report.all_covered else EXIT_FAILS


def cmd_contain(args) -> int:
    K, L = _load(args.K), _load(args.L)
    w = translate_into(K, L)
    out = {"schema": "shadowcover/1", "kind": "containment", "feasible": w.feasible,
           "margin": w.margin, "tolerance": tolerances().geom,
           "translation": w.translation}
    if w.violated_facet is not None:
        out["violated_facet"] = {"normal": w.violated_facet[0], "deficit": w.violated_facet[1]}
    if args.scale:
        s = max_scale(K, L)
        out["max_scale"] = {"alpha": s.alpha, "translation": s.translation}
    _emit(out)
    return EXIT_HOLDS if w.feasible else EXIT_FAILS


def cmd_dilate(args) -> int:
    K, L = _load(args.K), _load(args.L)
    lam, x = min_cover_dilate(K, L)
    _emit({"schema": "shadowcover/1", "kind": "min_cover_dilate", "lambda": lam,
           "translation": x, "tolerance": 1e-8})
    return EXIT_HOLDS


def cmd_mixed(args) -> int:
    K, L = _load(args.K), _load(args.L)
    st = steiner_fit(K, L)
    out = {"schema": "shadowcover/1", "kind": "mixed_volumes", "n": st.n,
           "coefficients": list(st.values), "fit_residual": st.residual, "tolerance": 1e-7}
    if L.full_dimensional:
        out["base_height_V_1_n-1"] = base_height_mixed(L, K)
    if K.full_dimensional:
        out["base_height_V_n-1_1"] = base_height_mixed(K, L)
    _emit(out)
    return EXIT_HOLDS


def cmd_optimize(args) -> int:
    K, T = _load(args.K), _load(args.T)
    fam = interp_family(K, T)
    t_star, f_star = optimize_interp(K, T, fam)
    vol_t = T.volume()
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("t,f,ratio\n")
            for t in np.linspace(0.0, 1.0, args.points):
                f = float(fam.f(t))
                fh.write(f"{t:.12g},{f:.12g},{f / vol_t:.12g}\n")
    _emit({"schema": "shadowcover/1", "kind": "interpolation", "t_star": t_star,
           "f_t_star": f_star, "f_1": vol_t, "ratio": f_star / vol_t,
           "fprime_1": fam.fprime_at_1(), "polynomial": fam.poly.coef, "tolerance": 1e-10})
    return EXIT_HOLDS


def cmd_bounds(args) -> int:
    _emit(bound_report(args.n, args.d).to_json())
    return EXIT_HOLDS


def cmd_body(args) -> int:
    params = {}
    if args.axis is not None:
        params["axis"] = args.axis
    if args.m is not None:
        params["m"] = args.m
    body = polytope.make_body(args.kind, args.n, params, args.seed)
    if args.reflect_scale is not None:
        body = polytope.reflected_scaled(body, args.reflect_scale)
    _emit(body.to_json())
    return EXIT_HOLDS


def cmd_paper_repro(args) -> int:
    only = args.only.split(",") if args.only else None
    report = run_suite(args.seed, only)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dumps(report) + "\n")
    if not args.quiet:
        for item in report["items"]:
            flag = "PASS" if item["pass"] else "FAIL"
            print(f"{flag}  {item['id']:<36} computed={item['computed_value']:.10g} "
                  f"expected={item['paper_value']:.10g} tol={item['tolerance']:g}",
                  file=sys.stderr)
    _emit(report)
    return EXIT_HOLDS if report["all_pass"] else EXIT_FAILS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="shadowcover",
                                description="Shadow covering and translate containment of polytopes.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("covering", help="sampled shadow-covering sweep of K by L")
    c.add_argument("K")
    c.add_argument("L")
    c.add_argument("--codim", type=int, default=1)
    c.add_argument("--dirs", type=int, default=500)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--refine", action="store_true")
    c.add_argument("--csv", help="write per-direction verdicts here")
    c.add_argument("--verdicts", action="store_true", help="include every verdict in the JSON")
    c.set_defaults(func=cmd_covering)

    c = sub.add_parser("contain", help="does L contain a translate of K")
    c.add_argument("K")
    c.add_argument("L")
    c.add_argument("--scale", action="store_true", help="also report the largest fitting scale")
    c.set_defaults(func=cmd_contain)

    c = sub.add_parser("dilate", help="smallest dilate of L containing a translate of K")
    c.add_argument("K")
    c.add_argument("L")
    c.set_defaults(func=cmd_dilate)

    c = sub.add_parser("mixed", help="mixed volumes V_{n-i,i}(K, L)")
    c.add_argument("K")
    c.add_argument("L")
    c.set_defaults(func=cmd_mixed)

    c = sub.add_parser("optimize", help="maximize V((1-t)K + tT) over t in [0,1]")
    c.add_argument("K")
    c.add_argument("T")
    c.add_argument("--csv", help="write the ratio-vs-t curve here")
    c.add_argument("--points", type=int, default=201)
    c.set_defaults(func=cmd_optimize)

    c = sub.add_parser("bounds", help="volume-ratio constants for (n, d)")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--d", type=int, default=1)
    c.set_defaults(func=cmd_bounds)

    c = sub.add_parser("body", help="emit a named body as JSON")
    c.add_argument("kind")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--axis", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--seed", type=int)
    c.add_argument("--reflect-scale", type=float,
                   help="replace the body B by FACTOR * (-B)")
    c.set_defaults(func=cmd_body)

    c = sub.add_parser("paper-repro", help="regenerate every reported number")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out")
    c.add_argument("--only", help=f"comma-separated groups from: {','.join(GROUPS)}")
    c.add_argument("--quiet", action="store_true")
    c.set_defaults(func=cmd_paper_repro)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (_InputError, ShadowCoverError, OSError, ValueError, KeyError) as exc:
        print(f"shadowcover: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
