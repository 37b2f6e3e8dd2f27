"""Command-line front end.

    walkpoly walks gf|system|minpoly|series|rec|asy|report ...
    walkpoly uni qbin|koh|gs|verify|depth|limits|analyze ...
    walkpoly steps validate|random ...

Step sets arrive as JSON (inline or @file):
    {"steps":[{"dx":1,"dy":-2,"weight":"1/2"}], "class":"excursion", "lower":0}

Exit codes: 0 ok, 2 invalid step set / infinite family, 3 non-converging
iteration, 4 elimination budget exceeded, 5 insufficient data for guessing,
1 other errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    BudgetExceededError,
    InfiniteFamilyError,
    InsufficientDataError,
    NonConvergingError,
    ValidationError,
    WalkPolyError,
)
from .koh import (
    KohOptions,
    gs,
    koh_depth,
    koh_general,
    q_one_limit,
    qbin,
    verify_size_s_recurrence,
)
from .partitions import PartitionConstraint
from .qnum import qq, qq_str
from .qpoly import QPoly, analyze_qpoly
from .report import ReportConfig, render_report, run_report
from .steps import problem_from_json, random_step_set, validate

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVALID = 2
EXIT_NON_CONVERGING = 3
EXIT_BUDGET = 4
EXIT_INSUFFICIENT = 5

_KIND_CODES = {
    "invalid": EXIT_INVALID,
    "non-converging": EXIT_NON_CONVERGING,
    "budget": EXIT_BUDGET,
    "insufficient-data": EXIT_INSUFFICIENT,
    "error": EXIT_ERROR,
}


def _load_steps_arg(text):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return fh.read()
    return text


def _problem_from_args(args):
    payload = json.loads(_load_steps_arg(args.steps))
    if isinstance(payload, list):
        payload = {"steps": payload}
    if getattr(args, "walk_class", None):
        payload["class"] = args.walk_class
    if getattr(args, "lower", None) is not None:
        payload["lower"] = args.lower
    if getattr(args, "upper", None) is not None:
        payload["upper"] = args.upper
    return problem_from_json(payload)


def _emit(obj, fmt="json"):
    if fmt == "json":
        print(json.dumps(obj, indent=2, default=str))
    else:
        print(obj)


def _walks_command(args):
    sub = args.walks_cmd
    if sub == "report":
        problem = _problem_from_args(args)
        config = ReportConfig(
            problem,
            stages=tuple(args.stages.split(",")),
            series_order=args.order,
            output_format=args.format,
            budget_spairs=args.budget,
        )
        report = run_report(config)
        print(render_report(report, args.format))
        if report["ok"]:
            return EXIT_OK
        return _KIND_CODES.get(report["exit_kind"], EXIT_ERROR)

    stage_of = {
        "gf": ("gf",),
        "system": ("system",),
        "minpoly": ("minpoly",),
        "series": ("series",),
        "rec": ("rec",),
        "asy": ("asy",),
    }[sub]
    problem = _problem_from_args(args)
    config = ReportConfig(
        problem,
        stages=stage_of,
        series_order=args.order,
        output_format=args.format,
        budget_spairs=args.budget,
    )
    report = run_report(config)
    body = report["stages"][stage_of[0]]
    if body["ok"]:
        _emit(body["result"], "json" if args.format == "json" else "json")
        return EXIT_OK
    print(f"error: {body['error']}", file=sys.stderr)
    return _KIND_CODES.get(body.get("kind"), EXIT_ERROR)


def _constraint_from_args(args):
    kw = {}
    if args.max_size is not None:
        kw["max_size"] = args.max_size
    if args.min_part is not None:
        kw["min_part"] = args.min_part
    if args.max_part is not None:
        kw["max_part"] = args.max_part
    if args.min_difference is not None:
        kw["min_difference"] = args.min_difference
    if args.distinct:
        kw["distinct"] = True
    return PartitionConstraint(**kw)


def _uni_command(args):
    sub = args.uni_cmd
    if sub == "qbin":
        _emit(qbin(args.n, args.k).to_json())
    elif sub == "koh":
        options = KohOptions(
            a=args.a,
            b=args.b,
            nu=qq(args.nu),
            rho=("const", qq(args.rho)),
            constraint=_constraint_from_args(args),
            normalize=args.normalize,
        )
        _emit(koh_general(args.n, args.k, options).to_json())
    elif sub == "gs":
        _emit(gs(args.s, args.n, args.k).to_json())
    elif sub == "verify":
        rep = verify_size_s_recurrence(args.s, args.n, args.k)
        _emit(
            {
                "passed": rep.passed,
                "checked": rep.checked,
                "counterexample": rep.counterexample,
            }
        )
        return EXIT_OK if rep.passed else EXIT_ERROR
    elif sub == "depth":
        _emit(
            {
                "brute": koh_depth(args.n, args.k, "brute"),
                "formula": koh_depth(args.n, args.k, "formula"),
            }
        )
    elif sub == "limits":
        _emit(q_one_limit(args.s, args.n))
    elif sub == "analyze":
        coeffs = json.loads(_load_steps_arg(args.poly))
        rep = analyze_qpoly(QPoly([qq(c) for c in coeffs]))
        _emit(
            {
                "darga": rep.darga,
                "symmetric": rep.symmetric,
                "unimodal": rep.unimodal,
                "log_concave": rep.log_concave,
                "gamma_vector": None
                if rep.gamma_vector is None
                else [qq_str(c) for c in rep.gamma_vector],
            }
        )
    return EXIT_OK


def _steps_command(args):
    if args.steps_cmd == "validate":
        problem = _problem_from_args(args)
        _emit(problem.describe())
        return EXIT_OK
    if args.steps_cmd == "random":
        ss = random_step_set(args.kind, args.seed)
        _emit(
            {
                "seed": args.seed,
                "kind": args.kind,
                "steps": [{"dx": s.dx, "dy": s.dy, "weight": qq_str(s.weight)} for s in ss],
            }
        )
        return EXIT_OK
    return EXIT_ERROR


def _add_problem_flags(p):
    p.add_argument("--steps", required=True, help="step-set JSON (or @file)")
    p.add_argument("--class", dest="walk_class", default=None)
    p.add_argument("--lower", type=int, default=None)
    p.add_argument("--upper", type=int, default=None)
    p.add_argument("--order", type=int, default=10, help="series truncation order")
    p.add_argument("--format", default="text", choices=("text", "json", "markdown"))
    p.add_argument("--budget", type=int, default=10 ** 5, help="elimination S-pair budget")
    p.add_argument("--seed", type=int, default=0)


def build_parser():
    parser = argparse.ArgumentParser(prog="walkpoly", description=__doc__)
    top = parser.add_subparsers(dest="group", required=True)

    walks = top.add_parser("walks", help="lattice-walk pipelines")
    wsub = walks.add_subparsers(dest="walks_cmd", required=True)
    for name in ("gf", "system", "minpoly", "series", "rec", "asy"):
        p = wsub.add_parser(name)
        _add_problem_flags(p)
    rp = wsub.add_parser("report")
    _add_problem_flags(rp)
    rp.add_argument("--stages", default="gf,series", help="comma-separated stage list")

    uni = top.add_parser("uni", help="unimodal q-polynomial families")
    usub = uni.add_subparsers(dest="uni_cmd", required=True)
    pq = usub.add_parser("qbin")
    pq.add_argument("n", type=int)
    pq.add_argument("k", type=int)
    pk = usub.add_parser("koh")
    pk.add_argument("n", type=int)
    pk.add_argument("k", type=int)
    pk.add_argument("--a", type=int, default=0)
    pk.add_argument("--b", type=int, default=0)
    pk.add_argument("--nu", default="1")
    pk.add_argument("--rho", default="1")
    pk.add_argument("--normalize", action="store_true")
    pk.add_argument("--max-size", type=int, default=None)
    pk.add_argument("--min-part", type=int, default=None)
    pk.add_argument("--max-part", type=int, default=None)
    pk.add_argument("--min-difference", type=int, default=None)
    pk.add_argument("--distinct", action="store_true")
    pg = usub.add_parser("gs")
    pg.add_argument("s", type=int)
    pg.add_argument("n", type=int)
    pg.add_argument("k", type=int)
    pv = usub.add_parser("verify")
    pv.add_argument("--s", type=int, default=10)
    pv.add_argument("--n", type=int, default=20)
    pv.add_argument("--k", type=int, default=20)
    pd = usub.add_parser("depth")
    pd.add_argument("n", type=int)
    pd.add_argument("k", type=int)
    pl = usub.add_parser("limits")
    pl.add_argument("s", type=int)
    pl.add_argument("n", type=int)
    pa = usub.add_parser("analyze")
    pa.add_argument("poly", help="JSON coefficient array (or @file)")

    steps = top.add_parser("steps", help="step-set utilities")
    ssub = steps.add_subparsers(dest="steps_cmd", required=True)
    sv = ssub.add_parser("validate")
    _add_problem_flags(sv)
    sr = ssub.add_parser("random")
    sr.add_argument("--kind", default="generic",
                    choices=("generic", "zero-returning", "semi-bounded", "unbounded"))
    sr.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.group == "walks":
            return _walks_command(args)
        if args.group == "uni":
            return _uni_command(args) or EXIT_OK
        if args.group == "steps":
            return _steps_command(args)
    except InfiniteFamilyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NonConvergingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NON_CONVERGING
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InsufficientDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INSUFFICIENT
    except WalkPolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
