"""Pipeline reports: run requested stages in dependency order and emit a
structured document (json / text / markdown).

Stage failures become structured sections rather than crashes; the process
exit code is decided by the CLI from the worst failure kind.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .asym import asymptotic_base, excursion_bridge_ratio, fit_growth
from .bounded import bounded_gf
from .eliminate import minimal_polynomial
from .errors import (
    BudgetExceededError,
    InfiniteFamilyError,
    InsufficientDataError,
    NonConvergingError,
    ValidationError,
    WalkPolyError,
)
from .oracle import count_walks
from .qnum import qq_str
from .recurrence import Recurrence, alg_to_rec, guess_rec
from .steps import WalkProblem
from .systems import build_bridge_system, build_excursion_system, build_meander_system, free_unbounded_gf
from .unipoly import PowerSeries, series_of_ratfun

STAGES = ("gf", "system", "minpoly", "series", "rec", "asy", "verify")

FINDREC_CUTOFF = 8  # guess instead of converting when deg_F reaches this


@dataclass
class ReportConfig:
    problem: WalkProblem
    stages: tuple = ("gf", "series")
    series_order: int = 10
    output_format: str = "text"  # json | text | markdown
    findrec_cutoff: int = FINDREC_CUTOFF
    budget_spairs: int = 10 ** 5
    budget_monomials: int = 10 ** 7
    seed: object = None

    def __post_init__(self):
        for s in self.stages:
            if s not in STAGES:
                raise ValidationError(f"unknown stage {s!r}")
        cls = self.problem.walk_class
        if "asy" in self.stages and cls in ("bounded-free", "bounded-bridge"):
            raise ValidationError("asy stage needs an unbounded or semi-bounded class")


def _gf_stage(problem):
    cls = problem.walk_class
    if cls in ("bounded-free", "bounded-bridge"):
        rf = bounded_gf(problem)
        return {"kind": "rational", "num": str(rf.num), "den": str(rf.den)}, rf
    if cls == "free-unbounded":
        rf = free_unbounded_gf(problem)
        return {"kind": "rational", "num": str(rf.num), "den": str(rf.den)}, rf
    raise ValidationError(f"no closed rational form for class {cls}; use minpoly")


def _system_stage(problem):
    cls = problem.walk_class
    if cls == "excursion":
        sy = build_excursion_system(problem)
    elif cls == "meander":
        sy = build_meander_system(problem)
    elif cls == "bridge":
        sy = build_bridge_system(problem)
    else:
        raise ValidationError(f"no relation system for class {cls}")
    return {"target": sy.target, "equations": sy.dump()}, sy


def run_report(config: ReportConfig) -> dict:
    """Execute the requested stages; every section is JSON-ready."""
    problem = config.problem
    report = {
        "problem": problem.describe(),
        "stages": {},
        "ok": True,
        "exit_kind": None,
    }
    artifacts = {}

    order = [s for s in STAGES if s in config.stages]
    cls = problem.walk_class
    rational_classes = ("bounded-free", "bounded-bridge", "free-unbounded")
    for stage in order:
        try:
            if stage == "gf":
                section, rf = _gf_stage(problem)
                artifacts["gf"] = rf
            elif stage == "system":
                section, sy = _system_stage(problem)
                artifacts["system"] = sy
            elif stage == "minpoly":
                mp = minimal_polynomial(
                    problem,
                    budget_spairs=config.budget_spairs,
                    budget_monomials=config.budget_monomials,
                )
                artifacts["minpoly"] = mp
                section = mp.to_json()
                section["pretty"] = str(mp.poly)
            elif stage == "series":
                n = config.series_order
                tbl = count_walks(problem, n)
                artifacts["series"] = tbl
                section = {"order": n, "coefficients": tbl.as_strings()}
            elif stage == "rec":
                if "series" not in artifacts:
                    artifacts["series"] = count_walks(problem, config.series_order)
                if cls in rational_classes:
                    raise ValidationError("rec stage applies to algebraic classes")
                mp = artifacts.get("minpoly") or minimal_polynomial(problem)
                artifacts["minpoly"] = mp
                if mp.deg_target >= config.findrec_cutoff:
                    max_order, max_degree = 6, 5
                    need = (max_order + 1) * (max_degree + 1) + max_order + 10
                    terms = count_walks(problem, need).counts
                    rec = guess_rec(list(terms), max_order, max_degree)
                    if rec is None:
                        raise InsufficientDataError("guessing found no recurrence in bounds")
                    route = "guessed"
                else:
                    rec = alg_to_rec(mp)
                    route = "converted"
                artifacts["rec"] = rec
                section = rec.to_json()
                section["route"] = route
            elif stage == "asy":
                mp = artifacts.get("minpoly") or minimal_polynomial(problem)
                artifacts["minpoly"] = mp
                cert = asymptotic_base(mp)
                section = {
                    "base": cert.base,
                    "error_bound": cert.error_bound,
                    "method": cert.method,
                    "root_interval": list(cert.root_interval),
                }
                try:
                    tbl = count_walks(problem, 200)
                    g = fit_growth(tbl)
                    section["fit"] = {
                        "base": g.base,
                        "alpha": g.alpha,
                        "const": g.const,
                        "residual": g.residual,
                        "reliable": g.reliable,
                        "period": g.period,
                    }
                except WalkPolyError as exc:
                    section["fit"] = {"error": str(exc)}
            elif stage == "verify":
                section = _verify_stage(problem, artifacts, config)
            report["stages"][stage] = {"ok": True, "result": section}
        except (ValidationError, InfiniteFamilyError) as exc:
            report["stages"][stage] = {"ok": False, "error": str(exc), "kind": "invalid"}
            report["ok"] = False
            report["exit_kind"] = report["exit_kind"] or "invalid"
        except NonConvergingError as exc:
            report["stages"][stage] = {"ok": False, "error": str(exc), "kind": "non-converging"}
            report["ok"] = False
            report["exit_kind"] = report["exit_kind"] or "non-converging"
        except BudgetExceededError as exc:
            report["stages"][stage] = {"ok": False, "error": str(exc), "kind": "budget"}
            report["ok"] = False
            report["exit_kind"] = report["exit_kind"] or "budget"
        except InsufficientDataError as exc:
            report["stages"][stage] = {"ok": False, "error": str(exc), "kind": "insufficient-data"}
            report["ok"] = False
            report["exit_kind"] = report["exit_kind"] or "insufficient-data"
        except WalkPolyError as exc:
            report["stages"][stage] = {"ok": False, "error": str(exc), "kind": "error"}
            report["ok"] = False
            report["exit_kind"] = report["exit_kind"] or "error"
    return report


def _verify_stage(problem, artifacts, config):
    """Cross-checks between whatever earlier stages produced and the oracle."""
    checks = {}
    n = min(config.series_order, 12)
    tbl = count_walks(problem, n)
    if "gf" in artifacts:
        series = series_of_ratfun(artifacts["gf"], n)
        checks["gf-vs-oracle"] = list(series.coeffs) == list(tbl.counts[: n + 1])
    if "minpoly" in artifacts:
        from .eliminate import annihilates

        mp = artifacts["minpoly"]
        m = problem.scale
        counts = list(count_walks(problem, max(24, n) * m).counts)
        ok = annihilates(mp.poly, mp.target, PowerSeries("t", counts))
        if not ok and m > 1:
            # the polynomial may live in the original (compressed) variable
            ok = annihilates(mp.poly, mp.target, PowerSeries("t", counts[::m]))
        checks["minpoly-annihilates-oracle"] = ok
    if "rec" in artifacts:
        rec = artifacts["rec"]
        terms = list(count_walks(problem, rec.order + 30).counts)
        checks["recurrence-annihilates-oracle"] = rec.annihilates(terms)
    return checks


def render_report(report: dict, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, default=str)
    lines = []
    h1 = (lambda s: f"# {s}") if fmt == "markdown" else (lambda s: s.upper())
    h2 = (lambda s: f"## {s}") if fmt == "markdown" else (lambda s: f"-- {s}")
    lines.append(h1("walk report"))
    lines.append(f"problem: {json.dumps(report['problem'])}")
    for stage, body in report["stages"].items():
        lines.append(h2(stage))
        if body["ok"]:
            lines.append(json.dumps(body["result"], indent=2, default=str))
        else:
            lines.append(f"FAILED ({body['kind']}): {body['error']}")
    lines.append("overall: " + ("ok" if report["ok"] else f"failed ({report['exit_kind']})"))
    return "\n".join(lines)
