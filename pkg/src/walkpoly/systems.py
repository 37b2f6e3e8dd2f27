"""Closed polynomial systems of generating-function relations.

Variables (canonical names):
    f[a,b]  nonnegative walks from altitude a to altitude b
    g[a,0]  walks a->0 staying strictly above 0 except at the end
    g[0,a]  walks 0->a staying strictly above 0 except at the start
    g[0,0]  irreducible returns to 0 (no stationary walk, no pure right step)
    k[a]    nonnegative meanders starting at altitude a
    h[j]    unbounded walks j->0 that avoid 0 in between (h[0] as g[0,0] both sides)
    G       unbounded bridges
    L       user-defined combination target

Every relation is stored in defining form lhs = rhs; closure follows from
the index bound max(max|dy| - 1, shift c).  Weighted steps enter as w*t^dx.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import ValidationError, WalkPolyError
from .multipoly import MultiPoly
from .qnum import QQ, qq_str
from .steps import WalkProblem
from .unipoly import RationalFunction, UniPoly


def fvar(a, b):
    return f"f[{a},{b}]"


def gvar(a, b):
    return f"g[{a},{b}]"


def kvar(a):
    return f"k[{a}]"


def hvar(j):
    return f"h[{j}]"


@dataclass
class GfSystem:
    ring: tuple  # ordered: system vars desc (index sum, name), target, "t"
    equations: dict  # lhs name -> rhs MultiPoly (meaning lhs = rhs)
    target: str
    provenance: dict  # lhs name -> relation kind
    scale: int = 1
    problem: object = None

    def poly_equations(self):
        """Equations as polynomials lhs - rhs = 0."""
        out = []
        for v, rhs in self.equations.items():
            out.append(MultiPoly.variable(self.ring, v) - rhs)
        return out

    def variables(self):
        return [v for v in self.ring if v != "t"]

    def check_closed(self):
        defined = set(self.equations)
        for rhs in self.equations.values():
            for v in rhs.variables_used():
                if v != "t" and v not in defined:
                    raise WalkPolyError(f"system not closed: {v} undefined")
        if self.target not in defined:
            raise WalkPolyError(f"target {self.target} undefined")
        return True

    def dump(self):
        """JSON-ready list of {lhs, terms}."""
        out = []
        for v, rhs in self.equations.items():
            terms = []
            for e, c in rhs.sorted_terms():
                mon = {name: k for name, k in zip(self.ring, e) if k}
                terms.append({"c": qq_str(c), "vars": mon})
            out.append({"lhs": v, "terms": terms})
        return out


class _Builder:
    """Accumulates defining equations over a growing variable set."""

    def __init__(self, problem: WalkProblem):
        self.problem = problem
        self.steps = list(problem.steps)
        self.defs = {}  # name -> list of (coeff QQ, t-exp int, [var names])
        self.prov = {}
        self.todo = []
        self.queued = set()

    # equations are assembled symbolically first; the ring is only known at the end
    def need(self, name):
        if name not in self.defs and name not in self.queued:
            self.todo.append(name)
            self.queued.add(name)
        return name

    def define(self, name, terms, kind):
        self.defs[name] = terms
        self.prov[name] = kind

    def horizontal_terms(self):
        return [(QQ(s.weight), s.dx, []) for s in self.steps if s.dy == 0]

    def build_fg(self, name):
        """Define an f[a,b] / g[a,b] variable, queueing what it references."""
        if name.startswith("f["):
            a, b = map(int, name[2:-1].split(","))
            if a == 0 and b == 0:
                terms = [(QQ(1), 0, [])]
                terms.append((QQ(1), 0, [self.need(gvar(0, 0)), fvar(0, 0)]))
                for w, x, _ in self.horizontal_terms():
                    terms.append((w, x, [fvar(0, 0)]))
                self.define(name, terms, "stationary-or-first-return")
            elif a > b:
                terms = []
                for i in range(0, b + 1):
                    terms.append((QQ(1), 0, [self.need(gvar(a - i, 0)), self.need(fvar(0, b - i))]))
                self.define(name, terms, "split-at-minimum")
            elif a == b:
                terms = [(QQ(1), 0, [self.need(fvar(0, 0))])]
                for i in range(0, a):
                    terms.append((QQ(1), 0, [self.need(gvar(a - i, 0)), self.need(fvar(0, b - i))]))
                self.define(name, terms, "split-at-minimum-or-stay")
            else:  # a < b
                terms = [(QQ(1), 0, [self.need(fvar(0, 0)), self.need(gvar(0, b - a))])]
                for i in range(0, a):
                    terms.append((QQ(1), 0, [self.need(gvar(a - i, 0)), self.need(fvar(0, b - i))]))
                self.define(name, terms, "split-at-minimum-or-ascend")
        elif name.startswith("g["):
            a, b = map(int, name[2:-1].split(","))
            if a == 0 and b == 0:
                terms = []
                for s1 in self.steps:
                    if s1.dy <= 0:
                        continue
                    for s2 in self.steps:
                        if s2.dy >= 0:
                            continue
                        terms.append(
                            (
                                QQ(s1.weight) * QQ(s2.weight),
                                s1.dx + s2.dx,
                                [self.need(fvar(s1.dy - 1, -s2.dy - 1))],
                            )
                        )
                self.define(name, terms, "depart-and-return")
            elif b == 0:
                terms = []
                for s in self.steps:
                    if s.dy < 0:
                        terms.append((QQ(s.weight), s.dx, [self.need(fvar(a - 1, -s.dy - 1))]))
                self.define(name, terms, "irreducible-descent")
            elif a == 0:
                terms = []
                for s in self.steps:
                    if s.dy > 0:
                        terms.append((QQ(s.weight), s.dx, [self.need(fvar(s.dy - 1, b - 1))]))
                self.define(name, terms, "irreducible-ascent")
            else:
                raise WalkPolyError(f"non-canonical irreducible variable {name}")
        else:
            raise WalkPolyError(f"cannot define {name}")

    def build_k(self, name):
        a = int(name[2:-1])
        if a == 0:
            terms = [(QQ(1), 0, [])]
            terms.append((QQ(1), 0, [self.need(gvar(0, 0)), kvar(0)]))
            for w, x, _ in self.horizontal_terms():
                terms.append((w, x, [kvar(0)]))
            for s in self.steps:
                if s.dy > 0:
                    terms.append((QQ(s.weight), s.dx, [self.need(kvar(s.dy - 1))]))
            self.define(name, terms, "meander-first-return")
        else:
            terms = [(QQ(1), 0, [self.need(kvar(0))])]
            for i in range(1, a + 1):
                terms.append((QQ(1), 0, [self.need(gvar(i, 0)), self.need(kvar(0))]))
            self.define(name, terms, "meander-drop-to-floor")

    def build_h(self, name):
        j = int(name[2:-1])
        if j == 0:
            terms = [(QQ(2), 0, [self.need(gvar(0, 0))])]
            for s in self.steps:
                if s.dy <= -2:
                    for i in range(1, -s.dy):
                        terms.append(
                            (QQ(s.weight), s.dx, [self.need(gvar(0, i)), self.need(hvar(i + s.dy))])
                        )
                elif s.dy >= 2:
                    for i in range(1, s.dy):
                        terms.append(
                            (QQ(s.weight), s.dx, [self.need(gvar(s.dy - i, 0)), self.need(hvar(i))])
                        )
            self.define(name, terms, "axis-avoider-both-sides")
        elif j > 0:
            terms = [(QQ(1), 0, [self.need(gvar(j, 0))])]
            for s in self.steps:
                if s.dy <= -2:
                    for i in range(1, -s.dy):
                        terms.append(
                            (
                                QQ(s.weight),
                                s.dx,
                                [self.need(fvar(j - 1, i - 1)), self.need(hvar(i + s.dy))],
                            )
                        )
            self.define(name, terms, "axis-avoider-from-above")
        else:
            terms = [(QQ(1), 0, [self.need(gvar(0, -j))])]
            for s in self.steps:
                if s.dy >= 2:
                    for i in range(1, s.dy):
                        terms.append(
                            (
                                QQ(s.weight),
                                s.dx,
                                [self.need(fvar(s.dy - i - 1, -j - 1)), self.need(hvar(i))],
                            )
                        )
            self.define(name, terms, "axis-avoider-from-below")

    def build_G(self, name):
        terms = [(QQ(1), 0, [])]
        terms.append((QQ(1), 0, [self.need(hvar(0)), "G"]))
        for w, x, _ in self.horizontal_terms():
            terms.append((w, x, ["G"]))
        self.define(name, terms, "bridge-first-return")

    def run(self, seed_vars):
        for v in seed_vars:
            self.need(v)
        while self.todo:
            name = self.todo.pop()
            if name in self.defs:
                continue
            if name.startswith(("f[", "g[")):
                self.build_fg(name)
            elif name.startswith("k["):
                self.build_k(name)
            elif name.startswith("h["):
                self.build_h(name)
            elif name == "G":
                self.build_G(name)
            else:
                raise WalkPolyError(f"unknown variable {name}")

    def finish(self, target):
        ring = system_ring(self.defs.keys(), target)
        equations = {}
        for name, terms in self.defs.items():
            rhs = MultiPoly.zero(ring)
            tidx = ring.index("t")
            for coeff, texp, names in terms:
                e = [0] * len(ring)
                e[tidx] = texp
                for v in names:
                    e[ring.index(v)] += 1
                rhs = rhs + MultiPoly.monomial(ring, e, coeff)
            equations[name] = rhs
        sys = GfSystem(ring, equations, target, dict(self.prov), self.problem.scale, self.problem)
        sys.check_closed()
        return sys


def _index_sum(name):
    if name in ("G", "L"):
        return 0
    inside = name[2:-1]
    return sum(abs(int(x)) for x in inside.split(","))


def system_ring(varnames, target):
    """Deterministic lex ring: system vars desc by (index sum, name), then target, then t."""
    rest = sorted(
        (v for v in varnames if v != target),
        key=lambda v: (-_index_sum(v), v),
    )
    return tuple(rest) + (target, "t")


def build_excursion_system(problem: WalkProblem) -> GfSystem:
    """Closed system for excursions staying >= lower; target f[c,c], c = -lower."""
    if problem.walk_class != "excursion":
        raise ValidationError("need an excursion problem")
    if problem.start_altitude != 0:
        raise ValidationError("system builders assume start altitude 0")
    c = -problem.lower
    b = _Builder(problem)
    target = fvar(c, c)
    b.run([target])
    return b.finish(target)


def build_meander_system(problem: WalkProblem) -> GfSystem:
    """Closed system for meanders staying >= lower; target k[c]."""
    if problem.walk_class != "meander":
        raise ValidationError("need a meander problem")
    if problem.start_altitude != 0:
        raise ValidationError("system builders assume start altitude 0")
    c = -problem.lower
    b = _Builder(problem)
    target = kvar(c)
    b.run([target])
    return b.finish(target)


def build_bridge_system(problem: WalkProblem) -> GfSystem:
    """Closed system for unbounded bridges; target G.

    Vertical steps are accepted when the problem validated (single sign);
    they enter the crossing sums with t^0 like any other step.
    """
    if problem.walk_class != "bridge":
        raise ValidationError("need a bridge problem")
    if problem.start_altitude != 0:
        raise ValidationError("system builders assume start altitude 0")
    b = _Builder(problem)
    b.run(["G"])
    return b.finish("G")


def free_unbounded_gf(problem: WalkProblem) -> RationalFunction:
    """1 / (1 - sum w*t^dx): walks that can end anywhere, unbounded."""
    if problem.walk_class != "free-unbounded":
        raise ValidationError("need a free-unbounded problem")
    den = UniPoly.one("t")
    for s in problem.steps:
        if s.dx == 0:
            raise ValidationError("vertical step in a free walk")
        den = den - UniPoly.monomial(QQ(s.weight), s.dx, "t")
    rf = RationalFunction(UniPoly.one("t"), den)
    if problem.scale > 1 and rf.supports_compress(problem.scale):
        rf = rf.compress(problem.scale)
    return rf


def parse_var_expression(system: GfSystem, expression) -> MultiPoly:
    """Expression as {varname: coeff} linear combo or a ready MultiPoly."""
    if isinstance(expression, MultiPoly):
        return expression.extend_into(system.ring)
    ring = system.ring
    acc = MultiPoly.zero(ring)
    for name, coeff in expression.items():
        if name not in system.equations and name != "t":
            raise ValidationError(f"unknown variable reference {name}")
        acc = acc + MultiPoly.variable(ring, name) * QQ(coeff)
    return acc


def add_combination_target(system: GfSystem, expression) -> GfSystem:
    """New variable L = expression over existing variables; target switches to L.

    All referenced variables must already exist (see ensure_f_variables to
    extend the closure first).
    """
    expr = parse_var_expression(system, expression)
    for v in expr.variables_used():
        if v != "t" and v not in system.equations:
            raise ValidationError(f"unknown variable reference {v}")
    if "L" in system.equations:
        raise ValidationError("system already has a combination target")
    ring = system_ring(list(system.equations.keys()) + ["L"], "L")
    equations = {v: rhs.extend_into(ring) for v, rhs in system.equations.items()}
    equations["L"] = expr.extend_into(ring)
    prov = dict(system.provenance)
    prov["L"] = "user-combination"
    return GfSystem(ring, equations, "L", prov, system.scale, system.problem)


def ensure_f_variables(system: GfSystem, pairs) -> GfSystem:
    """Extend a built system with extra f[a,b] variables and their closures.

    Rebuilds from scratch with the enlarged seed set (construction is cheap).
    """
    b = _Builder(system.problem)
    b.run([system.target] + [fvar(a, x) for a, x in pairs])
    return b.finish(system.target)
