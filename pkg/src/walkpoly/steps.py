"""Step sets, walk problems, and validation.

Steps are pairs (dx, dy) with dx >= 0, optionally weighted.  Fractional dx
(e.g. half-point scoring plays) is handled by pre-scaling: every dx is
multiplied by the least common denominator m at parse time, the problem
records scale=m, and results are reported in the original variable whenever
the support allows the substitution back.

Walk classes:
    bounded-free    stay within [lower, upper], end anywhere
    bounded-bridge  stay within [lower, upper], end at altitude 0
    excursion       stay >= lower, end at altitude 0
    meander         stay >= lower, end anywhere
    bridge          unbounded, end at altitude 0
    free-unbounded  unbounded, end anywhere
    irreducible-return  bookkeeping class for interior-above-endpoint counts

Vertical steps (dx = 0) are where infinite families hide.  The rules:
both a (0,+) and a (0,-) step are only allowed in bounded classes, and then
only when no zero-length loop fits inside the strip; meanders and free
walks reject the directions that let a walk grow without consuming length.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .errors import InfiniteFamilyError, ValidationError
from .qnum import QQ, Q1, ilcm, qq, qq_str

WALK_CLASSES = (
    "bounded-free",
    "bounded-bridge",
    "excursion",
    "meander",
    "bridge",
    "free-unbounded",
    "irreducible-return",
)

BOUNDED_CLASSES = ("bounded-free", "bounded-bridge")
SEMI_BOUNDED_CLASSES = ("excursion", "meander")
UNBOUNDED_CLASSES = ("bridge", "free-unbounded")
RETURNING_CLASSES = ("bounded-bridge", "excursion", "bridge", "irreducible-return")


@dataclass(frozen=True, order=True)
class Step:
    dx: int
    dy: int
    weight: object = Q1

    def __post_init__(self):
        object.__setattr__(self, "weight", qq(self.weight))
        if self.dx < 0:
            raise ValidationError("steps must not move left (dx >= 0)")
        if self.dx == 0 and self.dy == 0:
            raise ValidationError("the zero step (0,0) is not allowed")
        if self.weight == 0:
            raise ValidationError("zero-weight step")


@dataclass(frozen=True)
class StepSet:
    steps: tuple

    def __post_init__(self):
        seen = set()
        for s in self.steps:
            if (s.dx, s.dy) in seen:
                raise ValidationError(f"duplicate step ({s.dx},{s.dy})")
            seen.add((s.dx, s.dy))
        object.__setattr__(self, "steps", tuple(sorted(self.steps)))

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    def max_up(self):
        return max((s.dy for s in self.steps if s.dy > 0), default=0)

    def max_down(self):
        return max((-s.dy for s in self.steps if s.dy < 0), default=0)

    def max_abs_dy(self):
        return max(self.max_up(), self.max_down())

    def vertical(self, sign=None):
        out = [s for s in self.steps if s.dx == 0]
        if sign is not None:
            out = [s for s in out if (s.dy > 0) == (sign > 0)]
        return out

    def horizontals(self):
        return [s for s in self.steps if s.dx > 0 and s.dy == 0]

    def unweighted(self):
        return all(s.weight == 1 for s in self.steps)


@dataclass(frozen=True)
class WalkProblem:
    steps: StepSet
    walk_class: str
    lower: object = None  # int <= 0 or None
    upper: object = None  # int >= 0 or None
    start_altitude: int = 0
    scale: int = 1
    warnings: tuple = ()
    suggested_reduction: object = None

    def describe(self):
        return {
            "class": self.walk_class,
            "steps": [
                {"dx": s.dx, "dy": s.dy, "weight": qq_str(s.weight)} for s in self.steps
            ],
            "lower": self.lower,
            "upper": self.upper,
            "start": self.start_altitude,
            "scale": self.scale,
            "warnings": list(self.warnings),
        }


@dataclass(frozen=True)
class CountTable:
    problem: WalkProblem
    counts: tuple

    def __getitem__(self, n):
        return self.counts[n]

    def __len__(self):
        return len(self.counts)

    def as_strings(self):
        return [qq_str(c) for c in self.counts]


def _vertical_loop_in_strip(verticals, lower, upper):
    """Shortest zero-sum vertical loop realizable inside [lower, upper], or None."""
    moves = [s.dy for s in verticals]
    if not moves:
        return None
    alts = range(lower, upper + 1)
    adj = {a: [a + m for m in moves if lower <= a + m <= upper] for a in alts}
    color = {a: 0 for a in alts}
    parent = {}

    def dfs(a):
        color[a] = 1
        for nb in adj[a]:
            if color[nb] == 0:
                parent[nb] = a
                found = dfs(nb)
                if found is not None:
                    return found
            elif color[nb] == 1:
                # back edge a -> nb closes the cycle nb -> ... -> a -> nb
                path = [a]
                x = a
                while x != nb:
                    x = parent[x]
                    path.append(x)
                path.reverse()
                path.append(nb)
                return [path[i + 1] - path[i] for i in range(len(path) - 1)]
        color[a] = 2
        return None

    for a in alts:
        if color[a] == 0:
            loop = dfs(a)
            if loop is not None:
                return loop
    return None


def _scale_steps(raw):
    """Multiply all dx by the lcd of the dx values; return (steps, m)."""
    parsed = []
    lcd = 1
    for item in raw:
        if isinstance(item, Step):
            dx, dy, w = QQ(item.dx), item.dy, item.weight
        elif isinstance(item, dict):
            dx, dy = qq(item["dx"]), int(item["dy"])
            w = qq(item.get("weight", 1))
        else:
            dx, dy = qq(item[0]), int(item[1])
            w = qq(item[2]) if len(item) > 2 else Q1
        if dx < 0:
            raise ValidationError("steps must not move left (dx >= 0)")
        parsed.append((dx, dy, w))
        lcd = ilcm(lcd, dx.denominator)
    steps = tuple(Step(int(dx * lcd), dy, w) for dx, dy, w in parsed)
    return steps, int(lcd)


def validate(raw_steps, walk_class, lower=None, upper=None, start_altitude=0):
    """Build a validated WalkProblem or raise (ValidationError/InfiniteFamilyError).

    Rejections target step sets whose walk count is infinite for the class.
    A common factor g > 1 of all dy is reported (with the reduced equivalent
    problem attached), never silently applied.
    """
    if not raw_steps:
        raise ValidationError("empty step set")
    if walk_class not in WALK_CLASSES:
        raise ValidationError(f"unknown walk class {walk_class!r}")

    steps, scale = _scale_steps(raw_steps)
    warnings = []
    if scale > 1:
        warnings.append(
            f"fractional dx pre-scaled by {scale}; internal variable is t^(1/{scale})"
        )

    stepset = StepSet(steps)

    if walk_class in BOUNDED_CLASSES:
        if lower is None or upper is None:
            raise ValidationError(f"{walk_class} needs both bounds")
        lower, upper = int(lower), int(upper)
        if lower > 0 or upper < 0:
            raise ValidationError("bounds must satisfy lower <= 0 <= upper")
    elif walk_class in SEMI_BOUNDED_CLASSES:
        if lower is None:
            raise ValidationError(f"{walk_class} needs a lower bound")
        if upper is not None:
            raise ValidationError(f"{walk_class} carries no upper bound")
        lower = int(lower)
        if lower > 0:
            raise ValidationError("lower bound must be <= 0")
    elif walk_class in UNBOUNDED_CLASSES:
        if lower is not None or upper is not None:
            raise ValidationError(f"{walk_class} carries no bounds")

    if not (lower is None or lower <= start_altitude) or not (
        upper is None or start_altitude <= upper
    ):
        raise ValidationError("start altitude outside bounds")

    ups = stepset.vertical(+1)
    downs = stepset.vertical(-1)

    if walk_class in BOUNDED_CLASSES:
        if ups and downs:
            loop = _vertical_loop_in_strip(ups + downs, lower, upper)
            if loop is not None:
                raise InfiniteFamilyError(
                    "infinite family: zero-length vertical loop fits between the bounds",
                    witness=loop,
                )
    else:
        if ups and downs:
            m, n = ups[0].dy, -downs[0].dy
            raise InfiniteFamilyError(
                "infinite family: opposite vertical steps without an upper bound",
                witness=[ups[0].dy] * n + [downs[0].dy] * m,
            )
        if walk_class == "meander" and ups:
            raise InfiniteFamilyError(
                "infinite family: a (0,+) step lets a meander grow at length 0",
                witness=[ups[0].dy],
            )
        if walk_class == "free-unbounded" and (ups or downs):
            v = (ups + downs)[0]
            raise InfiniteFamilyError(
                "infinite family: vertical steps give infinitely many free walks",
                witness=[v.dy],
            )
        if walk_class in ("bridge", "irreducible-return") and (ups or downs):
            warnings.append(
                "vertical steps in a returning unbounded class: counts stay finite "
                "only because all verticals share one sign"
            )

    # returning classes with vertical ups need some descending step to return
    gcd_dy = 0
    for s in stepset:
        from math import gcd

        gcd_dy = gcd(gcd_dy, abs(s.dy))
    suggested = None
    if gcd_dy > 1:
        warnings.append(
            f"all dy share the common factor {gcd_dy}; an equivalent reduced problem is attached"
        )
        reduced_steps = [Step(s.dx, s.dy // gcd_dy, s.weight) for s in stepset]
        red_lower = None if lower is None else -((-lower) // gcd_dy)
        red_upper = None if upper is None else upper // gcd_dy
        suggested = WalkProblem(
            StepSet(tuple(reduced_steps)),
            walk_class,
            red_lower,
            red_upper,
            start_altitude // gcd_dy,
            scale,
            ("reduced by common dy factor",),
        )

    return WalkProblem(
        stepset,
        walk_class,
        lower,
        upper,
        int(start_altitude),
        scale,
        tuple(warnings),
        suggested,
    )


def problem_from_json(text_or_obj, walk_class=None):
    """Parse the step-set JSON interface.

    {"steps":[{"dx":1,"dy":-2,"weight":"1/2"}], "class":"excursion", "lower":0}
    """
    obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
    cls = walk_class or obj.get("class")
    if cls is None:
        raise ValidationError("missing walk class")
    return validate(
        obj["steps"],
        cls,
        lower=obj.get("lower"),
        upper=obj.get("upper"),
        start_altitude=obj.get("start", 0),
    )


_KINDS = ("generic", "zero-returning", "semi-bounded", "unbounded")


def random_step_set(kind="generic", seed=0, size=None):
    """Deterministic pseudo-random step set valid for the matching class.

    zero-returning sets carry at least one up and one down step; unbounded
    sets contain no vertical steps at all.
    """
    if kind not in _KINDS:
        raise ValidationError(f"unknown kind {kind!r}")
    rng = random.Random(f"{kind}:{seed}")
    for _ in range(500):
        n = size or rng.randint(2, 5)
        cand = set()
        while len(cand) < n:
            dx = rng.randint(0, 3)
            dy = rng.randint(-4, 4)
            if (dx, dy) == (0, 0):
                continue
            if kind == "unbounded" and dx == 0:
                continue
            cand.add((dx, dy))
        steps = [Step(dx, dy) for dx, dy in sorted(cand)]
        dys = [s.dy for s in steps]
        if kind in ("zero-returning", "semi-bounded") and not (
            any(d > 0 for d in dys) and any(d < 0 for d in dys)
        ):
            continue
        try:
            if kind == "zero-returning":
                validate(steps, "excursion", lower=0)
                validate(steps, "bridge")
            elif kind == "semi-bounded":
                validate(steps, "excursion", lower=0)
            elif kind == "unbounded":
                validate(steps, "bridge")
            else:
                validate(steps, "bounded-free", lower=-2, upper=2)
        except (ValidationError, InfiniteFamilyError):
            continue
        return StepSet(tuple(steps))
    raise ValidationError("could not generate a valid step set")
