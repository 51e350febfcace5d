"""Homeomorphism and smooth-structure verdicts.

Homeomorphism is certified by rewriting both expressions with a fixed rule
base until they reach a common canonical form; the engine never answers
"not homeomorphic".  Smooth verdicts combine that with eta-set disjointness
(exotic) or a chain of diffeomorphism rewrites (diffeomorphic).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PatternError, PreconditionError
from .expr import (
    Z,
    Z2,
    Atom,
    Bar,
    CircleSum,
    ConnSum,
    Expr,
    TwistToken,
    card,
    is_twist,
    normalize,
    render,
)
from .invariants import EtaSet, eta_set, pin_plus

HOMEO_RULES = {
    "EQ": "identical canonical forms",
    "R1": "twist(X) ~ X when pi1(X) = Z2",
    "R2": "X #s1 A ~ X # S2xS2",
    "R3": "A ~ S3tS1 # S2xS2",
    "R4": "Q ~ RP4",
    "R5": "congruence under # and #s1",
    "R6": "stable classification: non-orientable, pi1 = Z, w2 = 0, equal chi >= 6, "
          ">= 3 S2xS2 summands",
    "RB": "bar(X) ~ X outside circle-sum operands (same manifold, reversed Pin+ structure)",
}

SMOOTH_RULES = {
    "D0": "identical canonical forms",
    "DB": "bar(X) = X outside circle-sum operands",
    "D1": "twist(W) # CP2 = W # CP2",
    "D2": "(W #s1 A) # CP2 = W # S2xS2 # CP2",
    "D3": "Q # CP2 = RP4 # CP2",
}

MAX_STEPS = 1000


# ---------------------------------------------------------------------------
# tree positions


def subterm(x: Expr, path: tuple) -> Expr:
    for i in path:
        if isinstance(x, ConnSum):
            x = x.parts[i]
        elif isinstance(x, CircleSum):
            x = (x.left, x.right)[i]
        elif isinstance(x, Bar):
            x = x.child
        else:
            raise IndexError(f"no child {i} in {x!r}")
    return x


def replace(x: Expr, path: tuple, new: Expr) -> Expr:
    if not path:
        return new
    i, rest = path[0], path[1:]
    if isinstance(x, ConnSum):
        parts = list(x.parts)
        parts[i] = replace(parts[i], rest, new)
        return ConnSum(tuple(parts))
    if isinstance(x, CircleSum):
        if i == 0:
            return CircleSum(replace(x.left, rest, new), x.right)
        return CircleSum(x.left, replace(x.right, rest, new))
    if isinstance(x, Bar):
        return Bar(replace(x.child, rest, new))
    raise IndexError(f"no child {i} in {x!r}")


def _positions(x: Expr, path=(), in_circle=False):
    """Pre-order (node, path, inside-a-circle-sum-operand) triples."""
    yield x, path, in_circle
    if isinstance(x, ConnSum):
        for i, p in enumerate(x.parts):
            yield from _positions(p, path + (i,), in_circle)
    elif isinstance(x, CircleSum):
        yield from _positions(x.left, path + (0,), True)
        if not isinstance(x.right, TwistToken):
            yield from _positions(x.right, path + (1,), True)
    elif isinstance(x, Bar):
        yield from _positions(x.child, path + (0,), in_circle)


# ---------------------------------------------------------------------------
# topological rewrite rules: node -> replacement or None


def _r1(node, in_circle):
    if is_twist(node) and card(node.left).pi1 == Z2:
        return node.left
    return None


def _r2(node, in_circle):
    if isinstance(node, CircleSum) and not isinstance(node.right, TwistToken):
        if node.right == Atom("A"):
            return ConnSum((node.left, Atom("S2xS2")))
        if node.left == Atom("A"):
            return ConnSum((node.right, Atom("S2xS2")))
    return None


def _r3(node, in_circle):
    if node == Atom("A"):
        return ConnSum((Atom("S3tS1"), Atom("S2xS2")))
    return None


def _r4(node, in_circle):
    if node == Atom("Q"):
        return Atom("RP4")
    return None


def _rb(node, in_circle):
    if isinstance(node, Bar) and not in_circle:
        return node.child
    return None


_TOPO_RULES = {"R1": _r1, "R2": _r2, "R4": _r4, "R3": _r3, "RB": _rb}


@dataclass(frozen=True)
class RuleStep:
    rule: str
    side: str
    path: tuple
    before: Expr
    after: Expr

    def ids(self):
        return (self.rule, "R5") if self.path else (self.rule,)

    def __str__(self):
        where = "root" if not self.path else "at " + ".".join(map(str, self.path))
        return f"{self.rule} ({self.side}, {where}): {render(self.before)} -> {render(self.after)}"


def _rewrite(x: Expr, rules: dict, side: str):
    current = normalize(x)
    steps = []
    for _ in range(MAX_STEPS):
        for node, path, in_circle in _positions(current):
            hit = None
            for rule, fn in rules.items():
                new = fn(node, in_circle)
                if new is not None:
                    hit = (rule, new)
                    break
            if hit:
                break
        else:
            return current, steps
        rule, new = hit
        after = normalize(replace(current, path, new))
        steps.append(RuleStep(rule, side, path, current, after))
        current = after
    raise RuntimeError(f"rewriting did not terminate on {render(x)}")


def topological_form(x: Expr) -> Expr:
    """Canonical representative of the homeomorphism class reachable by the rule base."""
    return _rewrite(x, _TOPO_RULES, "left")[0]


def _s2s2_count(x: Expr) -> int:
    parts = x.parts if isinstance(x, ConnSum) else (x,)
    return sum(1 for p in parts if p == Atom("S2xS2"))


def _r6_applies(x: Expr, y: Expr) -> bool:
    cx, cy = card(x), card(y)
    return all(
        not c.orientable and c.pi1 == Z and c.w2zero and c.chi >= 6
        for c in (cx, cy)
    ) and cx.chi == cy.chi and _s2s2_count(x) >= 3 and _s2s2_count(y) >= 3


# ---------------------------------------------------------------------------
# homeomorphism


@dataclass(frozen=True)
class HomeoVerdict:
    outcome: str  # "Yes" or "Unknown"
    steps: tuple = ()
    rule_chain: tuple = ()
    note: str = ""

    @property
    def yes(self) -> bool:
        return self.outcome == "Yes"

    def __str__(self):
        if self.yes:
            return "Yes[" + ", ".join(self.rule_chain) + "]"
        return f"Unknown ({self.note})" if self.note else "Unknown"


def _mismatch(x: Expr, y: Expr) -> list:
    cx, cy = card(x), card(y)
    out = []
    for name in ("orientable", "pi1", "chi", "h1dim", "w2zero"):
        a, b = getattr(cx, name), getattr(cy, name)
        if a != b:
            out.append(f"{name} {a} vs {b}")
    return out


def _assert_homeo_invariants(x: Expr, y: Expr):
    bad = _mismatch(x, y)
    assert not bad, f"Yes verdict with invariant mismatch: {bad}"
    if pin_plus(x) and pin_plus(y):
        # eta mod Z is a homeomorphism invariant
        mx = {v % 16 for v in eta_set(x).nums}
        my = {v % 16 for v in eta_set(y).nums}
        assert mx == my, f"Yes verdict with eta mod Z mismatch: {mx} vs {my}"


def homeo(x: Expr, y: Expr) -> HomeoVerdict:
    tx, left = _rewrite(x, _TOPO_RULES, "left")
    ty, right = _rewrite(y, _TOPO_RULES, "right")
    steps = tuple(left + right)
    chain = tuple(i for s in steps for i in s.ids())
    if tx == ty:
        verdict = HomeoVerdict("Yes", steps, chain or ("EQ",))
    elif _r6_applies(tx, ty):
        verdict = HomeoVerdict("Yes", steps, chain + ("R6",))
    else:
        bad = _mismatch(x, y)
        note = ("invariant mismatch: " + "; ".join(bad)) if bad else "no rule chain connects the forms"
        return HomeoVerdict("Unknown", steps, chain, note)
    _assert_homeo_invariants(x, y)
    return verdict


def replay(verdict: HomeoVerdict, x: Expr, y: Expr) -> bool:
    """Re-execute the rule chain of a Yes verdict step by step."""
    if not verdict.yes:
        return False
    current = {"left": normalize(x), "right": normalize(y)}
    for step in verdict.steps:
        if current[step.side] != step.before:
            return False
        node = subterm(step.before, step.path)
        in_circle = any(
            isinstance(subterm(step.before, step.path[:i]), CircleSum)
            for i in range(len(step.path))
        )
        new = _TOPO_RULES[step.rule](node, in_circle)
        if new is None or normalize(replace(step.before, step.path, new)) != step.after:
            return False
        current[step.side] = step.after
    if current["left"] == current["right"]:
        return True
    return verdict.rule_chain[-1:] == ("R6",) and _r6_applies(current["left"], current["right"])


# ---------------------------------------------------------------------------
# smooth comparison


def _db(node, in_circle):
    if isinstance(node, Bar) and not in_circle:
        return node.child
    return None


def _collapse_summand(s: Expr):
    if isinstance(s, Bar):
        return "DB", s.child
    if is_twist(s):
        return "D1", s.left
    if isinstance(s, CircleSum) and s.right == Atom("A"):
        return "D2", ConnSum((s.left, Atom("S2xS2")))
    if s == Atom("Q"):
        return "D3", Atom("RP4")
    return None


def cp2_stabilize_trace(x: Expr):
    """Collapse rules valid after a CP2 summand; returns (expression, applied rule ids)."""
    n = normalize(x)
    parts = list(n.parts) if isinstance(n, ConnSum) else [n]
    if Atom("CP2") not in parts:
        raise PatternError(f"no CP2 summand at top level: {render(n)}")
    applied = []
    for _ in range(MAX_STEPS):
        for i, s in enumerate(parts):
            hit = _collapse_summand(s)
            if hit:
                break
        else:
            return n, applied
        rule, new = hit
        applied.append(rule)
        parts[i] = new
        n = normalize(ConnSum(tuple(parts)))
        parts = list(n.parts) if isinstance(n, ConnSum) else [n]
    raise RuntimeError("CP2 collapse did not terminate")


def cp2_stabilize(x: Expr) -> Expr:
    return cp2_stabilize_trace(x)[0]


@dataclass(frozen=True)
class SmoothVerdict:
    outcome: str  # "Exotic", "Diffeomorphic" or "Unknown"
    witness: tuple | None = None
    rule_chain: tuple = ()
    homeo: HomeoVerdict | None = None
    note: str = ""

    def __str__(self):
        if self.outcome == "Exotic":
            a, b = self.witness
            return f"Exotic {a} vs {b}"
        if self.outcome == "Diffeomorphic":
            return "Diffeomorphic[" + ", ".join(self.rule_chain) + "]"
        return f"Unknown ({self.note})" if self.note else "Unknown"


def _smooth_form(x: Expr):
    form, steps = _rewrite(x, {"DB": _db}, "left")
    rules = [s.rule for s in steps]
    if Atom("CP2") in (form.parts if isinstance(form, ConnSum) else (form,)):
        form, more = cp2_stabilize_trace(form)
        rules += more
    return form, rules


def smooth_compare(x: Expr, y: Expr) -> SmoothVerdict:
    nx, ny = normalize(x), normalize(y)
    h = homeo(x, y)
    if nx == ny:
        return SmoothVerdict("Diffeomorphic", None, ("D0",), h)
    fx, rx = _smooth_form(nx)
    fy, ry = _smooth_form(ny)
    if fx == fy:
        return SmoothVerdict("Diffeomorphic", None, tuple(rx + ry), h)
    if h.yes and pin_plus(x) and pin_plus(y):
        ex, ey = eta_set(x), eta_set(y)
        if ex.isdisjoint(ey):
            return SmoothVerdict("Exotic", (ex, ey), (), h)
        return SmoothVerdict("Unknown", None, (), h, "eta sets overlap")
    if not h.yes:
        return SmoothVerdict("Unknown", None, (), h, "homeomorphism not certified")
    return SmoothVerdict("Unknown", None, (), h, "no Pin+ structure to compare")


# ---------------------------------------------------------------------------
# limits of the eta invariant on pi1 = Z2


@dataclass
class LimitsReport:
    classes: list = field(default_factory=list)  # (EtaSet, [Expr])
    shift: int | None = None

    def __str__(self):
        lines = [f"{len(self.classes)} class(es)"]
        for es, members in self.classes:
            lines.append(f"  {es.nums} {es}: " + ", ".join(render(m) for m in members))
        if self.shift is not None:
            lines.append(f"  shift {self.shift}")
        return "\n".join(lines)


def limits_report(family) -> LimitsReport:
    family = list(family)
    if not family:
        raise PreconditionError("empty family")
    for m in family:
        if card(m).pi1 != Z2:
            raise PreconditionError(f"fundamental group of {render(m)} is not Z2")
        if not homeo(family[0], m).yes:
            raise PreconditionError(f"{render(m)} not certified homeomorphic to {render(family[0])}")
    groups: dict = {}
    for m in family:
        groups.setdefault(eta_set(m), []).append(m)
    report = LimitsReport(sorted(groups.items(), key=lambda kv: kv[0].nums))
    assert len(report.classes) <= 2, "more than two eta classes on a Z2 family"
    if len(report.classes) == 2:
        a, b = report.classes[0][0], report.classes[1][0]
        assert a.shifted() == b, f"eta classes {a.nums}, {b.nums} do not differ by one"
        report.shift = 16
    return report


__all__ = [
    "EtaSet",
    "HomeoVerdict",
    "LimitsReport",
    "RuleStep",
    "SmoothVerdict",
    "cp2_stabilize",
    "cp2_stabilize_trace",
    "homeo",
    "limits_report",
    "replay",
    "smooth_compare",
    "topological_form",
]
