"""Self-checking tables for the published results.

Each row pairs what the engine computes with a golden expectation.  Golden
values marked ``published`` are transcribed from the published statements;
``derived`` ones follow from a stated formula (shift by one, sumset, chi
count) applied to published inputs, never from the engine path under test.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .classify import cp2_stabilize, homeo, smooth_compare
from .cover import involution_report
from .eta import eta_from_fixed_points, format_fraction
from .expr import (
    Atom,
    card,
    conn_sum,
    csum,
    gluck_twist,
    normalize,
    render,
    repeat,
    twist,
)
from .invariants import EtaSet, eta_set, structure_count

TARGETS = ("thm0", "thmPr", "thmM", "thmInv", "propValues", "lemValues", "propComp")


@dataclass
class Row:
    item: str
    case: str
    computed: dict
    expected: dict
    origin: str = "published"
    note: str = ""

    @property
    def ok(self) -> bool:
        return all(self.computed.get(k) == v for k, v in self.expected.items())


@dataclass
class Table:
    target: str
    title: str
    rows: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def mismatches(self):
        return [r for r in self.rows if not r.ok]

    def to_data(self) -> dict:
        return {
            "target": self.target,
            "title": self.title,
            "ok": self.ok,
            "rows": [
                {"item": r.item, "case": r.case, "computed": r.computed, "expected": r.expected,
                 "origin": r.origin, "ok": r.ok, "note": r.note}
                for r in self.rows
            ],
        }

    def to_text(self) -> str:
        lines = [f"{self.target}: {self.title}"]
        for r in self.rows:
            status = "ok  " if r.ok else "FAIL"
            cells = "  ".join(f"{k}={_show(v)}" for k, v in r.computed.items())
            lines.append(f"  {status} [{r.item}] {r.case}  {cells}")
            if not r.ok:
                want = "  ".join(f"{k}={_show(v)}" for k, v in r.expected.items())
                lines.append(f"       expected ({r.origin}) {want}")
            if r.note:
                lines.append(f"       note: {r.note}")
        lines.append(f"{'PASS' if self.ok else 'FAIL'} {self.target} "
                     f"({len(self.rows) - len(self.mismatches())}/{len(self.rows)} rows)")
        return "\n".join(lines)


def _show(v):
    if isinstance(v, list) and all(isinstance(n, int) for n in v):
        return "{" + ", ".join(format_fraction(n) for n in v) + "}"
    return str(v)


def _sym(num: int) -> list:
    """{+v, -v} as sorted numerators."""
    return sorted({num % 32, (-num) % 32})


def _stab(x, count):
    return x if count == 0 else conn_sum(x, repeat(count, "S2xS2"))


def _nums(x) -> list:
    return list(eta_set(x).nums)


def _shift(nums) -> list:
    return sorted({(v + 16) % 32 for v in nums})


# ---------------------------------------------------------------------------


def prop_values() -> Table:
    t = Table("propValues", "eta values of the four stabilized families, k = 1..4")
    for k in range(1, 5):
        x = _stab(Atom("S2gR"), k - 1)
        t.rows.append(Row("1", f"S2gR # {k - 1}(S2xS2)", {"eta_set": _nums(x)}, {"eta_set": [0]}))
        for r in (1, 2, 3):
            x = _stab(csum(r, "RP4"), k - 1)
            t.rows.append(Row("2", f"csum({r}, RP4) # {k - 1}(S2xS2)", {"eta_set": _nums(x)},
                              {"eta_set": _sym(2 * r)}))
        x = _stab(Atom("S3tS1"), k - 1)
        t.rows.append(Row("3", f"S3tS1 # {k - 1}(S2xS2)", {"eta_set": _nums(x)}, {"eta_set": [0]}))
        x = _stab(Atom("A"), k - 1)
        t.rows.append(Row("4", f"A # {k - 1}(S2xS2)", {"eta_set": _nums(x)}, {"eta_set": [16]}))
    return t


def lem_values() -> Table:
    t = Table("lemValues", "structure counts and vanishing eta on the product-type generators")
    free = eta_from_fixed_points([]).num
    for name, count in (("S3tS1", 2), ("KbxS2", 4), ("Xi3", 4), ("KbxT2", 16)):
        x = Atom(name)
        t.rows.append(Row(
            f"L {name}", name,
            {"structures": structure_count(x), "eta_set": _nums(x), "fixed_point_eta": free},
            {"structures": count, "eta_set": [0], "fixed_point_eta": 0},
        ))
    return t


# published values as numerators: +-1/8, +-7/8, +-2/8, +-3/8, 0
_COMP_INPUTS = {
    "RP4": (Atom("RP4"), 2),
    "Q": (Atom("Q"), 14),
    "csum(2, RP4)": (csum(2, "RP4"), 4),
    "csum(3, RP4)": (csum(3, "RP4"), 6),
    "S2gR": (Atom("S2gR"), 0),
}


def prop_comp() -> Table:
    t = Table("propComp", "eta values on connected sums X1 # X2 of pi1 = Z2 pieces")
    for (n1, (x1, a)), (n2, (x2, b)) in itertools.combinations_with_replacement(_COMP_INPUTS.items(), 2):
        want = sorted({(s1 * a + s2 * b) % 32 for s1 in (1, -1) for s2 in (1, -1)})
        x = conn_sum(x1, x2)
        t.rows.append(Row("sumset", f"{n1} # {n2}", {"eta_set": _nums(x)}, {"eta_set": want}, "derived"))
    return t


def _thm0_bases():
    yield "S2gR", Atom("S2gR")
    for r in (1, 2, 3):
        yield f"csum({r}, RP4)", csum(r, "RP4")


def thm0() -> Table:
    t = Table("thm0", "two smooth structures detected by eta, identified after # CP2")
    base_sets = {"S2gR": [0], "csum(1, RP4)": _sym(2), "csum(2, RP4)": _sym(4), "csum(3, RP4)": _sym(6)}
    for name, x in _thm0_bases():
        for j in range(4):
            standard = _stab(x, j)
            exotic = _stab(twist(x), j)
            v = smooth_compare(exotic, standard)
            collapsed = cp2_stabilize(conn_sum(exotic, "CP2")) == cp2_stabilize(conn_sum(standard, "CP2"))
            t.rows.append(Row(
                "0", f"twist({name}) # {j}(S2xS2) vs {name} # {j}(S2xS2)",
                {"smooth": v.outcome, "exotic_eta": _nums(exotic), "standard_eta": _nums(standard),
                 "cp2_identified": collapsed},
                {"smooth": "Exotic", "exotic_eta": _shift(base_sets[name]),
                 "standard_eta": base_sets[name], "cp2_identified": True},
            ))
    return t


PIN_NONORIENTABLE = ("RP4", "Q", "S3tS1", "A", "KbxS2", "Xi3", "KbxT2", "S2gR")


def thm_pr() -> Table:
    t = Table("thmPr", "Gluck twist of X # S2xS2 shifts every eta value by one")
    for name in PIN_NONORIENTABLE:
        x = Atom(name)
        std = conn_sum(x, "S2xS2")
        y = gluck_twist(std)
        h = homeo(y, std)
        t.rows.append(Row(
            "Pr", f"gluck({name} # S2xS2)",
            {"eta_set": _nums(y), "homeo": h.outcome, "via_R2": "R2" in h.rule_chain,
             "smooth": smooth_compare(y, std).outcome},
            {"eta_set": _shift(_nums(x)), "homeo": "Yes", "via_R2": True},
            "derived",
        ))
    return t


def _thm0_pairings():
    bases = [("S2gR", Atom("S2gR")), ("RP4", Atom("RP4")), ("csum(2, RP4)", csum(2, "RP4")),
             ("csum(3, RP4)", csum(3, "RP4"))]
    for (n1, x1), (n2, x2) in itertools.product(bases, repeat=2):
        yield f"twist({n1}) # {n2} vs {n1} # {n2}", conn_sum(twist(x1), x2), conn_sum(x1, x2)
        yield f"twist({n1}) # twist({n2}) vs {n1} # {n2}", conn_sum(twist(x1), twist(x2)), conn_sum(x1, x2)


def thm_m() -> Table:
    t = Table("thmM", "exotic structures detected by eta via Gluck twists, and pairings")
    for item, name in (("1", "S3tS1"), ("2", "KbxS2"), ("3", "Xi3"), ("4", "KbxT2")):
        for k in (1, 2, 3):
            standard = _stab(Atom(name), k)
            exotic = gluck_twist(standard)
            v = smooth_compare(exotic, standard)
            t.rows.append(Row(
                item, f"gluck({name} # {k}(S2xS2)) vs {name} # {k}(S2xS2)",
                {"smooth": v.outcome, "exotic_eta": _nums(exotic), "standard_eta": _nums(standard)},
                {"smooth": "Exotic", "exotic_eta": [16], "standard_eta": [0]},
            ))
    for case, exotic, standard in _thm0_pairings():
        v = smooth_compare(exotic, standard)
        computed = {"smooth": v.outcome, "exotic_eta": _nums(exotic), "standard_eta": _nums(standard)}
        if case == "twist(S2gR) # S2gR vs S2gR # S2gR":
            t.rows.append(Row("5", case, computed,
                              {"smooth": "Exotic", "exotic_eta": [16], "standard_eta": [0]}))
        else:
            note = "" if v.outcome == "Exotic" else "eta sets overlap; not detected for this pairing"
            t.rows.append(Row("5", case, computed, {}, "engine", note))
    return t


def _k_from_count(n: int) -> str:
    return f"k = {n // 2 + 1}" if n % 2 == 0 else "no integral k"


def thm_inv() -> Table:
    t = Table("thmInv", "exotic free orientation-reversing involutions on standard covers")

    def add(item, case, exotic, standard, cover_parts, group, origin="published", note=""):
        r = involution_report(exotic, standard)
        want_cover = render(normalize(conn_sum(*cover_parts) if len(cover_parts) > 1 else Atom(cover_parts[0])))
        t.rows.append(Row(
            item, case,
            {"verdict": r.verdict, "cover": None if r.cover is None else render(r.cover),
             "group": str(r.group)},
            {"verdict": "exotic involution", "cover": want_cover, "group": group},
            origin, note or r.note,
        ))

    for k in (1, 2, 3):
        x = csum(k, "RP4")
        add("1", f"k={k}: twist(csum({k}, RP4)) vs csum({k}, RP4)", twist(x), x,
            ["S4"] + ["S2xS2"] * (k - 1), "Z2")
    for k in (1, 2, 3):
        std = _stab(Atom("S3tS1"), k)
        add("2", f"k={k}: gluck(S3tS1 # {k}(S2xS2))", gluck_twist(std), std,
            ["S3xS1"] + ["S2xS2"] * (2 * k), "Z")
    for name in ("KbxS2", "Xi3"):
        for k in (1, 2, 3):
            std = _stab(Atom(name), k)
            add("3", f"k={k}: gluck({name} # {k}(S2xS2))", gluck_twist(std), std,
                ["T2xS2"] + ["S2xS2"] * (2 * k), "ZsemiZ")
    for k in (1, 2, 3):
        std = _stab(Atom("KbxT2"), k)
        add("4", f"k={k}: gluck(KbxT2 # {k}(S2xS2))", gluck_twist(std), std,
            ["T2xT2"] + ["S2xS2"] * (2 * k), "Z3semiZ")
    pieces = [("RP4", Atom("RP4")), ("S2gR", Atom("S2gR")), ("csum(2, RP4)", csum(2, "RP4"))]
    for (n1, x1), (n2, x2) in itertools.product(pieces, repeat=2):
        std = conn_sum(x1, x2)
        if smooth_compare(conn_sum(twist(x1), x2), std).outcome != "Exotic":
            # eta does not separate this pairing, so it yields no exotic involution
            continue
        n = card(std).chi
        note = (f"summand count n = chi = {n} derived from chi doubling; "
                f"stated form 2(k-1) gives {_k_from_count(n)}")
        add("5", f"twist({n1}) # {n2} vs {n1} # {n2}", conn_sum(twist(x1), x2), std,
            ["S3xS1"] + ["S2xS2"] * n, "Z2FreeZ2", "derived", note)
    return t


_BUILDERS = {
    "thm0": thm0,
    "thmPr": thm_pr,
    "thmM": thm_m,
    "thmInv": thm_inv,
    "propValues": prop_values,
    "lemValues": lem_values,
    "propComp": prop_comp,
}


def reproduce(target: str) -> Table:
    try:
        builder = _BUILDERS[target]
    except KeyError:
        raise KeyError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}") from None
    return builder()


__all__ = ["TARGETS", "EtaSet", "Row", "Table", "reproduce"]
