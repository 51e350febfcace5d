"""Deterministic text / JSON documents for expressions, comparisons and covers."""

from __future__ import annotations

import json

from .classify import homeo, smooth_compare
from .cover import involution_report, orientation_cover_trace
from .eta import format_fraction
from .expr import Expr, card, normalize, render
from .invariants import eta_profile, eta_set, structure_count
from .oracle import DEFAULT_MAX_ENUM, brute_eta_set


def report_data(x: Expr, oracle: bool = False, max_enum: int = DEFAULT_MAX_ENUM) -> dict:
    n = normalize(x)
    c = card(n)
    data = {
        "expression": render(n),
        "chi": c.chi,
        "sigma": c.sigma,
        "orientable": c.orientable,
        "pi1": str(c.pi1),
        "h1dim": c.h1dim,
        "w2zero": c.w2zero,
        "pin_plus": c.w2zero,
        "structure_count": structure_count(n),
        "profile": [],
        "eta_set": [],
        "eta_set_fractions": [],
        "bordism_classes": [],
        "oracle": None,
        "verdicts": {},
    }
    if c.w2zero:
        prof = eta_profile(n)
        data["profile"] = [
            {
                "label": e.label_str(),
                "restr": e.restr,
                "eta": e.value.num,
                "eta_fraction": str(e.value),
                "bordism_class": e.value.bordism_class(),
            }
            for e in prof
        ]
        es = eta_set(n)
        data["eta_set"] = list(es.nums)
        data["eta_set_fractions"] = es.fractions()
        data["bordism_classes"] = [e.value.bordism_class() for e in prof]
        if oracle:
            brute = brute_eta_set(n, max_enum)
            data["oracle"] = {"eta_set": list(brute.nums), "agrees": brute == es}
    return data


def compare_data(x: Expr, y: Expr) -> dict:
    h = homeo(x, y)
    s = smooth_compare(x, y)
    return {
        "left": report_data(x),
        "right": report_data(y),
        "homeo": {"outcome": h.outcome, "rule_chain": list(h.rule_chain),
                  "steps": [str(st) for st in h.steps], "note": h.note},
        "smooth": {
            "outcome": s.outcome,
            "rule_chain": list(s.rule_chain),
            "witness": None if s.witness is None else [list(w.nums) for w in s.witness],
            "note": s.note,
        },
    }


def cover_data(x: Expr) -> dict:
    cov, rules = orientation_cover_trace(x)
    return {
        "base": render(normalize(x)),
        "cover": render(cov),
        "rules": rules,
        "base_chi": card(x).chi,
        "cover_chi": card(cov).chi,
        "deck_group": str(card(x).pi1),
        "cover_pi1": str(card(cov).pi1),
    }


def involution_data(exotic: Expr, standard: Expr) -> dict:
    r = involution_report(exotic, standard)
    return {
        "exotic": render(normalize(exotic)),
        "standard": render(normalize(standard)),
        "verdict": r.verdict,
        "cover": None if r.cover is None else render(r.cover),
        "group": str(r.group),
        "rules": list(r.rules),
        "note": r.note,
    }


def _fmt_set(nums) -> str:
    return "{" + ", ".join(format_fraction(v) for v in nums) + "}"


def render_text(data: dict) -> str:
    lines = [
        f"expression      {data['expression']}",
        f"chi             {data['chi']}",
        f"signature       {data['sigma']}",
        f"orientable      {'yes' if data['orientable'] else 'no'}",
        f"pi1             {data['pi1']}",
        f"h1dim           {data['h1dim']}",
        f"w2 = 0          {'yes' if data['w2zero'] else 'no'}",
        f"Pin+ structures {data['structure_count']}",
    ]
    if data["pin_plus"]:
        lines.append(f"eta set         {_fmt_set(data['eta_set'])}  numerators {data['eta_set']}")
        lines.append("bordism classes {" + ", ".join(map(str, data["bordism_classes"])) + "}")
        lines.append("profile")
        for e in data["profile"]:
            restr = "-" if e["restr"] is None else e["restr"]
            lines.append(f"  [{e['label'] or '-'}] restr {restr}  eta {e['eta_fraction']:>6} "
                         f"({e['eta']:2d}/16)  class {e['bordism_class']}")
        if data["oracle"] is not None:
            status = "agrees" if data["oracle"]["agrees"] else "DISAGREES"
            lines.append(f"oracle          {data['oracle']['eta_set']} {status}")
    return "\n".join(lines)


def render_compare_text(data: dict) -> str:
    h, s = data["homeo"], data["smooth"]
    lines = [
        f"left            {data['left']['expression']}  eta {_fmt_set(data['left']['eta_set'])}",
        f"right           {data['right']['expression']}  eta {_fmt_set(data['right']['eta_set'])}",
        f"homeomorphic    {h['outcome']}" + (f" [{', '.join(h['rule_chain'])}]" if h["rule_chain"] else "")
        + (f"  ({h['note']})" if h["note"] else ""),
    ]
    lines += [f"  {st}" for st in h["steps"]]
    smooth = s["outcome"]
    if s["witness"]:
        smooth += f"  {_fmt_set(s['witness'][0])} vs {_fmt_set(s['witness'][1])}"
    if s["rule_chain"]:
        smooth += f" [{', '.join(s['rule_chain'])}]"
    if s["note"]:
        smooth += f"  ({s['note']})"
    lines.append(f"smooth          {smooth}")
    return "\n".join(lines)


def render_cover_text(data: dict) -> str:
    return "\n".join([
        f"base            {data['base']}  (chi {data['base_chi']}, pi1 {data['deck_group']})",
        f"cover           {data['cover']}  (chi {data['cover_chi']}, pi1 {data['cover_pi1']})",
        f"rules           {', '.join(data['rules'])}",
    ])


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def report(x: Expr, format: str = "text", oracle: bool = False, max_enum: int = DEFAULT_MAX_ENUM) -> str:
    data = report_data(x, oracle=oracle, max_enum=max_enum)
    if format == "json":
        return dumps(data)
    if format == "text":
        return render_text(data)
    raise ValueError(f"unknown format {format!r}")
