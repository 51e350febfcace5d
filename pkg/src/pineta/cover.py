"""Orientation double covers by a static rule table, and exotic involution reports."""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType

from .classify import smooth_compare
from .errors import CoverError
from .expr import (
    ATOMS,
    TRIVIAL,
    Z,
    Z2,
    Z2_FREE_Z2,
    Z3_SEMI_Z,
    Z_SEMI_Z,
    Atom,
    Bar,
    CircleSum,
    ConnSum,
    Expr,
    TwistToken,
    card,
    free_abelian,
    is_twist,
    normalize,
    render,
)


@dataclass(frozen=True)
class CoverRule:
    rule_id: str
    pattern: str
    result: str
    source: str


COVER_RULES = MappingProxyType({
    r.rule_id: r
    for r in [
        CoverRule("C1", "RP4 | Q", "S4", "the exotic RP4 has the standard 4-sphere as universal cover"),
        CoverRule("C2", "circle sum of n copies of RP4 / Q (S2gR counts twice)",
                  "(n-1)(S2xS2) # S4", "iterated decomposition of S4 along circles"),
        CoverRule("C3", "A", "S3xS1 # 2(S2xS2)", "blow-down description of A over a standard S4"),
        CoverRule("C4", "X # S2xS2", "cover(X) # 2(S2xS2)", "each S2xS2 summand lifts to two copies"),
        CoverRule("C5", "KbxS2 | Xi3 | KbxT2 | S3tS1", "T2xS2 | T2xS2 | T2xT2 | S3xS1",
                  "product-type covers from the torus double cover of the Klein bottle"),
        CoverRule("C6", "X #s1 A", "cover(X) # 2(S2xS2)", "cut-and-paste on covers keeps the standard structure"),
        CoverRule("C7", "twist(X)", "cover(X)", "the twist preserves the standard cover"),
        CoverRule("C8", "X # Y, pi1 = Z2 each, simply connected covers", "S3xS1 # n(S2xS2), n = chi(X # Y)",
                  "kernel of Z2 * Z2 -> Z2 is Z; n fixed by chi(cover) = 2 chi(base)"),
        CoverRule("CB", "bar(X)", "cover(X)", "reversing the Pin+ structure leaves the manifold unchanged"),
    ]
})

_ATOM_RULE = {"RP4": "C1", "Q": "C1", "S2gR": "C2", "A": "C3",
              "KbxS2": "C5", "Xi3": "C5", "KbxT2": "C5", "S3tS1": "C5"}
_Z2_CIRCLE_ATOMS = {"RP4": 1, "Q": 1, "S2gR": 2}
_KERNEL = {Z2: TRIVIAL, Z: Z, Z2_FREE_Z2: Z, Z_SEMI_Z: free_abelian(2), Z3_SEMI_Z: free_abelian(4)}

S2S2 = Atom("S2xS2")


def _sum(parts) -> Expr:
    return normalize(ConnSum(tuple(parts))) if len(parts) > 1 else normalize(parts[0])


def _z2_circle_count(x: Expr):
    """Number of RP4-type pieces in a pure circle sum of RP4 / Q / S2gR, else None."""
    if isinstance(x, Atom):
        return _Z2_CIRCLE_ATOMS.get(x.name)
    if isinstance(x, Bar):
        return _z2_circle_count(x.child)
    if isinstance(x, CircleSum):
        left = _z2_circle_count(x.left)
        if isinstance(x.right, TwistToken):
            return left
        right = _z2_circle_count(x.right)
        return None if left is None or right is None else left + right
    return None


def _simply_connected_cover(x: Expr) -> bool:
    return all(p in (S2S2, Atom("S4")) for p in _summands(x))


def _summands(x: Expr):
    return x.parts if isinstance(x, ConnSum) else (x,)


def _cover(x: Expr, rules: list) -> Expr:
    if card(x).orientable:
        raise CoverError("{} is orientable", x)
    if isinstance(x, Bar):
        rules.append("CB")
        return _cover(x.child, rules)
    if is_twist(x):
        rules.append("C7")
        return _cover(x.left, rules)
    if isinstance(x, Atom):
        rules.append(_ATOM_RULE[x.name])
        return _sum([Atom(n) for n in ATOMS[x.name].cover_rule])
    if isinstance(x, CircleSum):
        n = _z2_circle_count(x)
        if n is not None:
            rules.append("C2")
            return _sum([Atom("S4")] + [S2S2] * (n - 1))
        if x.right == Atom("A"):
            rules.append("C6")
            return _sum([_cover(x.left, rules), S2S2, S2S2])
        raise CoverError("no cover rule matches the circle sum {}", x)
    if isinstance(x, ConnSum):
        non_orientable = [p for p in x.parts if not card(p).orientable]
        others = [p for p in x.parts if card(p).orientable]
        if any(p != S2S2 for p in others):
            raise CoverError("no cover rule for orientable summands other than S2xS2 in {}", x)
        if len(non_orientable) == 1:
            base = _cover(non_orientable[0], rules)
        elif len(non_orientable) == 2:
            a, b = non_orientable
            if not (card(a).pi1 == Z2 and card(b).pi1 == Z2):
                raise CoverError("no cover rule for {}", x)
            sub: list = []
            if not (_simply_connected_cover(_cover(a, sub)) and _simply_connected_cover(_cover(b, sub))):
                raise CoverError("no cover rule for {}", x)
            n = card(a).chi + card(b).chi - 2
            if n < 0:
                raise CoverError("negative summand count for {}", x)
            rules.append("C8")
            base = _sum([Atom("S3xS1")] + [S2S2] * n)
        else:
            raise CoverError(f"no cover rule for {len(non_orientable)} non-orientable summands in {{}}", x)
        if others:
            rules.extend(["C4"] * len(others))
        return _sum([base] + [S2S2] * (2 * len(others)))
    raise CoverError("no cover rule matches {}", x)


def orientation_cover_trace(x: Expr):
    """(cover, applied rule ids); every application is checked against chi doubling."""
    n = normalize(x)
    rules: list = []
    result = _cover(n, rules)
    base, up = card(n), card(result)
    assert up.orientable, render(result)
    assert up.chi == 2 * base.chi, (render(n), base.chi, render(result), up.chi)
    assert up.sigma == 0, render(result)
    if base.pi1 in _KERNEL:
        assert up.pi1 == _KERNEL[base.pi1], (render(n), base.pi1, up.pi1)
    return result, rules


def orientation_cover(x: Expr) -> Expr:
    return orientation_cover_trace(x)[0]


@dataclass(frozen=True)
class InvolutionReport:
    exotic: Expr
    standard: Expr
    cover: Expr | None
    group: object
    verdict: str  # "exotic involution" or "no verdict"
    rules: tuple = ()
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict == "exotic involution"

    def __str__(self):
        cov = render(self.cover) if self.cover is not None else "?"
        return f"{self.verdict}: cover {cov}, group {self.group}" + (f" ({self.note})" if self.note else "")


def involution_report(exotic: Expr, standard: Expr) -> InvolutionReport:
    group = card(standard).pi1
    sv = smooth_compare(exotic, standard)
    if sv.outcome != "Exotic":
        return InvolutionReport(exotic, standard, None, group, "no verdict", (), f"smooth verdict {sv}")
    try:
        ce, re_ = orientation_cover_trace(exotic)
        cs, rs = orientation_cover_trace(standard)
    except CoverError as err:
        return InvolutionReport(exotic, standard, None, group, "no verdict", (), str(err))
    if ce != cs:
        return InvolutionReport(exotic, standard, None, group, "no verdict", (),
                                f"covers differ: {render(ce)} vs {render(cs)}")
    note = ""
    if "C8" in re_ or "C8" in rs:
        note = f"summand count {len([p for p in _summands(cs) if p == S2S2])} derived from chi"
    return InvolutionReport(exotic, standard, cs, group, "exotic involution", tuple(re_ + rs), note)
