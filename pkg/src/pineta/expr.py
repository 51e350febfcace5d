"""Manifold expressions: generator atoms, combinators and canonical forms.

A closed 4-manifold is described as a tree over a fixed table of generator
atoms, joined by connected sum (``#``), circle sum (``#s1``), the Pin+
structure reversal ``bar`` and the mapping-torus twist.  Topological
invariants (Euler characteristic, signature, fundamental group tag,
dim H^1(-; Z/2), w2 vanishing) follow from the atom table by fixed rules.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import NoPinStructureError, PatternError, PreconditionError, UnknownAtomError
from .eta import Mod32, PinProfile, ProfileEntry


# ---------------------------------------------------------------------------
# fundamental group tags


@dataclass(frozen=True)
class GroupTag:
    kind: str
    parts: tuple = ()
    rank: int = 0

    def __str__(self):
        if self.kind == "FreeProduct":
            return "FreeProduct(" + ", ".join(str(p) for p in self.parts) + ")"
        if self.kind == "FreeAbelian":
            return f"Z^{self.rank}"
        return self.kind


TRIVIAL = GroupTag("Trivial")
Z = GroupTag("Z")
Z2 = GroupTag("Z2")
Z2_FREE_Z2 = GroupTag("Z2FreeZ2")
Z_SEMI_Z = GroupTag("ZsemiZ")
Z3_SEMI_Z = GroupTag("Z3semiZ")
UNKNOWN = GroupTag("Unknown")


def free_abelian(rank: int) -> GroupTag:
    if rank == 0:
        return TRIVIAL
    if rank == 1:
        return Z
    return GroupTag("FreeAbelian", rank=rank)


def free_product(tags) -> GroupTag:
    """Free product of group tags, flattened, sorted and with trivial factors dropped."""
    return _free_product(tuple(tags))


@lru_cache(maxsize=4096)
def _free_product(tags: tuple) -> GroupTag:
    flat = []
    for tag in tags:
        if tag.kind == "FreeProduct":
            flat.extend(tag.parts)
        elif tag == Z2_FREE_Z2:
            flat.extend((Z2, Z2))
        elif tag != TRIVIAL:
            flat.append(tag)
    if any(t == UNKNOWN for t in flat):
        return UNKNOWN
    flat.sort(key=str)
    if not flat:
        return TRIVIAL
    if len(flat) == 1:
        return flat[0]
    if flat == [Z2, Z2]:
        return Z2_FREE_Z2
    return GroupTag("FreeProduct", tuple(flat))


def circle_sum_group(left: GroupTag, right: GroupTag) -> GroupTag:
    # van Kampen along the shared orientation-reversing loop
    if left == Z2 and right == Z2:
        return Z2
    if left == Z:
        return right
    if right == Z:
        return left
    return UNKNOWN


# ---------------------------------------------------------------------------
# atom table


@dataclass(frozen=True)
class AtomRecord:
    name: str
    orientable: bool
    pi1: GroupTag
    chi: int
    sigma: int
    h1dim: int
    w2zero: bool
    profile: PinProfile
    cover_rule: tuple = ()
    loop_index: int | None = None
    description: str = field(default="", compare=False)


def _profile(h1dim, values, loop_index):
    labels = list(itertools.product((0, 1), repeat=h1dim))
    assert len(labels) == len(values)
    return tuple(
        ProfileEntry(label, None if loop_index is None else label[loop_index], Mod32(v))
        for label, v in zip(labels, values)
    )


def _atom(name, orientable, pi1, chi, sigma, h1dim, w2zero, values, cover=(), description=""):
    loop_index = None if orientable else 0
    profile = _profile(h1dim, values, loop_index) if w2zero else ()
    return AtomRecord(name, orientable, pi1, chi, sigma, h1dim, w2zero, profile,
                      tuple(cover), loop_index, description)


# Label 0 of RP4 carries +1/8; Q is RP4 circle-summed with the u=1, v=0 torus
# bundle, so its labels carry the RP4 values shifted by one.
ATOMS = {
    rec.name: rec
    for rec in [
        _atom("S4", True, TRIVIAL, 2, 0, 0, True, [0], description="4-sphere"),
        _atom("S2xS2", True, TRIVIAL, 4, 0, 0, True, [0], description="S^2 x S^2"),
        _atom("CP2", True, TRIVIAL, 3, 1, 0, False, [], description="complex projective plane"),
        _atom("RP4", False, Z2, 1, 0, 1, True, [2, 30], ["S4"],
              "real projective 4-space"),
        _atom("Q", False, Z2, 1, 0, 1, True, [18, 14], ["S4"],
              "exotic RP4 from the u=1, v=0 torus bundle"),
        _atom("S3tS1", False, Z, 0, 0, 1, True, [0, 0], ["S3xS1"],
              "non-orientable S^3 bundle over S^1"),
        _atom("A", False, Z, 2, 0, 1, True, [16, 16], ["S3xS1", "S2xS2", "S2xS2"],
              "exotic S3tS1 # S2xS2"),
        _atom("KbxS2", False, Z_SEMI_Z, 0, 0, 2, True, [0] * 4, ["T2xS2"],
              "Klein bottle x S^2"),
        _atom("Xi3", False, Z_SEMI_Z, 0, 0, 2, True, [0] * 4, ["T2xS2"],
              "non-trivial Pin+ S^2 bundle over the Klein bottle"),
        _atom("KbxT2", False, Z3_SEMI_Z, 0, 0, 4, True, [0] * 16, ["T2xT2"],
              "Klein bottle x T^2"),
        _atom("S2gR", False, Z2, 2, 0, 1, True, [0, 0], ["S2xS2"],
              "sphere bundle S(2 gamma + R) over RP2"),
        # orientable atoms that only arise as orientation covers
        _atom("S3xS1", True, Z, 0, 0, 1, True, [0, 0], description="S^3 x S^1"),
        _atom("T2xS2", True, free_abelian(2), 0, 0, 2, True, [0] * 4, description="T^2 x S^2"),
        _atom("T2xT2", True, free_abelian(4), 0, 0, 4, True, [0] * 16, description="T^4"),
    ]
}

GENERATORS = ("S4", "S2xS2", "CP2", "RP4", "Q", "S3tS1", "A", "KbxS2", "Xi3", "KbxT2", "S2gR")
COVER_ATOMS = ("S3xS1", "T2xS2", "T2xT2")
_ATOM_ORDER = {name: i for i, name in enumerate(ATOMS)}


# ---------------------------------------------------------------------------
# expression nodes


class Expr:
    __slots__ = ()

    def __str__(self):
        return render(self)


@dataclass(frozen=True, repr=False)
class Atom(Expr):
    name: str

    def __repr__(self):
        return f"Atom({self.name!r})"

    @property
    def record(self) -> AtomRecord:
        return ATOMS[self.name]


@dataclass(frozen=True, repr=False)
class ConnSum(Expr):
    parts: tuple

    def __repr__(self):
        return f"ConnSum({', '.join(map(repr, self.parts))})"


@dataclass(frozen=True, repr=False)
class CircleSum(Expr):
    left: Expr
    right: Expr

    def __repr__(self):
        return f"CircleSum({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Bar(Expr):
    child: Expr

    def __repr__(self):
        return f"Bar({self.child!r})"


@dataclass(frozen=True, repr=False)
class TwistToken(Expr):
    def __repr__(self):
        return "TwistToken()"


TWIST = TwistToken()


def _memo_hash(cls):
    # trees are immutable and hashed on every cache lookup; remember the hash
    field_hash = cls.__hash__

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = field_hash(self)
            object.__setattr__(self, "_hash", h)
            return h

    cls.__hash__ = __hash__
    return cls


for _cls in (ConnSum, CircleSum, Bar):
    _memo_hash(_cls)


def is_twist(x: Expr) -> bool:
    return isinstance(x, CircleSum) and isinstance(x.right, TwistToken)


# ---------------------------------------------------------------------------
# topological invariants


@dataclass(frozen=True)
class Card:
    orientable: bool
    pi1: GroupTag
    chi: int
    sigma: int
    h1dim: int
    w2zero: bool

    @property
    def pin_plus(self) -> bool:
        return self.w2zero


@lru_cache(maxsize=None)
def card(x: Expr) -> Card:
    """Topological invariants of a well-formed expression."""
    if isinstance(x, Atom):
        r = x.record
        return Card(r.orientable, r.pi1, r.chi, r.sigma, r.h1dim, r.w2zero)
    if isinstance(x, Bar):
        return card(x.child)
    if isinstance(x, ConnSum):
        cards = [card(p) for p in x.parts]
        return Card(
            orientable=all(c.orientable for c in cards),
            pi1=free_product(c.pi1 for c in cards),
            chi=sum(c.chi for c in cards) - 2 * (len(cards) - 1),
            sigma=sum(c.sigma for c in cards),
            h1dim=sum(c.h1dim for c in cards),
            w2zero=all(c.w2zero for c in cards),
        )
    if isinstance(x, CircleSum):
        left = card(x.left)
        if isinstance(x.right, TwistToken):
            # chi(M_A) = 0 and the twist preserves the homeomorphism type
            return left
        right = card(x.right)
        return Card(
            orientable=False,
            pi1=circle_sum_group(left.pi1, right.pi1),
            chi=left.chi + right.chi,
            sigma=left.sigma + right.sigma,
            h1dim=left.h1dim + right.h1dim - 1,
            w2zero=left.w2zero and right.w2zero,
        )
    if isinstance(x, TwistToken):
        raise PreconditionError("the twist summand only occurs as the right operand of a circle sum")
    raise TypeError(f"not an expression: {x!r}")


def check(x: Expr) -> Expr:
    """Validate the structural invariants of an expression tree; return it unchanged."""
    if isinstance(x, Atom):
        if x.name not in ATOMS:
            raise UnknownAtomError(f"unknown atom {x.name!r}")
    elif isinstance(x, Bar):
        check(x.child)
        if not card(x.child).w2zero:
            raise NoPinStructureError(f"bar needs a Pin+ operand: {x.child}")
    elif isinstance(x, ConnSum):
        if len(x.parts) < 2:
            raise PreconditionError("connected sum needs at least two summands")
        for p in x.parts:
            check(p)
    elif isinstance(x, CircleSum):
        check(x.left)
        if card(x.left).orientable:
            raise PreconditionError(f"circle sum operand is orientable: {x.left}")
        if isinstance(x.right, TwistToken):
            if not card(x.left).w2zero:
                raise NoPinStructureError(f"twist needs a Pin+ operand: {x.left}")
        else:
            check(x.right)
            if card(x.right).orientable:
                raise PreconditionError(f"circle sum operand is orientable: {x.right}")
    elif isinstance(x, TwistToken):
        raise PreconditionError("the twist summand only occurs as the right operand of a circle sum")
    else:
        raise TypeError(f"not an expression: {x!r}")
    return x


# ---------------------------------------------------------------------------
# constructors


def atom(name: str) -> Atom:
    if name not in ATOMS:
        raise UnknownAtomError(f"unknown atom {name!r}")
    return Atom(name)


def _as_expr(x):
    return atom(x) if isinstance(x, str) else x


def conn_sum(x, y, *more) -> ConnSum:
    parts = tuple(_as_expr(p) for p in (x, y, *more))
    for p in parts:
        if isinstance(p, TwistToken):
            raise PreconditionError("the twist summand cannot be connect-summed")
    return ConnSum(parts)


def circle_sum(x, y) -> CircleSum:
    x, y = _as_expr(x), _as_expr(y)
    for operand in (x, y):
        if isinstance(operand, TwistToken):
            continue
        if card(operand).orientable:
            raise PreconditionError(f"circle sum operand is orientable: {operand}")
    if isinstance(x, TwistToken):
        raise PreconditionError("the twist summand only occurs as the right operand of a circle sum")
    if isinstance(y, TwistToken) and not card(x).w2zero:
        raise NoPinStructureError(f"twist needs a Pin+ operand: {x}")
    return CircleSum(x, y)


def csum(count: int, x) -> Expr:
    """Left-associated circle sum of ``count`` copies of ``x``."""
    if count < 1:
        raise PreconditionError("circle sum repetition count must be positive")
    x = _as_expr(x)
    out = x
    for _ in range(count - 1):
        out = circle_sum(out, x)
    return out


def repeat(count: int, x) -> Expr:
    """Connected sum of ``count`` copies of ``x``."""
    if count < 1:
        raise PreconditionError("connected sum repetition count must be positive")
    x = _as_expr(x)
    return x if count == 1 else conn_sum(*([x] * count))


def bar(x) -> Expr:
    x = _as_expr(x)
    if isinstance(x, TwistToken) or not card(x).w2zero:
        raise NoPinStructureError(f"bar needs an operand with a Pin+ structure: {x}")
    return Bar(x)


def twist(x) -> CircleSum:
    x = _as_expr(x)
    c = card(x)
    if c.orientable:
        raise PreconditionError(f"twist needs a non-orientable operand: {x}")
    if not c.w2zero:
        raise NoPinStructureError(f"twist needs a Pin+ operand: {x}")
    return CircleSum(x, TWIST)


def gluck_twist(x) -> CircleSum:
    """Rewrite ``X # S2xS2`` to ``X #s1 A``."""
    n = normalize(_as_expr(x))
    s2s2 = Atom("S2xS2")
    if not isinstance(n, ConnSum) or s2s2 not in n.parts:
        raise PatternError(f"not a Gluck-twistable form (no S2xS2 summand): {n}")
    parts = list(n.parts)
    del parts[len(parts) - 1 - parts[::-1].index(s2s2)]
    rest = parts[0] if len(parts) == 1 else ConnSum(tuple(parts))
    c = card(rest)
    if c.orientable or not c.w2zero:
        raise PatternError(f"not a Gluck-twistable form (needs a non-orientable Pin+ part): {n}")
    return circle_sum(rest, Atom("A"))


# ---------------------------------------------------------------------------
# rendering and canonical forms


def _wrap(x):
    s = render(x)
    if isinstance(x, ConnSum) or (isinstance(x, CircleSum) and not is_twist(x)):
        return f"({s})"
    return s


def render(x: Expr) -> str:
    if isinstance(x, Atom):
        return x.name
    if isinstance(x, Bar):
        return f"bar({render(x.child)})"
    if isinstance(x, ConnSum):
        return " # ".join(_wrap(p) for p in x.parts)
    if isinstance(x, CircleSum):
        if isinstance(x.right, TwistToken):
            return f"twist({render(x.left)})"
        left = render(x.left) if isinstance(x.left, CircleSum) else _wrap(x.left)
        return f"{left} #s1 {_wrap(x.right)}"
    if isinstance(x, TwistToken):
        return "<twist>"
    raise TypeError(f"not an expression: {x!r}")


def _order_key(x):
    if isinstance(x, Atom):
        return (0, _ATOM_ORDER[x.name], "")
    return (1, 0, render(x))


def _flatten(parts):
    for p in parts:
        if isinstance(p, ConnSum):
            yield from _flatten(p.parts)
        else:
            yield p


_S2GR_PAIRS = {
    (Atom("RP4"), Bar(Atom("RP4"))),
    (Bar(Atom("RP4")), Atom("RP4")),
}


@lru_cache(maxsize=None)
def _normalize(x: Expr, pinned: bool) -> Expr:
    # ``pinned``: the designated loop of x is used by an enclosing circle sum,
    # so the left-most non-orientable summand of a connected sum keeps its place.
    if isinstance(x, (Atom, TwistToken)):
        return x
    if isinstance(x, Bar):
        c = _normalize(x.child, pinned)
        return c.child if isinstance(c, Bar) else Bar(c)
    if isinstance(x, CircleSum):
        left = _normalize(x.left, True)
        right = x.right if isinstance(x.right, TwistToken) else _normalize(x.right, True)
        if (left, right) in _S2GR_PAIRS:
            return Atom("S2gR")
        return CircleSum(left, right)
    if isinstance(x, ConnSum):
        raw = list(_flatten(x.parts))
        designated = None
        if pinned:
            designated = next((i for i, p in enumerate(raw) if not card(p).orientable), None)
        head, rest = [], []
        for i, p in enumerate(raw):
            q = _normalize(p, i == designated)
            pieces = list(q.parts) if isinstance(q, ConnSum) else [q]
            (head if i == designated else rest).extend(pieces)
        if head:
            rest.extend(head[1:])
            head = head[:1]
        rest = [p for p in rest if p != Atom("S4")]
        rest.sort(key=_order_key)
        parts = head + rest
        if not parts:
            return Atom("S4")
        if len(parts) == 1:
            return parts[0]
        return ConnSum(tuple(parts))
    raise TypeError(f"not an expression: {x!r}")


def normalize(x: Expr) -> Expr:
    """Canonical form: flattened and sorted connected sums, bar(bar(e)) = e, S4 summands
    dropped, and RP4 #s1 bar(RP4) rewritten to the S2gR atom."""
    return _normalize(x, False)


def canonical(x: Expr) -> str:
    return render(normalize(x))


def depth(x: Expr) -> int:
    """Tree height with atoms at depth 1; a twist adds one level above its operand."""
    if isinstance(x, Atom):
        return 1
    if isinstance(x, Bar):
        return 1 + depth(x.child)
    if isinstance(x, ConnSum):
        return 1 + max(depth(p) for p in x.parts)
    if isinstance(x, CircleSum):
        if isinstance(x.right, TwistToken):
            return 1 + depth(x.left)
        return 1 + max(depth(x.left), depth(x.right))
    raise TypeError(f"not an expression: {x!r}")


def atoms_of(x: Expr):
    """Atom names in left-to-right order."""
    if isinstance(x, Atom):
        yield x.name
    elif isinstance(x, Bar):
        yield from atoms_of(x.child)
    elif isinstance(x, ConnSum):
        for p in x.parts:
            yield from atoms_of(p)
    elif isinstance(x, CircleSum):
        yield from atoms_of(x.left)
        if not isinstance(x.right, TwistToken):
            yield from atoms_of(x.right)


def summands(x: Expr) -> tuple:
    """Top-level connected summands of the normalized expression."""
    n = normalize(x)
    return n.parts if isinstance(n, ConnSum) else (n,)
