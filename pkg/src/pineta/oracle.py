"""Brute-force eta oracle.

Every atom occurrence independently picks one of its stored Pin+ structures;
an assignment survives when, at every circle sum, the two operands agree on
the bit of their designated loop.  Surviving assignments are summed in Z/32.
Only the atom table and the tree shape are used, never the fused profiles of
:mod:`pineta.invariants`.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import EnumerationLimitError, NoPinStructureError, PinetaError
from .eta import Mod32
from .expr import (
    ATOMS,
    GENERATORS,
    Atom,
    Bar,
    CircleSum,
    ConnSum,
    Expr,
    TwistToken,
    bar,
    circle_sum,
    conn_sum,
    csum,
    twist,
)
from .invariants import EtaSet

DEFAULT_MAX_ENUM = 1 << 20


_KINDS = {name: i for i, name in enumerate(ATOMS)}


def _atom_tables():
    width = max(len(r.profile) for r in ATOMS.values())
    radix = np.zeros(len(ATOMS), dtype=np.int64)
    vals = np.zeros((len(ATOMS), width), dtype=np.int64)
    restr = np.full((len(ATOMS), width), -1, dtype=np.int64)
    for name, i in _KINDS.items():
        prof = ATOMS[name].profile
        radix[i] = len(prof)
        for j, entry in enumerate(prof):
            vals[i, j] = entry.value.num
            if entry.restr is not None:
                restr[i, j] = entry.restr
    return radix, vals, restr


_RADIX, _VALS, _RESTR = _atom_tables()
_HBITS = np.array([r.h1dim for r in ATOMS.values()], dtype=np.int64)
_LOOP = np.array([-1 if r.loop_index is None else r.loop_index for r in ATOMS.values()], dtype=np.int64)


@dataclass
class AtomAssignmentProblem:
    leaves: list = field(default_factory=list)  # (atom name, sign)
    constraints: list = field(default_factory=list)  # (leaf, leaf)
    offset: int = 0

    @property
    def size(self) -> int:
        size = 1
        for name, _ in self.leaves:
            size *= len(ATOMS[name].profile)
        return size


def batch_arrays(problems):
    """Kernel input for a list of problems (see :mod:`pineta._kernels`)."""
    leaves = [leaf for p in problems for leaf in p.leaves]
    ids = np.array([_KINDS[name] for name, _ in leaves], dtype=np.int64)
    signs = np.array([sign for _, sign in leaves], dtype=np.int64)
    leaf_start = np.zeros(len(problems) + 1, dtype=np.int64)
    leaf_start[1:] = np.cumsum([len(p.leaves) for p in problems])
    cons = np.array([c for p in problems for c in p.constraints], dtype=np.int64).reshape(-1, 2)
    cons_start = np.zeros(len(problems) + 1, dtype=np.int64)
    cons_start[1:] = np.cumsum([len(p.constraints) for p in problems])
    offsets = np.array([p.offset % 32 for p in problems], dtype=np.int64)
    return (_RADIX, _VALS, _RESTR, ids, signs, leaf_start,
            cons[:, 0].copy(), cons[:, 1].copy(), cons_start, offsets)


@lru_cache(maxsize=1 << 16)
def _flat(node: Expr):
    """(leaves, constraints, offset, designated leaf) of a subtree, leaves indexed locally."""
    if isinstance(node, Atom):
        rec = ATOMS[node.name]
        if not rec.w2zero:
            raise NoPinStructureError(f"no Pin+ structure on {node.name}")
        return ((node.name, 1),), (), 0, None if rec.orientable else 0
    if isinstance(node, Bar):
        leaves, cons, offset, designated = _flat(node.child)
        return tuple((name, -sign) for name, sign in leaves), cons, -offset, designated
    if isinstance(node, ConnSum):
        leaves, cons, offset, designated = (), (), 0, None
        for p in node.parts:
            pl, pc, po, pd = _flat(p)
            shift = len(leaves)
            if designated is None and pd is not None:
                designated = pd + shift
            leaves += pl
            cons += tuple((a + shift, b + shift) for a, b in pc)
            offset += po
        return leaves, cons, offset, designated
    if isinstance(node, CircleSum):
        ll, lc, lo, ld = _flat(node.left)
        if isinstance(node.right, TwistToken):
            return ll, lc, lo + 16, ld
        rl, rc, ro, rd = _flat(node.right)
        shift = len(ll)
        cons = lc + tuple((a + shift, b + shift) for a, b in rc) + ((ld, rd + shift),)
        return ll + rl, cons, lo + ro, ld
    raise TypeError(f"not an expression: {node!r}")


def flatten(x: Expr) -> AtomAssignmentProblem:
    """Leaves of ``x`` with orientation signs, loop-agreement constraints and the twist offset."""
    leaves, cons, offset, _ = _flat(x)
    return AtomAssignmentProblem(list(leaves), list(cons), offset % 32)


def expressions(max_depth: int, alphabet=GENERATORS):
    """Every well-formed tree of depth at most ``max_depth`` over the given atoms.

    Combinators are ``#`` and ``#s1`` (both operand orders), ``bar`` and
    ``twist``; candidates violating a precondition are skipped.  Trees come
    out grouped by depth, atoms first.
    """
    by_depth = [[], [Atom(a) for a in alphabet]]
    yield from by_depth[1]
    for d in range(2, max_depth + 1):
        below = [x for level in by_depth[1:d] for x in level]
        fresh = []

        def emit(build, *args):
            try:
                fresh.append(build(*args))
            except PinetaError:
                pass

        top = by_depth[d - 1]
        lower = below[:len(below) - len(top)]
        for x in top:
            emit(bar, x)
            emit(twist, x)
        # ordered pairs with at least one operand of depth exactly d - 1
        pairs = [(x, y) for x in top for y in below] + [(x, y) for x in lower for y in top]
        for x, y in pairs:
            emit(conn_sum, x, y)
            emit(circle_sum, x, y)
        by_depth.append(fresh)
        yield from fresh


def brute_histogram(x: Expr, max_enum: int = DEFAULT_MAX_ENUM):
    """(counts, valid): histogram of eta numerators over all compatible assignments."""
    prob = flatten(x)
    if prob.size > max_enum:
        raise EnumerationLimitError(f"{prob.size} assignments exceed the bound {max_enum}")
    counts, valid = _kernels.enumerate_counts(*batch_arrays([prob]))
    return counts[0], int(valid[0])


def brute_eta_set(x: Expr, max_enum: int = DEFAULT_MAX_ENUM) -> EtaSet:
    counts, _ = brute_histogram(x, max_enum)
    return EtaSet(tuple(int(i) for i in np.flatnonzero(counts)))


def brute_eta_sets(xs, max_enum: int = DEFAULT_MAX_ENUM) -> list:
    """Eta sets of many expressions with a single kernel call."""
    problems = [flatten(x) for x in xs]
    for x, prob in zip(xs, problems):
        if prob.size > max_enum:
            raise EnumerationLimitError(f"{prob.size} assignments for {x} exceed the bound {max_enum}")
    if not problems:
        return []
    counts, _ = _kernels.enumerate_counts(*batch_arrays(problems))
    # one bitmask per problem; distinct masks are few, so decode each once
    masks = (counts > 0).astype(np.int64) @ (np.int64(1) << np.arange(32, dtype=np.int64))
    decoded = {m: EtaSet(tuple(i for i in range(32) if m >> i & 1)) for m in set(masks.tolist())}
    return [decoded[m] for m in masks.tolist()]


@dataclass
class LabelledBatch:
    """Oracle profiles of many expressions, concatenated.

    Expression q owns ``values[starts[q]:starts[q + 1]]``; entry c is the eta
    numerator of the structure whose fused label, read as a binary number, is
    c.  ``hits`` counts the compatible assignments producing each label.
    """

    values: np.ndarray
    hits: np.ndarray
    starts: np.ndarray

    def __len__(self):
        return len(self.starts) - 1

    def __getitem__(self, q):
        a, b = self.starts[q], self.starts[q + 1]
        return self.values[a:b], self.hits[a:b]

    def bijective(self) -> bool:
        """Every label is produced by exactly one compatible assignment."""
        return bool(np.all(self.hits == 1))

    def eta_masks(self) -> np.ndarray:
        """Eta set of every expression as a 32-bit mask (bit v set when v occurs)."""
        return eta_masks(self.values, self.starts)


def eta_masks(values: np.ndarray, starts: np.ndarray) -> np.ndarray:
    """Per-segment bitmask of the numerators in ``values``, segments given by ``starts``."""
    bits = np.left_shift(np.int64(1), values.astype(np.int64) % 32)
    return np.bitwise_or.reduceat(bits, starts[:-1])


def brute_labelled(xs, max_enum: int = DEFAULT_MAX_ENUM) -> LabelledBatch:
    """Eta numerator of every Pin+ structure, indexed by fused label, for many expressions.

    A structure's label is the concatenation of its leaf labels in leaf order
    with each circle sum's shared loop bit recorded once (on the left
    operand).  This is the label order of :func:`pineta.invariants.eta_profile`.
    """
    problems = [flatten(x) for x in xs]
    if not problems:
        raise ValueError("no expressions")
    for x, prob in zip(xs, problems):
        if prob.size > max_enum:
            raise EnumerationLimitError(f"{prob.size} assignments for {x} exceed the bound {max_enum}")
    radix, vals, restr, ids, signs, leaf_start, cons_a, cons_b, cons_start, offsets = batch_arrays(problems)
    drop = np.zeros(len(ids), dtype=np.int64)
    drop[leaf_start[np.repeat(np.arange(len(problems)), np.diff(cons_start))] + cons_b] = 1
    widths = np.add.reduceat(_HBITS[ids], leaf_start[:-1]) - np.diff(cons_start)
    starts = np.zeros(len(problems) + 1, dtype=np.int64)
    starts[1:] = np.cumsum(np.left_shift(1, widths))
    out, hits = _kernels.label_values(radix, vals, restr, _HBITS, _LOOP, ids, signs, drop, leaf_start,
                                      cons_a, cons_b, cons_start, offsets, starts)
    return LabelledBatch(out, hits, starts)


def brute_eta_values(x: Expr, max_enum: int = DEFAULT_MAX_ENUM) -> list:
    counts, _ = brute_histogram(x, max_enum)
    return [i for i in range(32) for _ in range(int(counts[i]))]


@dataclass
class LawReport:
    checks: list = field(default_factory=list)  # (name, ok, detail)

    def add(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [c for c in self.checks if not c[1]]

    def __str__(self):
        return "\n".join(f"{'PASS' if ok else 'FAIL'} {name} {detail}".rstrip()
                         for name, ok, detail in self.checks)


def check_laws(max_enum: int = DEFAULT_MAX_ENUM) -> LawReport:
    report = LawReport()
    elems = [Mod32(i) for i in range(32)]

    report.add("mod32 addition table",
               all((a + b).num == (a.num + b.num) % 32 for a in elems for b in elems))
    report.add("mod32 negation table",
               all((-a).num == (32 - a.num) % 32 and (a + -a).num == 0 for a in elems))
    report.add("mod32 associativity",
               all((a + b) + c == a + (b + c) for a in elems for b in elems for c in elems))
    report.add("mod32 commutativity", all(a + b == b + a for a in elems for b in elems))

    sixteen = csum(16, "RP4")
    s16 = brute_eta_set(sixteen, max_enum)
    report.add("16-fold circle sum of RP4 is null", s16.nums == (0,), str(s16.nums))
    gen = ATOMS["RP4"].profile[0].value
    report.add("16 * [RP4] = 0", Mod32(sum([gen.num] * 16) % 32) == Mod32(0))

    pin_atoms = [n for n, r in ATOMS.items() if r.w2zero]
    for name in pin_atoms:
        base = brute_eta_set(Atom(name), max_enum)
        neg = brute_eta_set(bar(name), max_enum)
        report.add(f"bar law on {name}", neg == base.negated(), f"{neg.nums} vs {base.nums}")
    for a, b in itertools.product(pin_atoms, repeat=2):
        got = brute_eta_set(conn_sum(a, b), max_enum)
        want = EtaSet.of(u.num + v.num for u in brute_eta_set(Atom(a), max_enum)
                         for v in brute_eta_set(Atom(b), max_enum))
        report.add(f"conn-sum law on ({a}, {b})", got == want, f"{got.nums} vs {want.nums}")
    non_orientable = [n for n in pin_atoms if not ATOMS[n].orientable]
    for a, b in itertools.product(non_orientable, repeat=2):
        x = circle_sum(a, b)
        _, valid = brute_histogram(x, max_enum)
        want = 2 ** (ATOMS[a].h1dim + ATOMS[b].h1dim - 1)
        report.add(f"circle-sum structure count on ({a}, {b})", valid == want, f"{valid} vs {want}")
    return report
