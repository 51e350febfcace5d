"""Eta-invariant profiles over all Pin+ structures, bordism classes and the spin formula."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NoPinStructureError, PreconditionError
from .eta import Mod32, PinProfile, ProfileEntry
from .expr import Atom, Bar, CircleSum, ConnSum, Expr, TwistToken, card


@dataclass(frozen=True)
class EtaSet:
    """Sorted set of eta numerators (each meaning num/16 mod 2)."""

    nums: tuple

    @classmethod
    def of(cls, values) -> EtaSet:
        return cls(tuple(sorted({v.num if isinstance(v, Mod32) else v % 32 for v in values})))

    def __iter__(self):
        return (Mod32(n) for n in self.nums)

    def __len__(self):
        return len(self.nums)

    def __contains__(self, v):
        return (v.num if isinstance(v, Mod32) else v) in self.nums

    def negated(self) -> EtaSet:
        return EtaSet.of(-v for v in self)

    def shifted(self) -> EtaSet:
        return EtaSet.of(v.shifted() for v in self)

    def isdisjoint(self, other: EtaSet) -> bool:
        return set(self.nums).isdisjoint(other.nums)

    def fractions(self) -> list:
        return [str(v) for v in self]

    def __str__(self):
        return "{" + ", ".join(self.fractions()) + "}"


def pin_plus(x: Expr) -> bool:
    return card(x).w2zero


def h1_dim(x: Expr) -> int:
    return card(x).h1dim


def structure_count(x: Expr) -> int:
    """Number of Pin+ structures (a torsor over H^1(-; Z/2)); zero when w2 != 0."""
    c = card(x)
    return 2 ** c.h1dim if c.w2zero else 0


@lru_cache(maxsize=None)
def loop_index(x: Expr):
    """Position of the designated orientation-reversing loop bit in the labels of ``x``."""
    if isinstance(x, Atom):
        return x.record.loop_index
    if isinstance(x, Bar):
        return loop_index(x.child)
    if isinstance(x, CircleSum):
        return loop_index(x.left)
    if isinstance(x, ConnSum):
        offset = 0
        for p in x.parts:
            if not card(p).orientable:
                return offset + loop_index(p)
            offset += card(p).h1dim
        return None
    raise PreconditionError(f"no designated loop on {x!r}")


@dataclass(frozen=True)
class _Table:
    """Profile rows as arrays: restr (n,) with -1 for none, values (n,) numerators.

    Row order matches :func:`_labels`, which is kept separate because the
    label matrix is only needed for full profiles.
    """

    restr: np.ndarray
    values: np.ndarray


@lru_cache(maxsize=None)
def _table(x: Expr) -> _Table:
    if isinstance(x, Atom):
        prof = x.record.profile
        return _Table(np.array([-1 if e.restr is None else e.restr for e in prof], dtype=np.int8),
                      np.array([e.value.num for e in prof], dtype=np.int64))
    if isinstance(x, Bar):
        t = _table(x.child)
        return _Table(t.restr, (-t.values) % 32)
    if isinstance(x, ConnSum):
        # the designated loop comes from the first non-orientable summand
        out = _table(x.parts[0])
        for p in x.parts[1:]:
            t = _table(p)
            if out.restr[0] >= 0:
                restr = out.restr.repeat(len(t.values))
            else:
                restr = t.restr.reshape(1, -1).repeat(len(out.values), axis=0).ravel()
            out = _Table(restr, (out.values[:, None] + t.values[None, :]).ravel() % 32)
        return out
    if isinstance(x, CircleSum):
        left = _table(x.left)
        if isinstance(x.right, TwistToken):
            return _Table(left.restr, (left.values + 16) % 32)
        right = _table(x.right)
        # compatible structures agree on the shared loop
        i, j = np.nonzero(left.restr[:, None] == right.restr[None, :])
        return _Table(left.restr[i], (left.values[i] + right.values[j]) % 32)
    raise PreconditionError(f"no Pin+ profile for {x!r}")


@lru_cache(maxsize=8192)
def _labels(x: Expr) -> np.ndarray:
    """Label bit matrix (n, h1), row-aligned with :func:`_table`."""
    if isinstance(x, Atom):
        prof = x.record.profile
        return np.array([e.label for e in prof], dtype=np.uint8).reshape(len(prof), x.record.h1dim)
    if isinstance(x, Bar):
        return _labels(x.child)
    if isinstance(x, ConnSum):
        out = _labels(x.parts[0])
        for p in x.parts[1:]:
            lab = _labels(p)
            na, nb = len(out), len(lab)
            out = np.concatenate([np.repeat(out, nb, axis=0), np.tile(lab, (na, 1))], axis=1)
        return out
    if isinstance(x, CircleSum):
        left = _labels(x.left)
        if isinstance(x.right, TwistToken):
            return left
        i, j = np.nonzero(_table(x.left).restr[:, None] == _table(x.right).restr[None, :])
        k = loop_index(x.right)
        right = _labels(x.right)[j]
        return np.concatenate([left[i], right[:, :k], right[:, k + 1:]], axis=1)
    raise PreconditionError(f"no Pin+ profile for {x!r}")


def _checked_table(x: Expr) -> _Table:
    c = card(x)
    if not c.w2zero:
        raise NoPinStructureError(f"no Pin+ structure on {x}")
    t = _table(x)
    assert len(t.values) == 2 ** c.h1dim, (str(x), len(t.values), c.h1dim)
    return t


def profile_arrays(x: Expr):
    """(labels, restr, values) as arrays: labels (n, h1) bits, restr (n,) with -1 for none,
    values (n,) eta numerators.  Same rows as :func:`eta_profile`."""
    t = _checked_table(x)
    return _labels(x), t.restr, t.values


@lru_cache(maxsize=4096)
def _profile(x: Expr) -> PinProfile:
    t = _checked_table(x)
    labels = _labels(x)
    assert labels.shape == (len(t.values), card(x).h1dim), (str(x), labels.shape)
    return tuple(
        ProfileEntry(tuple(int(b) for b in lab), None if r < 0 else int(r), Mod32(int(v)))
        for lab, r, v in zip(labels, t.restr, t.values)
    )


def eta_profile(x: Expr) -> PinProfile:
    prof = _profile(x)
    assert len({e.label for e in prof}) == len(prof), str(x)
    return prof


def eta_set(x: Expr) -> EtaSet:
    return EtaSet(tuple(sorted(set(_checked_table(x).values.tolist()))))


def eta_array(x: Expr) -> np.ndarray:
    """Eta numerators of all Pin+ structures in lexicographic label order (read-only)."""
    return _checked_table(x).values


def eta_values(x: Expr) -> list:
    """Multiset of eta numerators, sorted."""
    return sorted(int(v) for v in _checked_table(x).values)


def bordism_class(x: Expr, label) -> int:
    """Class in the Pin+ bordism group Z/16 of the structure with the given label."""
    label = tuple(int(b) for b in label)
    for e in eta_profile(x):
        if e.label == label:
            return e.value.bordism_class()
    raise PreconditionError(f"invalid Pin+ structure label {label} for {x}")


def spin_eta(x: Expr) -> Mod32:
    """sigma/16 mod 2 for a spin manifold; cross-checked against the profile."""
    c = card(x)
    if not c.orientable:
        raise PreconditionError(f"spin formula needs an orientable manifold: {x}")
    if not c.w2zero:
        raise NoPinStructureError(f"spin formula needs w2 = 0: {x}")
    value = Mod32(c.sigma % 32)
    assert {e.value for e in eta_profile(x)} == {value}, str(x)
    return value


def split_label(x: Expr, label) -> tuple:
    """Labels of the immediate operands that make up the structure ``label`` on ``x``."""
    label = tuple(label)
    if isinstance(x, (Atom,)):
        return ()
    if isinstance(x, Bar):
        return (label,)
    if isinstance(x, ConnSum):
        out, offset = [], 0
        for p in x.parts:
            n = card(p).h1dim
            out.append(label[offset:offset + n])
            offset += n
        return tuple(out)
    if isinstance(x, CircleSum):
        nl = card(x.left).h1dim
        left = label[:nl]
        if isinstance(x.right, TwistToken):
            return (left,)
        k = loop_index(x.right)
        shared = left[loop_index(x.left)]
        rest = label[nl:]
        return (left, rest[:k] + (shared,) + rest[k:])
    raise PreconditionError(f"cannot split labels of {x!r}")
