import itertools

import pytest
from hypothesis import given

from pineta.errors import NoPinStructureError, PreconditionError
from pineta.eta import Mod32
from pineta.expr import Atom, Bar, CircleSum, ConnSum, Z2, bar, card, circle_sum, conn_sum, csum, twist
from pineta.invariants import (
    EtaSet,
    bordism_class,
    eta_profile,
    eta_set,
    eta_values,
    pin_plus,
    spin_eta,
    split_label,
    structure_count,
)

from strategies import non_orientable_pin, pin_expressions


def test_generator_values():
    assert eta_set(Atom("RP4")).nums == (2, 30)
    assert eta_set(Atom("Q")).nums == (14, 18)
    assert eta_set(Atom("Q")).fractions() == ["7/8", "-7/8"]


def test_profile_examples():
    assert eta_values(circle_sum("RP4", "RP4")) == [4, 28]
    assert eta_values(Atom("S2gR")) == [0, 0]
    assert eta_values(conn_sum("RP4", "RP4")) == [0, 0, 4, 28]


def test_set_examples():
    assert eta_set(conn_sum("A", "S2xS2")).nums == (16,)
    assert eta_set(Atom("KbxT2")).nums == (0,)
    assert len(eta_profile(Atom("KbxT2"))) == 16


def test_bordism_examples():
    assert bordism_class(Atom("RP4"), [0]) == 1
    assert {bordism_class(Atom("S2gR"), [b]) for b in (0, 1)} == {0}
    assert bordism_class(twist("RP4"), [0]) == 9
    with pytest.raises(PreconditionError):
        bordism_class(Atom("RP4"), [0, 1])


def test_spin_formula():
    assert spin_eta(Atom("S2xS2")) == Mod32(0)
    assert spin_eta(conn_sum("S2xS2", "S2xS2")) == Mod32(0)
    with pytest.raises(PreconditionError):
        spin_eta(Atom("RP4"))


def test_structure_counts():
    assert structure_count(Atom("KbxS2")) == 4
    assert structure_count(Atom("KbxT2")) == 16
    assert structure_count(Atom("CP2")) == 0
    assert not pin_plus(conn_sum("RP4", "CP2"))


def test_no_pin_structure():
    with pytest.raises(NoPinStructureError):
        eta_set(conn_sum("RP4", "CP2"))


def test_restr_is_label_bit_on_rank_one_atoms():
    for name in ("RP4", "Q", "S3tS1", "A"):
        for e in eta_profile(Atom(name)):
            assert e.restr == e.label[0]


def test_eta_set_helpers():
    s = EtaSet.of([2, 30, 34])
    assert s.nums == (2, 30)
    assert s.negated() == s
    assert s.shifted().nums == (14, 18)
    assert Mod32(2) in s and 2 in s
    assert s.isdisjoint(s.shifted())
    assert str(s) == "{1/8, -1/8}"


@given(pin_expressions())
def test_profile_enumerates_all_labels(x):
    prof = eta_profile(x)
    h1 = card(x).h1dim
    assert sorted(e.label for e in prof) == list(itertools.product((0, 1), repeat=h1))


@given(pin_expressions())
def test_values_are_even(x):
    assert all(v % 2 == 0 for v in eta_values(x))


@given(pin_expressions())
def test_bar_negates(x):
    assert eta_values(bar(x)) == sorted((-v) % 32 for v in eta_values(x))


@given(non_orientable_pin())
def test_twist_shifts(x):
    assert eta_values(twist(x)) == sorted((v + 16) % 32 for v in eta_values(x))
    s = eta_set(x)
    if s.isdisjoint(s.shifted()):
        assert eta_set(twist(x)).isdisjoint(s)


@given(pin_expressions(max_leaves=3), pin_expressions(max_leaves=3))
def test_conn_sum_sumset(x, y):
    want = EtaSet.of(a.num + b.num for a in eta_set(x) for b in eta_set(y))
    assert eta_set(conn_sum(x, y)) == want


@given(pin_expressions())
def test_z2_sets_are_symmetric(x):
    if card(x).pi1 == Z2:
        nums = set(eta_set(x).nums)
        assert nums == {(-v) % 32 for v in nums}


def _check_additivity(x):
    if isinstance(x, Atom):
        return
    for e in eta_profile(x):
        parts = split_label(x, e.label)
        if isinstance(x, Bar):
            want = -bordism_class(x.child, parts[0])
        elif isinstance(x, ConnSum):
            want = sum(bordism_class(p, lab) for p, lab in zip(x.parts, parts))
        elif isinstance(x, CircleSum) and len(parts) == 1:
            want = bordism_class(x.left, parts[0]) + 8
        else:
            want = bordism_class(x.left, parts[0]) + bordism_class(x.right, parts[1])
        assert bordism_class(x, e.label) == want % 16


@given(pin_expressions())
def test_bordism_additivity(x):
    _check_additivity(x)


def test_sixteen_fold_circle_sum_is_null():
    assert eta_set(csum(16, "RP4")).nums == (0,)
    assert eta_set(csum(8, "RP4")).nums == (16,)
