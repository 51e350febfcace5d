import pytest
from hypothesis import given

from pineta.classify import (
    HOMEO_RULES,
    SMOOTH_RULES,
    cp2_stabilize,
    cp2_stabilize_trace,
    homeo,
    limits_report,
    replay,
    smooth_compare,
    topological_form,
)
from pineta.errors import PatternError, PreconditionError
from pineta.expr import Atom, bar, card, circle_sum, conn_sum, csum, gluck_twist, normalize, repeat, twist

from strategies import expressions, pin_expressions


def test_homeo_examples():
    v = homeo(twist("RP4"), Atom("RP4"))
    assert v.yes and v.rule_chain == ("R1",)
    std = conn_sum("S3tS1", "S2xS2")
    v = homeo(gluck_twist(std), std)
    assert v.yes and v.rule_chain == ("R2",)
    v = homeo(Atom("RP4"), Atom("S3tS1"))
    assert v.outcome == "Unknown" and "pi1" in v.note


def test_homeo_identity_and_congruence():
    assert homeo(Atom("RP4"), Atom("RP4")).rule_chain == ("EQ",)
    v = homeo(conn_sum("Q", "S2xS2"), conn_sum("RP4", "S2xS2"))
    assert v.yes and "R4" in v.rule_chain and "R5" in v.rule_chain


def test_stable_classification():
    x = circle_sum("S3tS1", "A")
    y = conn_sum("A", repeat(2, "S2xS2"))
    a = conn_sum(x, repeat(3, "S2xS2"))
    b = conn_sum("S3tS1", repeat(4, "S2xS2"))
    assert homeo(a, b).yes
    assert homeo(y, conn_sum("S3tS1", repeat(3, "S2xS2"))).yes


def test_smooth_examples():
    v = smooth_compare(twist("S2gR"), Atom("S2gR"))
    assert v.outcome == "Exotic"
    assert [w.nums for w in v.witness] == [(16,), (0,)]
    v = smooth_compare(circle_sum("KbxS2", "A"), conn_sum("KbxS2", "S2xS2"))
    assert v.outcome == "Exotic" and [w.nums for w in v.witness] == [(16,), (0,)]
    v = smooth_compare(Atom("RP4"), Atom("RP4"))
    assert v.outcome == "Diffeomorphic" and v.rule_chain == ("D0",)


def test_smooth_unknown_cases():
    assert smooth_compare(Atom("RP4"), Atom("S3tS1")).outcome == "Unknown"
    # homeomorphic, but {0, 8, 16, 24} meets {0, 8, 24}
    x = csum(2, "RP4")
    v = smooth_compare(conn_sum(twist(x), x), conn_sum(x, x))
    assert v.outcome == "Unknown" and "overlap" in v.note
    assert smooth_compare(conn_sum(twist("RP4"), "RP4"), conn_sum("RP4", "RP4")).outcome == "Exotic"


def test_cp2_examples():
    assert cp2_stabilize(conn_sum(twist("S2gR"), "CP2")) == normalize(conn_sum("S2gR", "CP2"))
    assert cp2_stabilize(conn_sum("Q", "CP2")) == normalize(conn_sum("RP4", "CP2"))
    with pytest.raises(PatternError):
        cp2_stabilize(Atom("RP4"))
    _, rules = cp2_stabilize_trace(conn_sum(circle_sum("S3tS1", "A"), "CP2"))
    assert rules == ["D2"]


def test_smooth_after_cp2_is_diffeomorphic():
    v = smooth_compare(conn_sum(twist("RP4"), "CP2"), conn_sum("RP4", "CP2"))
    assert v.outcome == "Diffeomorphic" and "D1" in v.rule_chain


@pytest.mark.parametrize("name", ["S3tS1", "KbxS2", "Xi3", "KbxT2"])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_exotic_pairs_collapse_after_cp2(name, k):
    std = conn_sum(name, repeat(k, "S2xS2"))
    ex = gluck_twist(std)
    assert smooth_compare(ex, std).outcome == "Exotic"
    assert cp2_stabilize(conn_sum(ex, "CP2")) == cp2_stabilize(conn_sum(std, "CP2"))


def test_limits_examples():
    r = limits_report([Atom("RP4"), Atom("Q")])
    assert len(r.classes) == 2 and r.shift == 16
    assert len(limits_report([Atom("RP4"), twist(twist("RP4"))]).classes) == 1
    r = limits_report([Atom("S2gR"), twist("S2gR")])
    assert [c[0].nums for c in r.classes] == [(0,), (16,)]
    with pytest.raises(PreconditionError):
        limits_report([Atom("S3tS1")])
    with pytest.raises(PreconditionError):
        limits_report([])


def test_rule_tables_are_documented():
    assert {"R1", "R2", "R3", "R4", "R5", "R6"} <= set(HOMEO_RULES)
    assert {"D1", "D2", "D3"} <= set(SMOOTH_RULES)


def test_bar_is_stripped_outside_circle_sums():
    assert topological_form(bar(conn_sum("RP4", "S2xS2"))) == normalize(conn_sum("RP4", "S2xS2"))
    assert homeo(circle_sum("RP4", bar("RP4")), Atom("S2gR")).yes


def _variants(x):
    out = [x]
    c = card(x)
    if c.w2zero:
        out.append(bar(x))
    if not c.orientable and c.w2zero:
        out.append(twist(x))
        out.append(circle_sum(x, "A"))
        out.append(conn_sum(x, "S2xS2"))
    return out


@given(expressions(max_leaves=4))
def test_verdicts_replay_and_are_symmetric(x):
    for y in _variants(x):
        v = homeo(x, y)
        if v.yes:
            assert replay(v, x, y)
            assert v.rule_chain
        w = homeo(y, x)
        assert w.yes == v.yes
        assert (smooth_compare(x, y).outcome == "Exotic") == (smooth_compare(y, x).outcome == "Exotic")


@given(pin_expressions(max_leaves=4))
def test_exotic_requires_homeo_and_disjoint_sets(x):
    for y in _variants(x):
        v = smooth_compare(x, y)
        if v.outcome == "Exotic":
            assert v.homeo.yes
            assert v.witness[0].isdisjoint(v.witness[1])


def test_replay_rejects_tampering():
    x, y = twist("RP4"), Atom("RP4")
    v = homeo(x, y)
    assert not replay(v, Atom("Q"), y)
    assert not replay(homeo(Atom("RP4"), Atom("S3tS1")), Atom("RP4"), Atom("S3tS1"))


def test_csum_families_are_homeomorphic_to_twists():
    for r in (1, 2, 3):
        assert homeo(twist(csum(r, "RP4")), csum(r, "RP4")).yes
