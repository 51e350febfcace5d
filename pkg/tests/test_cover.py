import pytest
from hypothesis import given

from pineta.cover import COVER_RULES, involution_report, orientation_cover, orientation_cover_trace
from pineta.errors import CoverError
from pineta.expr import (
    Atom,
    Z2_FREE_Z2,
    card,
    circle_sum,
    conn_sum,
    csum,
    gluck_twist,
    normalize,
    repeat,
    twist,
)

from strategies import non_orientable_pin


def _sum(*names):
    return normalize(conn_sum(*names)) if len(names) > 1 else Atom(names[0])


def test_cover_examples():
    assert orientation_cover(circle_sum("Q", "RP4")) == Atom("S2xS2")
    assert orientation_cover(Atom("A")) == _sum("S3xS1", "S2xS2", "S2xS2")
    assert orientation_cover(twist("KbxT2")) == Atom("T2xT2")
    assert orientation_cover(Atom("RP4")) == Atom("S4")
    assert orientation_cover(Atom("S3tS1")) == Atom("S3xS1")


def test_cover_traces():
    _, rules = orientation_cover_trace(twist("KbxT2"))
    assert rules == ["C7", "C5"]
    _, rules = orientation_cover_trace(conn_sum("RP4", "S2xS2"))
    assert rules == ["C1", "C4"]
    cov, rules = orientation_cover_trace(conn_sum("RP4", "RP4"))
    assert rules == ["C8"] and cov == Atom("S3xS1")


def test_c8_summand_count_from_chi():
    for x, y in [("RP4", "RP4"), ("S2gR", "RP4"), ("S2gR", "S2gR")]:
        base = conn_sum(x, y)
        cov = orientation_cover(base)
        n = card(base).chi
        assert cov == normalize(conn_sum("S3xS1", repeat(n, "S2xS2")) if n else Atom("S3xS1"))
        assert card(cov).pi1 == card(Atom("S3xS1")).pi1
        assert card(base).pi1 == Z2_FREE_Z2


def test_cover_errors():
    with pytest.raises(CoverError):
        orientation_cover(Atom("S2xS2"))
    with pytest.raises(CoverError):
        orientation_cover(conn_sum("RP4", "RP4", "RP4"))
    with pytest.raises(CoverError):
        orientation_cover(circle_sum("KbxS2", "KbxS2"))


def test_rule_table_is_static():
    assert set(COVER_RULES) == {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "CB"}
    with pytest.raises(TypeError):
        COVER_RULES["C9"] = None
    assert all(r.source for r in COVER_RULES.values())


def test_involution_examples():
    r = involution_report(twist("RP4"), Atom("RP4"))
    assert r.ok and r.cover == Atom("S4") and str(r.group) == "Z2"
    r = involution_report(circle_sum("KbxS2", "A"), conn_sum("KbxS2", "S2xS2"))
    assert r.ok and r.cover == _sum("T2xS2", "S2xS2", "S2xS2") and str(r.group) == "ZsemiZ"
    r = involution_report(circle_sum("S3tS1", "A"), conn_sum("S3tS1", "S2xS2"))
    assert r.ok and r.cover == _sum("S3xS1", "S2xS2", "S2xS2") and str(r.group) == "Z"


def test_involution_item5_note():
    r = involution_report(conn_sum(twist("S2gR"), "S2gR"), conn_sum("S2gR", "S2gR"))
    assert r.ok and "derived from chi" in r.note


def test_no_verdict_without_exotic_pair():
    r = involution_report(Atom("RP4"), Atom("RP4"))
    assert not r.ok and r.cover is None


@pytest.mark.parametrize("k", [1, 2, 3])
def test_exotic_pairs_share_a_cover(k):
    for name in ("S3tS1", "KbxS2", "Xi3", "KbxT2"):
        std = conn_sum(name, repeat(k, "S2xS2"))
        assert orientation_cover(gluck_twist(std)) == orientation_cover(std)
    x = csum(k, "RP4")
    assert orientation_cover(twist(x)) == orientation_cover(x)


@given(non_orientable_pin())
def test_every_cover_doubles_chi(x):
    try:
        cov = orientation_cover(x)
    except CoverError:
        return
    assert card(cov).orientable
    assert card(cov).chi == 2 * card(x).chi
    assert card(cov).sigma == 0
