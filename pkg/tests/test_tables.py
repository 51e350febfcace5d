import pytest

from pineta.tables import TARGETS, reproduce


@pytest.mark.parametrize("target", TARGETS)
def test_target_reproduces(target):
    t = reproduce(target)
    assert t.rows
    assert t.ok, t.to_text()


def test_unknown_target():
    with pytest.raises(KeyError):
        reproduce("thm9")


def test_prop_values_item2_r3():
    rows = [r for r in reproduce("propValues").rows if r.item == "2" and r.case.startswith("csum(3, RP4) # 0")]
    assert rows[0].computed["eta_set"] == [6, 26]


def test_thm_m_item1_k2():
    row = next(r for r in reproduce("thmM").rows if r.item == "1" and "S3tS1 # 2(" in r.case)
    assert row.computed == {"smooth": "Exotic", "exotic_eta": [16], "standard_eta": [0]}


def test_thm_inv_item1_k3():
    row = next(r for r in reproduce("thmInv").rows if r.item == "1" and r.case.startswith("k=3"))
    assert row.computed["cover"] == "S2xS2 # S2xS2"
    assert row.computed["group"] == "Z2"


def test_item5_discrepancy_note():
    rows = [r for r in reproduce("thmInv").rows if r.item == "5"]
    assert rows and all("derived from chi" in r.note for r in rows)


def test_text_and_data():
    t = reproduce("lemValues")
    assert t.to_text().splitlines()[-1] == "PASS lemValues (4/4 rows)"
    data = t.to_data()
    assert data["ok"] is True and len(data["rows"]) == 4
