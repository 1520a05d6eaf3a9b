from unitroot.report import seed_report, table_pattern


def test_table_pattern_values():
    assert table_pattern(11) == [[3150, 0], [0, 1260]]
    assert table_pattern(2) == [[0, 1], [0, 0]]
    assert table_pattern(5) == [[0, 0], [0, 0]]


def test_seed_report_reproduces_everything():
    doc = seed_report()
    assert all(r["match"] for r in doc["hasse_witt_table"])
    assert doc["ordinarity"]["match"]
    assert len(doc["integrality"]) == 22 and all(r["integral"] for r in doc["integrality"])
    assert doc["congruences"] and all(r["part1"] and r["part2"] for r in doc["congruences"])
    assert all(r["match"] for r in doc["unit_root"])
    ode = doc["ode"]
    assert ode["cyclic-3"]["annihilated"] and ode["cyclic-4"]["annihilated"] and ode["cyclic-5"]["annihilated"]
    assert ode["op-1124"]["annihilated"] and not ode["cyclic-3-unsigned"]["annihilated"]
    assert all(h["match"] for h in doc["honda"])
    assert all(a["ok"] for a in doc["axioms"].values())
