"""Catalog suite: verdict semantics, report shape, determinism, exit codes."""

import json

import pytest

import finring.suite as fs


def test_default_catalog_contents():
    cat = fs.default_catalog()
    assert len(cat) == 137
    assert len(set(cat)) == 137
    assert cat[:18] == (
        "Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "Z/7", "Z/8", "Z/9", "Z/10",
        "Z/11", "Z/12", "GF(2)", "GF(3)", "GF(4)", "GF(5)", "GF(7)",
        "GF(8)", "GF(9)",
    )
    # product and idealization order boundaries
    assert "Z/4 x Z/9" in cat and "Z/5 x Z/8" not in cat
    assert "Id(Z/8; 0)" in cat and "Id(Z/9; 0)" not in cat
    assert "Id(Z/12; 4)" in cat


def test_run_entry_z6_verdicts():
    entries = fs.run_entry("Z/6", fs.SuiteConfig(catalog=("Z/6",)))
    assert [e["theorem"] for e in entries] == list(fs.THEOREM_IDS)
    assert [e["verdict"] for e in entries] == [
        "PASS", "PASS", "PASS", "PASS", "PASS", "SKIPPED", "PASS",
    ]
    assert entries[5]["witnesses"] == {
        "reason": "oracle needs big rings of order at most 16, got 36"
    }
    assert all(e["millis"] == 0 for e in entries)


def test_run_entry_keeps_catalog_text_verbatim():
    cfg = fs.SuiteConfig(catalog=("GF(4)",))
    entries = fs.run_entry(" GF(4) ", cfg)
    assert all(e["expr"] == "GF(4)" for e in entries)
    # but witnesses refer to the canonical tag
    assert entries[0]["verdict"] == "PASS"


def test_order_cap_skips_whole_entry():
    entries = fs.run_entry("Z/6", fs.SuiteConfig(order_cap=4, catalog=("Z/6",)))
    assert [e["verdict"] for e in entries] == ["SKIPPED"] * 7
    diag = entries[1]
    assert diag["theorem"] == "diagonal-minimality"
    assert diag["witnesses"] == {"reason": "Z/6 exceeds order cap 4"}


def test_non_regular_ring_skips_classification():
    entries = fs.run_entry("Z/4", fs.SuiteConfig(catalog=("Z/4",)))
    vnr = entries[3]
    assert vnr["theorem"] == "vnr-classification"
    assert vnr["verdict"] == "SKIPPED"
    assert vnr["witnesses"] == {"reason": "ring is not von Neumann regular"}


def test_broken_expression_fails_all_entries():
    entries = fs.run_entry("Z/1", fs.SuiteConfig(catalog=("Z/1",)))
    assert [e["verdict"] for e in entries] == ["FAIL"] * 7
    assert entries[0]["counterexample"] == {
        "error": "ValueError: modulus must be at least 2, got 1"
    }


def test_report_shape_and_worker_independence():
    catalog = ("Z/6", "GF(4)", "Z/4")
    one = fs.run_suite(fs.SuiteConfig(catalog=catalog, jobs=1))
    two = fs.run_suite(fs.SuiteConfig(catalog=catalog, jobs=2))
    assert fs.render_report_json(one) == fs.render_report_json(two)
    assert list(one.keys()) == ["engine_version", "config_echo", "entries"]
    assert one["config_echo"] == {
        "order_cap": 512,
        "iso_cap": 64,
        "seed": 0,
        "catalog": list(catalog),
    }
    assert len(one["entries"]) == 21
    for entry in one["entries"]:
        assert list(entry.keys()) == [
            "expr", "theorem", "verdict", "witnesses", "counterexample", "millis",
        ]
    # the document is valid JSON and round-trips
    assert json.loads(fs.render_report_json(one)) == one


def test_exit_code_for():
    def fake(verdicts):
        return {"entries": [{"verdict": v} for v in verdicts]}

    assert fs.exit_code_for(fake(["PASS", "SKIPPED"])) == 0
    assert fs.exit_code_for(fake(["FAIL", "PASS", "FAIL", "FAIL"])) == 3
    assert fs.exit_code_for(fake(["FAIL"] * 250)) == 200


def test_render_report_csv():
    report = fs.run_suite(fs.SuiteConfig(catalog=("GF(4)",)))
    csv_text = fs.render_report_csv(report)
    lines = csv_text.splitlines()
    assert lines[0] == "expr,theorem,verdict,millis"
    assert len(lines) == 8
    assert lines[1] == "GF(4),unit-criterion,PASS,0"


def test_config_validation():
    with pytest.raises(ValueError):
        fs.SuiteConfig(order_cap=1)
    with pytest.raises(ValueError):
        fs.SuiteConfig(iso_cap=0)
    with pytest.raises(ValueError):
        fs.SuiteConfig(catalog=())
    with pytest.raises(ValueError):
        fs.SuiteConfig(jobs=0)
