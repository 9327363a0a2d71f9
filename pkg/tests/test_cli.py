"""Command-line interface: every command, exit codes, output files."""

import json
import subprocess
import sys

import pytest

import finring as fr
from finring.cli import main
from finring.lattice import covering_edges, export_lattice, lattice_nodes, node_label


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_ring_info(capsys):
    code, out, _ = run_cli(capsys, "ring", "info", "Z/6")
    assert code == 0
    doc = json.loads(out)
    assert doc["order"] == 6 and doc["characteristic"] == 6
    assert doc["unit_count"] == 2 and doc["idempotent_count"] == 4
    assert doc["predicates"]["is_vnr"] is True
    assert doc["maximal_ideals"] == [[0, 2, 4], [0, 3]]
    assert doc["local_factor_orders"] == [2, 3]
    assert doc["validation_mode"] == "exhaustive"


def test_ring_info_bad_expression(capsys):
    code, out, err = run_cli(capsys, "ring", "info", "Z/x")
    assert code == 2 and out == ""
    assert "expression error" in json.loads(err)["error"]


def test_ring_info_cap(capsys):
    code, _, err = run_cli(capsys, "ring", "info", "Diag(Z/30)")
    assert code == 2
    assert "order cap" in json.loads(err)["error"]


def test_max_order_beats_environment(capsys, monkeypatch):
    monkeypatch.setenv("FINRING_MAX_ORDER", "4")
    code, _, err = run_cli(capsys, "ring", "info", "Z/6")
    assert code == 2 and "order cap 4" in json.loads(err)["error"]
    code, out, _ = run_cli(capsys, "ring", "info", "Z/6", "--max-order", "16")
    assert code == 0 and json.loads(out)["order"] == 6


def test_ext_check_minimal(capsys):
    code, out, _ = run_cli(capsys, "ext", "check", "Z/4", "--kind", "diag", "--a", "3", "--b", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["subring_order"] == 8 and doc["big_order"] == 16
    assert doc["subring_is_whole"] is False and doc["is_minimal"] is True


def test_ext_check_whole(capsys):
    code, out, _ = run_cli(capsys, "ext", "check", "Z/4", "--kind", "diag", "--a", "1", "--b", "0")
    assert code == 0
    doc = json.loads(out)
    assert doc["subring_is_whole"] is True and doc["is_minimal"] is None


def test_ext_check_out_of_range(capsys):
    code, _, err = run_cli(capsys, "ext", "check", "Z/4", "--kind", "diag", "--a", "7")
    assert code == 2 and "out of range" in json.loads(err)["error"]


def test_ext_conductor(capsys):
    code, out, _ = run_cli(capsys, "ext", "conductor", "Z/4", "--kind", "diag", "--a", "3", "--b", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["conductor_members"] == [0, 1, 4, 5]
    assert doc["is_maximal"] is True and doc["is_prime"] is True


def test_ext_conductor_whole_refused(capsys):
    code, _, err = run_cli(capsys, "ext", "conductor", "Z/4", "--kind", "diag", "--a", "1", "--b", "0")
    assert code == 2 and "whole ring" in json.loads(err)["error"]


def test_ext_crucial(capsys):
    code, out, _ = run_cli(capsys, "ext", "crucial", "Z/6", "--kind", "diag", "--a", "2", "--b", "0")
    assert code == 0
    doc = json.loads(out)
    assert doc["crucial_equals_conductor"] is True
    assert [row["is_isomorphism"] for row in doc["localization_table"]] == [False, True, True]


def test_ext_crucial_not_minimal(capsys):
    code, _, err = run_cli(capsys, "ext", "crucial", "Z/12", "--kind", "diag", "--a", "4", "--b", "0")
    assert code == 2 and "not minimal" in json.loads(err)["error"]


def test_classify_regular_ring(capsys):
    code, out, _ = run_cli(capsys, "classify", "Z/6")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["candidates"]) == 6
    assert all(row["passed"] for row in doc["candidates"])
    assert [row["classified_kind"] for row in doc["candidates"]] == [
        "inert", "decomposed", "ramified", "inert", "decomposed", "ramified",
    ]


def test_classify_rejects_non_regular(capsys):
    code, _, err = run_cli(capsys, "classify", "Z/4")
    assert code == 2 and "not von Neumann regular" in json.loads(err)["error"]


def test_verify_with_catalog_and_sidecars(capsys, tmp_path):
    catalog = tmp_path / "catalog.txt"
    catalog.write_text("Z/6\n# comment line\n\nGF(4)\n")
    out_path = tmp_path / "report.json"
    code, _, err = run_cli(
        capsys, "verify", "--catalog", str(catalog), "--out", str(out_path)
    )
    assert code == 0
    report = json.loads(out_path.read_text())
    assert [e["expr"] for e in report["entries"][::7]] == ["Z/6", "GF(4)"]
    assert len(report["entries"]) == 14
    assert (tmp_path / "report.csv").exists()
    assert (tmp_path / "report.png").exists()
    assert "14 entries" in err and "0 fail" in err


def test_verify_no_sidecars(capsys, tmp_path):
    catalog = tmp_path / "catalog.txt"
    catalog.write_text("GF(4)\n")
    out_path = tmp_path / "report.json"
    code, _, _ = run_cli(
        capsys, "verify", "--catalog", str(catalog), "--out", str(out_path),
        "--no-csv", "--no-fig",
    )
    assert code == 0
    assert out_path.exists()
    assert not (tmp_path / "report.csv").exists()
    assert not (tmp_path / "report.png").exists()


def test_verify_stdout_mode(capsys, tmp_path):
    catalog = tmp_path / "catalog.txt"
    catalog.write_text("GF(4)\n")
    code, out, err = run_cli(capsys, "verify", "--catalog", str(catalog))
    assert code == 0
    report = json.loads(out)
    assert len(report["entries"]) == 7
    assert "7 entries" in err


def test_verify_empty_catalog(capsys, tmp_path):
    catalog = tmp_path / "empty.txt"
    catalog.write_text("# nothing here\n")
    code, _, err = run_cli(capsys, "verify", "--catalog", str(catalog))
    assert code == 2 and "no expressions" in json.loads(err)["error"]


def test_lattice_idealization(capsys, tmp_path):
    dot = tmp_path / "lat.dot"
    fig = tmp_path / "lat.png"
    code, _, err = run_cli(
        capsys, "lattice", "Z/4", "--kind", "id", "--dot", str(dot), "--fig", str(fig)
    )
    assert code == 0
    text = dot.read_text()
    assert text.count("[label=") == 3
    assert 'n0 [label="order 4 (base image)"]' in text
    assert 'n1 [label="order 8 (adjoin 2)"]' in text
    assert "n0 -> n1;" in text and "n1 -> n2;" in text
    assert fig.exists()
    assert "3 subrings" in err


def test_lattice_subfield_chain(capsys, tmp_path):
    dot = tmp_path / "sub.dot"
    code, _, err = run_cli(
        capsys, "lattice", "GF(16)", "--kind", "subfield", "--base", "GF(2)",
        "--dot", str(dot),
    )
    assert code == 0
    text = dot.read_text()
    assert text.count("[label=") == 3  # F2, F4, F16
    assert "3 subrings" in err


def test_lattice_subfield_errors(capsys, tmp_path):
    dot = tmp_path / "x.dot"
    code, _, err = run_cli(capsys, "lattice", "GF(16)", "--kind", "subfield", "--dot", str(dot))
    assert code == 2 and "requires --base" in json.loads(err)["error"]
    code, _, err = run_cli(
        capsys, "lattice", "GF(8)", "--kind", "subfield", "--base", "GF(4)", "--dot", str(dot)
    )
    assert code == 2 and "does not embed" in json.loads(err)["error"]
    code, _, err = run_cli(
        capsys, "lattice", "Z/6", "--kind", "subfield", "--base", "GF(2)", "--dot", str(dot)
    )
    assert code == 2 and "field" in json.loads(err)["error"]


def test_lattice_two_node_minimal_case():
    ext = fr.diagonal_base_extension(fr.zmod(2))
    text = export_lattice(ext)
    assert text.count("[label=") == 2
    assert 'n0 [label="order 2 (base image)"]' in text
    assert 'n1 [label="order 4 (whole ring)"]' in text
    assert "n0 -> n1;" in text


def test_lattice_helpers():
    ci = fr.canonical_idealization_extension(fr.zmod(4))
    nodes = lattice_nodes(ci)
    assert [n.size for n in nodes] == [4, 8, 16]
    assert covering_edges(nodes) == [(0, 1), (1, 2)]
    labels = [node_label(n, i, len(nodes)) for i, n in enumerate(nodes)]
    assert labels == ["order 4 (base image)", "order 8 (adjoin 2)", "order 16 (whole ring)"]


def test_console_script_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "finring.cli", "ring", "info", "GF(9)"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["order"] == 9
