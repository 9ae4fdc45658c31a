import json
from pathlib import Path

import jsonschema
import pytest

from flagspread.cli import main
from flagspread.families import build_psl
from flagspread.permgrp import format_generators

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    report = json.loads(out) if out.strip() else None
    if report is not None:
        jsonschema.validate(report, SCHEMA)
    return code, report, out


def test_construct_suzuki(capsys):
    code, rep, _ = run(capsys, "construct", "--family", "suzuki", "--q", "8")
    assert code == 0
    (r,) = rep["results"]
    assert (r["components"], r["omega_size"], r["valency"]) == (1, 520, 8)
    assert (r["u"], r["k"], r["lambda"]) == (65, 9, 9)
    assert r["spread"] == {"v": 8, "r": 8, "b": 64, "k": 1}


def test_construct_ree_case_iv(capsys):
    code, rep, _ = run(capsys, "construct", "--family", "ree", "--q", "3", "--case", "iv")
    assert code == 0 and rep["results"][0]["components"] == 3


def test_construct_ree_all_cases(capsys):
    code, rep, _ = run(capsys, "construct", "--family", "ree", "--q", "3")
    assert code == 0 and rep["block_sizes"] == [3, 3, 9, 9]
    assert [r["components"] for r in rep["results"]] == [63, 3, 1, 3]


def test_construct_psl_writes_graph_files(capsys, tmp_path):
    prefix = tmp_path / "psl"
    code, rep, _ = run(capsys, "construct", "--family", "psl", "--d", "3", "--q", "2", "--out", str(prefix))
    assert code == 0
    (r,) = rep["results"]
    assert r["components"] == 7 and r["component_sizes"] == [3] * 7
    dot = Path(str(prefix) + ".dot").read_text()
    edges = Path(str(prefix) + ".edges").read_text().splitlines()
    assert dot.startswith("graph flaggraph {") and len(edges) == 21


def test_construct_from_generator_file(capsys, tmp_path):
    f = tmp_path / "psl33.txt"
    f.write_text(format_generators(build_psl(3, 3).group))
    code, rep, _ = run(capsys, "construct", "--generators", str(f))
    assert code == 0
    assert [(r["lambda"], r["components"]) for r in rep["results"]] == [(1, 13)]


def test_construct_agammal_and_affine(capsys):
    code, rep, _ = run(capsys, "construct", "--family", "agammal1", "--q", "7")
    assert code == 0 and rep["block_sizes"] == [2, 3]
    code, rep, _ = run(capsys, "construct", "--family", "affine_sl", "--n", "2", "--q", "5")
    assert code == 0 and all(r["components"] > 1 for r in rep["results"])


def test_output_is_deterministic(capsys):
    _, _, a = run(capsys, "construct", "--family", "psu3", "--q", "3")
    _, _, b = run(capsys, "construct", "--family", "psu3", "--q", "3")
    assert a == b


def test_timing_flag(capsys):
    _, rep, _ = run(capsys, "construct", "--family", "psl", "--d", "3", "--q", "2", "--timing")
    assert rep["wall_time_s"] >= 0


def test_analyze_agammal(capsys):
    code, rep, _ = run(capsys, "analyze-agammal", "--p", "3", "--d", "2", "--g0-spec", "gammal")
    assert code == 0 and rep["census_match"]
    assert rep["structure"]["g0_order"] == 16


def test_analyze_agammal_without_graph(capsys):
    code, rep, _ = run(capsys, "analyze-agammal", "--p", "3", "--d", "3", "--g0-spec", "gammal", "--no-graph")
    assert code == 0 and rep["verdict"] == "PASS"
    assert rep["blocks"] and all("lambda" not in b for b in rep["blocks"])


def test_survey_p5(capsys):
    code, rep, _ = run(capsys, "survey", "--p", "5")
    assert code == 0 and rep["total_triples"] == 19 and rep["verdict"] == "PASS"


def test_verify_all_and_fault(capsys):
    code, rep, _ = run(capsys, "verify-all")
    assert code == 0 and rep["verdict"] == "PASS"
    assert [c["id"] for c in rep["checks"]] == list(range(1, 10))
    code, rep, _ = run(capsys, "verify-all", "--fault", "suzuki-sigma")
    assert code == 1
    first = rep["checks"][0]
    assert not first["passed"] and "Frobenius" in first["failures"][0]


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["construct", "--family", "suzuki"],
    ["construct", "--family", "psl", "--q", "2", "--case", "i"],
    ["survey", "--p", "11"],
    ["construct", "--generators", "/nonexistent/file"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_budget_exit_code(capsys):
    code, rep, _ = run(capsys, "construct", "--family", "psl", "--d", "3", "--q", "64")
    assert code == 3 and rep["error"] == "budget exceeded"
