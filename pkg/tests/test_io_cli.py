import csv
import json

import numpy as np
import pytest

from tenuregraph import case_study as cs
from tenuregraph.cli import main, parse_range
from tenuregraph.io import (
    SchemaError,
    department_from_json,
    read_matrix_csv,
    scenario_from_json,
    scenario_to_json,
    write_matrix_csv,
)

DEPT = {
    "agents": [1, 2, 3, 4],
    "criteria": {"JOUR": [4, 1, 2, 1], "PUBL": [8, 2, 4, 6], "FUND": [3, 0, 1, 0]},
    "pair_criteria": {"JOUR": [[0, 1, 1, 0], [1, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]]},
    "roles": {"4": "chair"},
    "inbred_set": [2, 3],
}
SCEN = {"candidate": 1, "v_plus": [2], "v_minus": [3], "v_undecided": [], "non_voters": {"4": 0.0}}


def _read(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_department_json_schema_violation():
    with pytest.raises(SchemaError):
        department_from_json({"agents": [1, 2], "unknown": 1})
    with pytest.raises(SchemaError):
        department_from_json({"agents": [1, 2], "criteria": {"JOUR": [1, -1]}})
    with pytest.raises(SchemaError):
        department_from_json({"agents": [1, 2], "roles": {"7": "chair"}})


def test_scenario_round_trip():
    s = cs.case_study_scenario(mu=2.0, merit=0.3)
    back, seed, trials = scenario_from_json(json.loads(json.dumps(scenario_to_json(s, 5, 10))), cs.AGENTS)
    assert back == s and seed == 5 and trials == 10


def test_matrix_csv_round_trip(tmp_path):
    M = np.round(np.random.default_rng(0).random((4, 4)), 6)
    write_matrix_csv(tmp_path / "m.csv", M, ["a", "b", 3, 4])
    ids, back = read_matrix_csv(tmp_path / "m.csv")
    assert ids == ("a", "b", 3, 4)
    np.testing.assert_array_equal(back, M)


def test_parse_range_inclusive():
    assert parse_range("0:1:0.2") == [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]
    assert parse_range("0.5,1,2") == [0.5, 1.0, 2.0]


def test_build_writes_five_matrix_files(tmp_path, capsys):
    (tmp_path / "dept.json").write_text(json.dumps(DEPT))
    out = tmp_path / "out"
    rc = main(["build", "--input", str(tmp_path / "dept.json"), "--eta", "0.25", "--pmax", "7",
               "--gamma", "0.25", "--out", str(out)])
    assert rc == 0
    for name in ("productivity", "R", "S", "W", "L"):
        assert (out / f"{name}.csv").exists() and (out / f"{name}.json").exists()
    assert "W positivity: OK" in capsys.readouterr().out
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["parameters"]["eta"] == 0.25
    ids, L = read_matrix_csv(out / "L.csv")
    assert ids == (1, 2, 3, 4)
    assert np.abs(L.sum(axis=1)).max() < 1e-5


def test_build_case_study_matches_exported_dataset(tmp_path):
    assert main(["case-study", "export", "--out", str(tmp_path / "exp")]) == 0
    assert main(["build", "--case-study", "--out", str(tmp_path / "a")]) == 0
    assert main(["build", "--input", str(tmp_path / "exp" / "department.json"), "--out", str(tmp_path / "b")]) == 0
    for name in ("productivity.csv", "R.csv", "S.csv", "W.csv", "L.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_build_parameter_rejection_names_pair(tmp_path, capsys):
    rc = main(["build", "--case-study", "--eta", "0.9", "--pmax", "1", "--out", str(tmp_path)])
    assert rc == 3
    err = capsys.readouterr().err
    assert "agents 1 and" in err


def test_build_schema_error_exit_code(tmp_path):
    (tmp_path / "bad.json").write_text(json.dumps({"agents": []}))
    assert main(["build", "--input", str(tmp_path / "bad.json"), "--out", str(tmp_path)]) == 2
    assert main(["build", "--input", str(tmp_path / "missing.json"), "--out", str(tmp_path)]) == 2


def test_unknown_flag_rejected(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["build", "--case-study", "--bogus", "1"])
    assert exc.value.code == 2


def test_help_lists_defaults(capsys):
    with pytest.raises(SystemExit):
        main(["vote", "--help"])
    text = capsys.readouterr().out
    for flag, default in [("--eta", "0.25"), ("--pmax", "7.0"), ("--gamma", "0.25"), ("--alpha", "0.15"),
                          ("--eps", "0.0"), ("--mu", "1.0"), ("--trials", "1000"), ("--seed", "42")]:
        assert flag in text and f"default: {default}" in text


def test_embed_outputs(tmp_path):
    assert main(["embed", "--case-study", "--out", str(tmp_path)]) == 0
    rows = _read(tmp_path / "diagram.csv")
    assert rows[0] == ["agent_id", "x", "y"] and len(rows) == 12
    assert (tmp_path / "diagram.svg").read_text().lstrip().startswith("<?xml")


def test_field_outputs(tmp_path):
    rc = main(["field", "--case-study", "--assign", "4=2", "--agent-sigma", "4=16e-4",
               "--grid-resolution", "50", "--out", str(tmp_path)])
    assert rc == 0
    summary = json.loads((tmp_path / "field.json").read_text())
    assert summary["assignments"]["4"] == 2.0
    assert 0 <= summary["positive_area_fraction"] <= 1
    assert len(_read(tmp_path / "field.csv")) == 50 * 50 + 1


def test_vote_deterministic(tmp_path):
    args = ["vote", "--case-study", "--mu", "1", "--trials", "200", "--seed", "42"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    for name in ("votes.csv", "votes.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_vote_with_scenario_file(tmp_path):
    (tmp_path / "dept.json").write_text(json.dumps(DEPT))
    scen = dict(SCEN, v_plus=[2], v_minus=[], v_undecided=[3], seed=3, trials=10)
    (tmp_path / "scen.json").write_text(json.dumps(scen))
    rc = main(["vote", "--input", str(tmp_path / "dept.json"), "--scenario", str(tmp_path / "scen.json"),
               "--out", str(tmp_path / "o")])
    assert rc == 0
    rows = _read(tmp_path / "o" / "votes.csv")
    assert rows[1][0] == "3" and rows[1][3] == "10"


def test_sweep_cells(tmp_path):
    rc = main(["sweep", "--case-study", "--gammas", "0:1:0.2", "--mus", "0.5,1,2", "--trials", "20",
               "--out", str(tmp_path)])
    assert rc == 0
    rows = _read(tmp_path / "sweep.csv")[1:]
    cells = {(r[0], r[1]) for r in rows}
    assert len(cells) == 18
    assert len(rows) == 18 * 4


def test_case_study_figure2(tmp_path):
    assert main(["case-study", "--figure", "2", "--out", str(tmp_path)]) == 0
    assert len(_read(tmp_path / "fig2.csv")) == 12
    assert (tmp_path / "fig2.svg").exists()
    assert (tmp_path / "manifest.json").exists()


def test_export_schema(tmp_path):
    assert main(["export-schema", "--out", str(tmp_path)]) == 0
    schema = json.loads((tmp_path / "department.schema.json").read_text())
    assert "agents" in schema["required"]


def test_output_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("TENUREGRAPH_OUT", str(tmp_path / "env"))
    assert main(["export-schema"]) == 0
    assert (tmp_path / "env" / "scenario.schema.json").exists()
