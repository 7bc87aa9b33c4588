from __future__ import annotations

import csv
import io
import json
import subprocess
import sys
from fractions import Fraction
from importlib.resources import files

import pytest

from hodgedim import (SolverFailureError, ball, differential, edge_function_to_csv,
                      VertexFunction, make_family, window_to_json)
from hodgedim.cli import main

import numpy as np


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def test_scores_csv_values(capsys):
    code, out, err = run_cli(capsys, "scores", "--family", "z1",
                             "--radii", "1,2")
    assert code == 0 and err == ""
    header, rows = parse_csv(out)
    assert header == ["family", "edge_tail", "edge_head", "R", "star",
                      "diamond", "hd", "cg_iters", "residual"]
    assert len(rows) == 2
    for row, r in zip(rows, (1, 2)):
        assert row[0] == "z1"
        assert int(row[3]) == r
        assert float(row[4]) == pytest.approx(float(Fraction(2 * r + 2, 2 * r + 3)),
                                              abs=1e-9)
        assert float(row[5]) == 0.0


def test_scores_range_radii(capsys):
    code, out, _ = run_cli(capsys, "scores", "--family", "z1",
                           "--radii", "1..3")
    assert code == 0
    _, rows = parse_csv(out)
    assert [int(r[3]) for r in rows] == [1, 2, 3]


def test_scores_json_matches_schema(capsys):
    code, out, _ = run_cli(capsys, "scores", "--family", "z1",
                           "--radii", "1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["command"] == "scores"
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(
        (files("hodgedim") / "schemas" / "output.schema.json").read_text())
    jsonschema.validate(payload, schema)


def test_folner(capsys):
    code, out, _ = run_cli(capsys, "folner", "--family", "z2",
                           "--radii", "1,2,4")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["family", "radius", "V", "E", "sigma", "ratio_v",
                      "ratio_e"]
    assert [int(r[1]) for r in rows] == [1, 2, 4]
    assert int(rows[0][2]) == 5  # z2 ball r=1
    ratios = [float(r[5]) for r in rows]
    assert ratios == sorted(ratios, reverse=True)


def test_qicheck_identity(capsys):
    code, out, _ = run_cli(capsys, "qicheck", "--family", "z2",
                           "--window-radii", "2", "--map", "identity")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["map_name", "window_radius", "k_est", "density_gap",
                      "wobble", "lemma5_ratio", "lemma5_bound", "lemma6_ratio",
                      "lemma6_bound"]
    (row,) = rows
    assert row[0] == "identity"
    assert int(row[2]) == 1 and int(row[3]) == 0 and int(row[4]) == 0
    assert float(row[5]) == 1.0
    assert float(row[7]) == 0.0


def test_qicheck_unknown_map(capsys):
    code, out, err = run_cli(capsys, "qicheck", "--family", "z2",
                             "--window-radii", "2", "--map", "banana")
    assert code == 2
    assert "unknown map" in err
    assert out == ""


def test_qicheck_map_unavailable_for_family(capsys):
    code, _, err = run_cli(capsys, "qicheck", "--family", "tree3",
                           "--window-radii", "2", "--map", "coarsen")
    assert code == 2
    assert "coarsen" in err


def test_cor4(capsys):
    code, out, _ = run_cli(capsys, "cor4", "--family", "z2",
                           "--window-radii", "1,2", "--factor", "2")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["family", "window_radius", "score_radius",
                      "hd_dim_estimate", "sigma_over_E"]
    assert [int(r[2]) for r in rows] == [2, 4]


def test_decompose_roundtrip(tmp_path, capsys):
    fam = make_family("z2")
    w = ball(fam, (0, 0), 2)
    vals = np.array([1.0 if x == (0, 0) else 0.0 for x in w.vertices])
    u = differential(VertexFunction(w, vals))
    wpath = tmp_path / "window.json"
    epath = tmp_path / "edges.csv"
    wpath.write_text(window_to_json(w))
    epath.write_text(edge_function_to_csv(u))

    code, out, err = run_cli(capsys, "decompose", "--window", str(wpath),
                             "--edges", str(epath))
    assert code == 0, err
    header, rows = parse_csv(out)
    assert header == ["tail", "head", "value", "star", "diamond",
                      "iterations", "residual", "converged"]
    assert len(rows) == w.n_edges
    for row in rows:
        assert float(row[2]) == pytest.approx(float(row[3]) + float(row[4]),
                                              abs=1e-9)
        assert row[7] == "true"
    # an exact gradient: diamond column vanishes
    assert max(abs(float(r[4])) for r in rows) < 1e-8


def test_decompose_missing_file(tmp_path, capsys):
    code, _, err = run_cli(capsys, "decompose", "--window",
                           str(tmp_path / "nope.json"), "--edges",
                           str(tmp_path / "nope.csv"))
    assert code == 2
    assert "configuration error" in err


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "scores.csv"
    code, out, _ = run_cli(capsys, "scores", "--family", "z1", "--radii", "1",
                           "--out", str(target))
    assert code == 0
    assert out == ""
    text = target.read_text()
    assert text.startswith("family,edge_tail,edge_head,R,")


def test_deterministic_output(capsys):
    args = ("scores", "--family", "z2", "--radii", "1,2")
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


def test_jobs_do_not_change_bytes(capsys):
    base = ("scores", "--family", "z2", "--radii", "1,2")
    _, a, _ = run_cli(capsys, *base, "--jobs", "1")
    _, b, _ = run_cli(capsys, *base, "--jobs", "4")
    assert a == b


def test_bad_family(capsys):
    code, _, err = run_cli(capsys, "scores", "--family", "petersen",
                           "--radii", "1")
    assert code == 2
    assert "configuration error" in err


def test_bad_radii(capsys):
    code, _, err = run_cli(capsys, "scores", "--family", "z1",
                           "--radii", "0")
    assert code == 2


def test_bad_jobs(capsys):
    code, _, _ = run_cli(capsys, "scores", "--family", "z1", "--radii", "1",
                         "--jobs", "0")
    assert code == 2


def test_numeric_failure_exit_code(monkeypatch, capsys):
    import hodgedim.cli as cli_mod

    def boom(*args, **kwargs):
        raise SolverFailureError("stalled")

    monkeypatch.setattr(cli_mod, "score_report", boom)
    code, _, err = run_cli(capsys, "scores", "--family", "z1", "--radii", "1")
    assert code == 3
    assert "numerical failure" in err


def test_console_entry_point():
    proc = subprocess.run(
        ["hodgedim", "scores", "--family", "z1", "--radii", "1"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert proc.stdout.startswith("family,edge_tail,edge_head,R,")
