import io as _io
import json
import subprocess
import sys

import pytest

from sympindex.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, run

QUARTER = json.dumps({"kind": "rotations", "angles": ["1/2"]})


def _run(*argv, env=None):
    out, err = _io.StringIO(), _io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def _json(*argv):
    code, out, err = _run(*argv, "--output", "json")
    return code, json.loads(out) if out else None, err


# -- examples -----------------------------------------------------------------

def test_iterate_quarter_turn():
    code, rep, _ = _json("iterate", QUARTER, "--m-max", "5")
    assert code == EXIT_OK
    rows = {r["m"]: (r["i"], r["nu"]) for r in rep["result"]["rows"]}
    # R(π/2)^4 = I in Sp(2), so the kernel at the fourth iterate is two-dimensional
    assert rows[4] == (1, 2)
    assert rows[5] == (3, 0)


def test_split_positive_shear():
    code, rep, _ = _json("split", "--factors", "N1(1,1)", "--omega", "0")
    assert code == EXIT_OK
    assert (rep["result"]["s_plus"], rep["result"]["s_minus"]) == (1, 1)


def test_audit_bundled_six_sphere():
    code, rep, _ = _json("audit", "bundled:n6_pinched", "--count", "2")
    assert code == EXIT_OK
    assert rep["result"]["audit"]["forced_irrational"] >= 1
    assert rep["result"]["hypotheses"]["ok"]


def test_index_table_output():
    code, out, _ = _run("index", QUARTER, "--omega", "1/2")
    assert code == EXIT_OK and out.strip()


def test_decompose_table_output():
    code, out, _ = _run("decompose", "--factors", "N1(1,1);R(2/5π);D(-2)")
    assert code == EXIT_OK
    assert "R(2/5π)" in out and "N1(1,1)" in out


def test_table_export_lists_the_shears():
    code, rep, _ = _json("table-export")
    facs = {r["factor"] for r in rep["result"]["rows"]}
    assert code == EXIT_OK and {"N1(1,1)", "N1(1,-1)"} <= facs


# -- exit codes ---------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["index", "{not json"],
    ["index", '{"kind": "spiral"}'],
    ["index", '{"kind": "rotations", "angles": []}'],
    ["split", "--factors", "Q(1)"],
    ["iterate", "/nonexistent/path.json"],
    ["audit", "bundled:no_such_ensemble"],
    ["index", QUARTER, "--omega", "abc"],
])
def test_malformed_input_exits_two(argv):
    code, out, err = _run(*argv)
    assert code == EXIT_INPUT
    assert err.startswith("sympindex:") and not out


def test_json_diagnostic_names_line_and_column():
    _, _, err = _run("index", '{\n  "kind": }')
    assert "line 2" in err and "column" in err


def test_bad_config_file_exits_two(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"no_such_knob": 1}')
    assert _run("table-export", "--config", str(cfg))[0] == EXIT_INPUT


def test_exhausted_search_exits_one():
    doc = json.dumps({"paths": [{"kind": "rotations", "angles": [4.44]}]})
    code, rep, _ = _json("jump", doc, "--count", "50", "--n-max", "20")
    assert code == EXIT_FAIL and rep["status"] == "failed"
    assert rep["result"]["stats"]["n_max"] == 20


# -- certificates -------------------------------------------------------------

def test_jump_verify_round_trip(tmp_path):
    doc = json.dumps({"paths": [{"kind": "rotations", "angles": ["5/2"]}]})
    code, rep, _ = _json("jump", doc, "--count", "2")
    assert code == EXIT_OK
    certs = tmp_path / "certs.json"
    certs.write_text(json.dumps(rep["result"]))
    code, back, _ = _json("jump", doc, "--verify", str(certs))
    assert code == EXIT_OK
    assert [c["N"] for c in back["result"]["certificates"]] == [5, 10]


def test_jump_verify_rejects_tampered_certificate(tmp_path):
    doc = json.dumps({"paths": [{"kind": "rotations", "angles": ["5/2"]}]})
    _, rep, _ = _json("jump", doc, "--count", "1")
    rep["result"]["certificates"][0]["m"] = [3]
    certs = tmp_path / "certs.json"
    certs.write_text(json.dumps(rep["result"]))
    assert _json("jump", doc, "--verify", str(certs))[0] == EXIT_FAIL


# -- determinism --------------------------------------------------------------

def test_reports_are_byte_stable_across_runs_and_workers():
    doc = json.dumps({"paths": [{"kind": "rotations", "angles": ["3/2", 4.44]}]})
    outs = set()
    for workers in ("1", "4", "1"):
        code, out, _ = _run("jump", doc, "--count", "3", "--output", "json", "--workers", workers)
        assert code == EXIT_OK
        outs.add(out)
    assert len(outs) == 1


def test_global_options_before_the_subcommand():
    a = _run("--output", "json", "split", "--factors", "N1(1,1)")[1]
    b = _run("split", "--factors", "N1(1,1)", "--output", "json")[1]
    assert a == b and json.loads(a)["command"] == "split"


def test_report_carries_input_digests():
    _, rep, _ = _json("index", QUARTER)
    assert set(rep) == {"command", "status", "inputs", "config", "result"}
    assert len(rep["inputs"]["path"]) == 64
    assert "workers" not in rep["config"]


def test_environment_overrides_tolerances():
    env = {"SYMPINDEX_SYMPL_TOL": "1e-6", "PATH": ""}
    proc = subprocess.run([sys.executable, "-m", "sympindex", "table-export", "--output", "json"],
                          capture_output=True, text=True, env={**env, **_pythonpath()})
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["config"]["sympl_tol"] == 1e-6


def _pythonpath():
    import os

    return {k: v for k, v in os.environ.items() if k in ("PYTHONPATH", "HOME")}
