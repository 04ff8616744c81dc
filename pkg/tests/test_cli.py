import json
import subprocess
import sys

import pytest

from bsk.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out else None), out.err


def test_hc_example(capsys):
    code, rep, _ = run(["hc", "--rank", "1", "--c", "1/1", "--first", "[[0]]", "--second", "[[2]]"],
                       capsys)
    assert code == 0
    assert rep["command"] == "hc"
    assert rep["results"][0]["value"] == "1/2"
    assert len(rep["inputs_digest"]) == 64


def test_hc_alt_flag(capsys):
    code, rep, _ = run(["hc", "--first", '[["0"], ["5"]]', "--second", "[[2], [3]]", "--alt"], capsys)
    assert code == 0 and rep["results"][0]["value"] == "-2"


def test_scalar_mismatch_is_zero(capsys):
    code, rep, _ = run(["scalar", "--rank", "1", "--first", "[[0]]", "--second", "[[1, 2]]"], capsys)
    assert code == 0 and rep["results"][0]["value"] == "0"


def test_scalar_with_model_file(tmp_path, capsys):
    model = {"rank": 1, "c": "1", "alphas": [{"kind": "table", "values": {"0": "2", "1": "5"}}]}
    path = tmp_path / "model.json"
    path.write_text(json.dumps(model))
    code, rep, _ = run(["scalar", "--input", str(path), "--first", "[[1]]", "--second", "[[0]]"],
                       capsys)
    assert code == 0 and rep["results"][0]["value"] == "-3"


def test_izergin(capsys):
    code, rep, _ = run(["izergin", "--first", "[4, 5]", "--second", "[0, 2]"], capsys)
    assert code == 0 and rep["results"][0]["value"] == "1/4"


def test_norm_from_file(tmp_path, capsys):
    path = tmp_path / "norm.json"
    path.write_text(json.dumps({"u": [["1/3"], ["-7/5"]], "X": [["5/2"], ["-4/3"]]}))
    code, rep, _ = run(["norm", "--input", str(path)], capsys)
    assert code == 0 and rep["results"][0]["pass"]


def test_verify_oracle_all_pass(capsys):
    code, rep, _ = run(["verify", "--suite", "oracle", "--rank", "1", "--length", "2"], capsys)
    assert code == 0
    assert rep["results"] and all(r["pass"] for r in rep["results"])
    assert all(r["name"].startswith("oracle.") for r in rep["results"])


def test_verify_single_suite_filter(capsys):
    code, rep, _ = run(["verify", "--suite", "korepin"], capsys)
    assert code == 0
    assert {r["name"].split(".")[0] for r in rep["results"]} == {"korepin"}


def test_reports_byte_identical(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["verify", "--suite", "hc", "--seed", "7", "--no-timing", "--output", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_bad_seed_exits_2():
    proc = subprocess.run([sys.executable, "-m", "bsk.cli", "verify", "--seed", "abc"],
                          capture_output=True, text=True)
    assert proc.returncode == 2


@pytest.mark.parametrize("args, fragment", [
    (["hc", "--first", "[[0],]", "--second", "[[2]]"], "line 1 column"),
    (["hc", "--rank", "2", "--first", "[[0]]", "--second", "[[2]]"], "expected 2 colors"),
    (["hc", "--first", "[[0.5]]", "--second", "[[2]]"], "--first[0][0]"),
    (["verify", "--suite", "nope"], "unknown suite"),
    (["scalar", "--input", "/nonexistent.json", "--first", "[[0]]", "--second", "[[1]]"], "nonexistent"),
])
def test_schema_errors(args, fragment, capsys):
    code, _, err = run(args, capsys)
    assert code == 2
    assert fragment in err


def test_failed_check_exits_1(monkeypatch, capsys):
    import bsk.cli as cli
    monkeypatch.setitem(cli.SUITE_FUNCS, "hc", lambda args, rng: [cli._result("forced", False)])
    code, rep, _ = run(["verify", "--suite", "hc"], capsys)
    assert code == 1 and rep["results"][0]["pass"] is False
