import io
import json
import subprocess
import sys

import pytest

from norilc import cli
from norilc.errors import VerificationError
from norilc.localcoh import MVReport

POINT = {"n": 3, "gens": [[1], [2], [3]]}
LINES = {"i": {"n": 2, "gens": [[1]]}, "j": {"n": 2, "gens": [[2]]}}
JORDAN = {"vertices": [{"id": "v", "dim": 2}], "edges": [{"id": "n", "src": "v", "dst": "v", "matrix": [["0", "1"], ["0", "0"]]}]}


def write(tmp_path, obj, name="in.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def call(argv):
    out = io.StringIO()
    cfg = cli.parse_config(argv)
    code = cli.run(cfg, out)
    return code, out.getvalue()


def test_lyu_point(tmp_path):
    code, out = call(["lyu", "--input", write(tmp_path, POINT)])
    assert code == 0
    assert json.loads(out) == {"d": 0, "lambda": [[1]]}


def test_mv_lines(tmp_path):
    code, out = call(["mv", "--input", write(tmp_path, LINES), "--box"])
    assert code == 0
    rep = json.loads(out)
    assert rep["exact"] is True and rep["matches_intersection"] is True
    assert rep["dims"]["intersection"]["1"] == {"00": 0, "10": 1, "01": 1, "11": 1}
    code, out = call(["mv", "--input", write(tmp_path, LINES), "--format", "tsv"])
    assert out.splitlines()[0] == "exact\ttrue"


def test_motive_point(tmp_path):
    code, out = call(["motive", "--input", write(tmp_path, POINT)])
    assert code == 0
    assert json.loads(out) == [{"r": 0, "i": 0, "lambda": 1, "motivic_length": 1, "certified": True}]


def test_lc_and_relc(tmp_path):
    code, out = call(["lc", "--input", write(tmp_path, {"n": 2, "gens": [[1]]})])
    assert json.loads(out)["local_cohomology"] == {"0": 0, "1": 1, "2": 0}
    rel = {"y": {"n": 2, "gens": [[2]]}, "z": {"n": 2, "gens": [[1], [2]]}}
    code, out = call(["relc", "--input", write(tmp_path, rel), "--box"])
    assert code == 0
    assert json.loads(out)["relative"]["1"] == {"00": 0, "10": 0, "01": 1, "11": 1}
    code, out = call(["relc", "--input", write(tmp_path, {"y": rel["y"], "z": None}), "--format", "tsv"])
    assert out.splitlines() == ["degree\tdim", "0\t0", "1\t1", "2\t0"]


def test_strat_and_height_bump(tmp_path):
    code, out = call(["strat", "--input", write(tmp_path, {"n": 3, "gens": [[1, 3], [2, 3]]})])
    rep = json.loads(out)
    assert code == 0 and rep["cellular"] and rep["complex"]["matches"]
    code, out = call(["prop3", "--input", write(tmp_path, {"i": {"n": 2, "gens": [[1]]}, "j": {"n": 2, "gens": [[1], [2]]}}),
                      "--format", "tsv"])
    assert code == 0
    assert out.splitlines()[0] == "height\t1"


def test_nori_commands(tmp_path):
    code, out = call(["nori-end", "--input", write(tmp_path, JORDAN)])
    rep = json.loads(out)
    assert code == 0 and rep["dim"] == 2
    code, out = call(["nori-length", "--input", write(tmp_path, {"diagram": JORDAN, "vertex": "v"})])
    rep = json.loads(out)
    assert (rep["length"], rep["certified"], rep["series_dims"]) == (2, True, [0, 1, 2])


def test_malformed_json_is_line_precise(tmp_path, capsys):
    path = write(tmp_path, '{\n  "n": 2,\n  "gens": [[1],\n}\n')
    assert cli.main(["lc", "--input", path]) == 1
    err = capsys.readouterr().err
    assert f"{path}:4:1:" in err


@pytest.mark.parametrize("argv,needle", [
    (["bogus", "--input", "x"], "invalid choice"),
    (["lc"], "--input"),
    (["lc", "--input", "x", "--jobs", "0"], "--jobs"),
    (["lc", "--input", "/nonexistent/file.json"], "No such file"),
])
def test_input_errors_exit_1(argv, needle, capsys):
    assert cli.main(argv) == 1
    assert needle in capsys.readouterr().err


def test_schema_errors_exit_1(tmp_path, capsys):
    assert cli.main(["lc", "--input", write(tmp_path, {"n": 2, "gens": [[3]]})]) == 1
    assert cli.main(["mv", "--input", write(tmp_path, {"i": {"n": 2, "gens": [[1]]}})]) == 1
    assert "'j'" in capsys.readouterr().err
    bad = {"vertices": [{"id": "v", "dim": 1}], "edges": [{"id": "e", "src": "v", "dst": "v", "matrix": [["1", "2"]]}]}
    assert cli.main(["nori-end", "--input", write(tmp_path, bad)]) == 1


def test_verification_failure_exit_2(tmp_path, monkeypatch, capsys):
    broken = MVReport(2, False, True, {"sum": {}, "pair": {}, "intersection": {}, "intersection_direct": {}},
                      ["slot 1 not exact"])
    monkeypatch.setattr(cli, "mayer_vietoris", lambda i, j: broken)
    assert cli.main(["mv", "--input", write(tmp_path, LINES)]) == 2

    def boom(i, seed):
        raise VerificationError("lifted differential not equivariant")

    monkeypatch.setattr(cli, "motive_sweep", boom)
    assert cli.main(["motive", "--input", write(tmp_path, POINT)]) == 2
    assert "verification failed" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    p = subprocess.run([sys.executable, "-m", "norilc", "lyu", "--input", write(tmp_path, POINT), "--format", "tsv"],
                       capture_output=True, text=True, check=False)
    assert p.returncode == 0
    assert p.stdout.splitlines() == ["r\\i\t0", "0\t1"]
