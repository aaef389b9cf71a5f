import json
from importlib import resources

import jsonschema
import pytest

from gdrazin.cli import main
from gdrazin.matrix import Matrix

from conftest import M


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj.to_json() if isinstance(obj, Matrix) else obj))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def schema():
    return json.loads(resources.files("gdrazin").joinpath("report_schema.json").read_text())


@pytest.mark.parametrize("mat,inv,index", [
    (Matrix.diag([2, 3]), M([["1/2", 0], [0, "1/3"]]), 0),
    (M([[0, 1], [0, 0]]), Matrix.zeros(2), 2),
    (M([[1, 1], [0, 0]]), M([[1, 1], [0, 0]]), 1),
])
def test_compute(tmp_path, capsys, mat, inv, index):
    code, out = run(capsys, "compute", write(tmp_path, "m.json", mat))
    assert code == 0
    assert Matrix.from_json(out["inverse"]) == inv and out["index"] == index


def test_compute_float(tmp_path, capsys):
    code, out = run(capsys, "compute", "--float", write(tmp_path, "m.json", Matrix.diag([2, 4])))
    assert code == 0 and out["index"] == 0


@pytest.mark.parametrize("content", ["not json", '{"rows": 2}', '{"rows":1,"cols":2,"mode":"exact","data":["1","2"]}'])
def test_compute_bad_input(tmp_path, capsys, content):
    p = tmp_path / "m.json"
    p.write_text(content)
    assert main(["compute", str(p)]) == 3


def test_missing_file(capsys):
    assert main(["compute", "/nonexistent/file.json"]) == 3


def test_route_l21(tmp_path, capsys):
    code, out = run(capsys, "route", "L2.1", write(tmp_path, "a.json", M([[0]])),
                    write(tmp_path, "b.json", M([[2]])))
    assert code == 0 and out["match"] and out["discrepancy"] == 0.0


def test_route_violated(tmp_path, capsys):
    a, b = write(tmp_path, "a.json", M([[1]])), write(tmp_path, "b.json", M([[1]]))
    code, out = run(capsys, "route", "T3.1", a, b)
    assert code == 1 and out["verdict"] == "violated"
    assert out["hypothesis"]["conditions"][0]["residual"] == 1.0
    code, out = run(capsys, "route", "T3.1", a, b, "--force")
    assert code in (0, 2) and out["forced"] and "discrepancy" in out


def test_route_blocks(tmp_path, capsys):
    files = [write(tmp_path, f"{k}.json", M([[v]])) for k, v in zip("ABCD", (1, 1, 0, 0))]
    code, out = run(capsys, "route", "T4.1", *files)
    assert code == 0 and Matrix.from_json(out["inverse"]) == M([[1, 1], [0, 0]])
    assert {p["source"] for p in out["provenance"]} <= {"oracle", "formula"}


def test_route_wrong_arity(tmp_path, capsys):
    assert main(["route", "T4.1", write(tmp_path, "a.json", M([[1]]))]) == 3


def test_check_and_generate(tmp_path, capsys):
    code, man = run(capsys, "generate", "H33", "--dim", "3", "--seed", "4")
    assert code == 0
    path = write(tmp_path, "inst.json", man)
    code, rep = run(capsys, "check", "H33", path)
    assert code == 0 and rep["verdict"] == "satisfied"
    code, out = run(capsys, "route", "T3.3", path)
    assert code == 0 and out["match"]
    code, rep = run(capsys, "check", "H27", write(tmp_path, "a.json", M([[1]])),
                    write(tmp_path, "b.json", M([[1]])))
    assert code == 1


def test_explore_square_zero(capsys):
    code, rep = run(capsys, "explore", "H27", "--trials", "10", "--dim", "2", "--seed", "1")
    assert code == 0
    assert rep["summary"]["passed"] == 10
    jsonschema.validate(rep, schema())


def test_explore_empty(capsys):
    code, rep = run(capsys, "explore", "H22", "--trials", "0")
    assert code == 0 and rep["trials"] == [] and rep["summary"]["trials"] == 0
    jsonschema.validate(rep, schema())


def test_explore_deterministic(tmp_path, capsys):
    bodies = []
    for jobs in ("1", "1", "2"):
        out = tmp_path / f"r{len(bodies)}.json"
        assert main(["explore", "H31", "--trials", "4", "--dim", "3", "--seed", "9",
                     "--jobs", jobs, "--out", str(out)]) == 0
        rep = json.loads(out.read_text())
        jsonschema.validate(rep, schema())
        rep.pop("timing")
        bodies.append(json.dumps(rep, sort_keys=True))
    assert bodies[0] == bodies[1] == bodies[2]


def test_explore_violate(capsys):
    code, rep = run(capsys, "explore", "H27", "--trials", "4", "--dim", "3", "--violate", "2")
    assert code == 0
    jsonschema.validate(rep, schema())
    s = rep["summary"]
    assert s["passed"] + s["failed"] + s["errors"] == s["trials"]
    for t in rep["trials"]:
        if t["violated"]:
            assert [c["satisfied"] for c in t["hypothesis"]["conditions"]] == [True, False]


@pytest.mark.parametrize("argv", [
    ["explore", "H22", "--trials", "-1"],
    ["explore", "H22", "--dim", "0"],
    ["explore", "H22", "--violate", "5"],
    ["explore", "H99"],
    ["bogus"],
])
def test_explore_bad_parameters(capsys, argv):
    assert main(argv) == 3
