import json
import os

import pytest

from sympinv.cli import main


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def matrix_json(rows, field=None):
    return {"field": field or {"kind": "prime", "p": 3}, "rows": rows}


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_identity(tmp_path, capsys):
    path = write(tmp_path, "id.json", matrix_json([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    code, out, _ = run(capsys, ["classify", path])
    assert code == 0
    rep = json.loads(out)
    assert rep["bireflectional"]["verdict"] is True
    assert rep["inv_skew"]["verdict"] is False


def test_classify_transvection_criterion_trace(tmp_path, capsys):
    path = write(tmp_path, "t.json", matrix_json([[1, 1], [0, 1]]))
    code, out, _ = run(capsys, ["classify", path, "--recheck"])
    assert code == 0
    rep = json.loads(out)
    assert rep["two_skew"]["verdict"] is False
    assert rep["two_skew"]["method"] == "criterion"


def test_classify_not_symplectic(tmp_path, capsys):
    path = write(tmp_path, "bad.json", matrix_json([[1, 0], [0, 2]]))
    code, _, err = run(capsys, ["classify", path])
    assert code == 3


def test_classify_parse_error(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    code, _, _ = run(capsys, [ "classify", str(path)])
    assert code == 2


def test_classify_unsupported_field(tmp_path, capsys):
    path = write(tmp_path, "f2.json", matrix_json([[1, 0], [0, 1]], field={"kind": "prime", "p": 2}))
    code, _, _ = run(capsys, ["classify", path])
    assert code == 4


def test_classify_custom_form_and_element_json(tmp_path, capsys):
    from sympinv.fields import GF
    from sympinv.linalg import Mat
    from sympinv.poly import Poly
    from sympinv.symplectic import symplectic_model

    mdl = symplectic_model(Mat.companion(Poly(GF(3), [1, 0, 1]) ** 2))
    path = write(tmp_path, "el.json", mdl.to_json())
    code, out, _ = run(capsys, ["classify", path, "--recheck"])
    assert code == 0
    rep = json.loads(out)
    assert rep["two_skew"]["verdict"] is True
    # same matrix with an explicit form file
    mpath = write(tmp_path, "m.json", mdl.matrix.to_json())
    gpath = write(tmp_path, "g.json", mdl.space.gram.to_json())
    code, out2, _ = run(capsys, ["classify", mpath, "--form", gpath])
    assert code == 0 and json.loads(out2)["two_skew"]["verdict"] is True


def test_classify_reproducible_bytes(tmp_path, capsys):
    path = write(tmp_path, "t.json", matrix_json([[1, 1], [0, 1]]))
    _, out1, _ = run(capsys, ["classify", path, "--seed", "7"])
    _, out2, _ = run(capsys, ["classify", path, "--seed", "7"])
    assert out1 == out2


def test_classify_text_format(tmp_path, capsys):
    path = write(tmp_path, "t.json", matrix_json([[1, 1], [0, 1]]))
    code, out, _ = run(capsys, ["classify", path, "--format", "text"])
    assert code == 0
    assert "two_skew: False" in out


def test_wall_command(tmp_path, capsys):
    path = write(tmp_path, "t.json", matrix_json([[1, 1], [0, 1]]))
    code, out, _ = run(capsys, ["wall", path])
    assert code == 0
    rep = json.loads(out)
    assert rep["theta_class"] == "nonsquare"
    assert rep["antitriangular"] is not None
    idpath = write(tmp_path, "id.json", matrix_json([[1, 0], [0, 1]]))
    code, out, _ = run(capsys, ["wall", idpath])
    rep = json.loads(out)
    assert rep["path_dimension"] == 0 and rep["antitriangular"] is None


def test_enumerate_small(tmp_path, capsys):
    out_path = str(tmp_path / "sp23.csv")
    code, _, err = run(capsys, ["enumerate", "--n", "1", "--q", "3", "--out", out_path])
    assert code == 0
    lines = open(out_path).read().strip().splitlines()
    assert lines[0].startswith("class_id,rep,size")
    assert len(lines) == 8  # header + 7 classes
    assert "order 24" in err


def test_enumerate_budget(tmp_path, capsys):
    code, _, _ = run(capsys, ["enumerate", "--n", "3", "--q", "3"])
    assert code == 5


def test_enumerate_budget_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SYMPINV_BUDGET", "10")
    code, _, _ = run(capsys, ["enumerate", "--n", "1", "--q", "3"])
    assert code == 5


def test_verify_suites(tmp_path, capsys):
    code, out, _ = run(capsys, ["verify", "--suite", "theorem4", "--n", "1", "--q", "3"])
    assert code == 0 and json.loads(out)["status"] == "pass"
    code, out, _ = run(capsys, ["verify", "--suite", "theorem4", "--q", "5"])
    assert code == 0
    rep = json.loads(out)
    assert rep["status"] == "skipped" and "notice" in rep
    code, _, _ = run(capsys, ["verify", "--suite", "nonsense"])
    assert code == 2


def test_verify_jobs_deterministic(tmp_path, capsys):
    _, out1, _ = run(capsys, ["verify", "--suite", "theorem2", "--n", "1", "--q", "3"])
    _, out2, _ = run(capsys, ["verify", "--suite", "theorem2", "--n", "1", "--q", "3", "--jobs", "2"])
    assert json.loads(out1) == json.loads(out2)
