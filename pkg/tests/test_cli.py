import json
from importlib import resources

import pytest

from wfano.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def tower_path(name):
    return str(resources.files("wfano").joinpath(f"data/towers/{name}.tower"))


def test_verify_single_family(capsys):
    code, out, err = run(capsys, "verify", "--gimel", "13")
    assert code == 0
    assert "neg_k_cube tower [1/3(1,1,2),1/2(1,1,1)] = -3/10" in out
    line = next(l for l in out.splitlines() if "neg_k_cube tower [1/3" in l)
    assert "PASS" in line
    assert all((", PASS, " in l or ", FAIL, " in l) for l in out.splitlines())


def test_verify_unknown_family(capsys):
    code, out, err = run(capsys, "verify", "--gimel", "999")
    assert code == 2
    assert "999" in err


def test_verify_failure_exit_code(capsys, tmp_path, monkeypatch):
    bad = tmp_path / "bad.txt"
    # a dataset whose recorded cube is wrong: checks must FAIL with exit 1
    bad.write_text(
        "family 1\nweights 1 1 1 1\ndegree 4\nkcube 5\n"
        "invariant F_0\nell infinite\npencils infinite\n"
    )
    monkeypatch.setenv("WFANO_DATA", str(bad))
    code, out, err = run(capsys, "verify")
    assert code == 1
    assert any(l.startswith("1, kcube, FAIL, 5, 4") for l in out.splitlines())


def test_eval_tower_chain(capsys):
    code, out, err = run(capsys, "eval-tower", tower_path("family25-chain"))
    assert code == 0
    assert "neg_k_cube = -1/14" in out


def test_eval_tower_gram(capsys):
    code, out, err = run(capsys, "eval-tower", tower_path("family32-gram"))
    assert code == 0
    assert "-7/24 3/8" in out
    assert "3/8 -5/8" in out
    assert "verdict: negative-definite" in out
    assert "triple(D,D,D) = -2/3" in out


def test_eval_tower_malformed(capsys, tmp_path):
    f = tmp_path / "broken.tower"
    f.write_text("weights 1 2 3 5\ncenter 5 x\n")
    code, out, err = run(capsys, "eval-tower", str(f))
    assert code == 2
    assert "2:10" in err


def test_eval_tower_missing_file(capsys, tmp_path):
    code, out, err = run(capsys, "eval-tower", str(tmp_path / "nope.tower"))
    assert code == 2


def test_show(capsys):
    code, out, err = run(capsys, "show", "13")
    assert code == 0
    assert "kcube 11/30" in out
    assert "pencils 1" in out


def test_show_pencil_listing(capsys):
    code, out, err = run(capsys, "show", "18")
    assert code == 0
    assert "pencils 7" in out
    listed = [l for l in out.splitlines() if l.startswith("  |-2K|")]
    assert len(listed) == 7


def test_basket_output(capsys):
    code, out, err = run(capsys, "basket", "91")
    assert code == 0
    assert "1 x 1/13(1,4,9) at P3" in out


def test_basket_smooth(capsys):
    code, out, err = run(capsys, "basket", "1")
    assert out.strip() == "smooth"


def test_enumerate_bound(capsys):
    code, out, err = run(capsys, "enumerate", "--bound", "2")
    assert code == 0
    assert out.splitlines() == [
        "1 1 1 1  degree=4  kcube=4",
        "1 1 1 2  degree=5  kcube=5/2",
        "1 1 2 2  degree=6  kcube=3/2",
    ]


def test_export_json_roundtrip(capsys):
    code, out, err = run(capsys, "export", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["families"]) == 95
    g7 = data["families"][6]
    assert g7["gimel"] == 7 and g7["kcube"] == "2/3"


def test_export_csv_anchors(capsys):
    code, out, err = run(capsys, "export", "--format", "csv")
    rows = out.splitlines()
    assert rows[0].startswith("gimel,a1,a2,a3,a4,")
    (g7,) = [r for r in rows if r.startswith("7,")]
    assert "2/3" in g7
    (g18,) = [r for r in rows if r.startswith("18,")]
    assert ",7," in g18


def test_export_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "export", "--format", "json", "--out", str(a))[0] == 0
    assert run(capsys, "export", "--format", "json", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    c, d = tmp_path / "c.csv", tmp_path / "d.csv"
    run(capsys, "export", "--format", "csv", "--out", str(c))
    run(capsys, "export", "--format", "csv", "--out", str(d))
    assert c.read_bytes() == d.read_bytes()
