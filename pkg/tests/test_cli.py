from __future__ import annotations

import json

from nilhecke.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_key_identity_a2(capsys):
    code, out, _ = run(capsys, "key-identity", "--preset", "A2")
    assert code == 0
    report = json.loads(out)
    assert report["ok"] is True
    assert report["pairs"][0]["delta"] == "a1^2*a2 + a1*a2^2"
    assert report["pairs"][0]["residual"] == []


def test_certify_then_check(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, _, _ = run(capsys, "certify", "--preset", "I2_5", "--out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "check-cert", str(path))
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_corrupted_certificate_exit_one(capsys, tmp_path):
    path = tmp_path / "c.json"
    run(capsys, "certify", "--preset", "A2", "--out", str(path))
    data = json.loads(path.read_text())
    data["terms"][0]["q"] = ["12345"]
    bad = tmp_path / "corrupted.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "check-cert", str(bad))
    assert code == 1
    report = json.loads(out)
    assert report["ok"] is False
    assert report["residual"]


def test_certify_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "certify", "--preset", "B2", "--out", str(a))
    run(capsys, "certify", "--preset", "B2", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_oracle_verbs(capsys):
    code, out, _ = run(capsys, "oracle", "--preset", "A1xA1")
    assert code == 0
    assert json.loads(out)["membership"]["found"] is True
    code, out, _ = run(capsys, "oracle", "--preset", "A1xA1", "--target", "letter")
    assert code == 1
    assert json.loads(out)["disproof"]["provably_absent"] is True


def test_oracle_expression_target(capsys):
    code, out, _ = run(capsys, "oracle", "--preset", "A1xA1", "--expr", "(* G1 G2 G1)",
                       "--word-cap", "3", "--degree-cap", "3")
    assert code == 0


def test_demo_descent(capsys):
    code, out, _ = run(capsys, "demo-descent")
    assert code == 0
    report = json.loads(out)
    by_name = {m["name"]: m for m in report["modules"]}
    assert by_name["a1_sign"]["descent"]["1"]["remainder"] == "2"
    assert by_name["a2_twisted"]["descends_everywhere"] is True


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "key-identity", "--preset", "Z9")[0] == 2
    assert run(capsys, "check-cert", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "certify", "--preset", "A2", "--pair", "1,1")[0] == 2
    assert run(capsys, "certify", "--preset", "A2", "--pair", "x")[0] == 2
    assert run(capsys, "oracle", "--preset", "A2", "--word-cap", "0")[0] == 2
    assert run(capsys, "oracle", "--preset", "A2", "--expr", "(* G1")[0] == 2
    broken = tmp_path / "g.json"
    broken.write_text("{not json")
    assert run(capsys, "key-identity", "--group", str(broken))[0] == 2
    bad_cartan = tmp_path / "bad.json"
    bad_cartan.write_text(json.dumps({"coxeter_matrix": [[1, 4], [4, 1]], "cartan": [[2, -1], [-3, 2]]}))
    code, _, err = run(capsys, "key-identity", "--group", str(bad_cartan))
    assert code == 2
    assert "error" in err


def test_group_file(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"coxeter_matrix": [[1, 4], [4, 1]], "cartan": [[2, -1], [-2, 2]]}))
    code, out, _ = run(capsys, "key-identity", "--group", str(path), "--pair", "2,1")
    assert code == 0
    assert json.loads(out)["pairs"][0]["pair"] == [2, 1]
