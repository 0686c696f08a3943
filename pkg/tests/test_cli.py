import json

import numpy as np
import pytest

from opradius.cli import main
from opradius.matcore import Rng, random_ginibre, save_matrix


@pytest.fixture
def nilpotent(tmp_path):
    p = tmp_path / "nilpotent.json"
    save_matrix(np.array([[0, 1], [0, 0]]), p)
    return str(p)


def test_radius(nilpotent, capsys):
    assert main(["radius", "--input", nilpotent, "--eps", "1e-10"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["lo"] <= 0.5 <= out["hi"] and out["hi"] - out["lo"] <= 1e-10


def test_norm(nilpotent, capsys):
    assert main(["norm", "--input", nilpotent]) == 0
    assert json.loads(capsys.readouterr().out)["norm"] == pytest.approx(1.0)


def test_wmax(nilpotent, capsys):
    assert main(["wmax", "--input", nilpotent, "--block", "1", "--dim", "2", "--budget", "5"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["lo"] == pytest.approx(1.0) and out["hi"] == pytest.approx(1.0)
    assert main(["wmax", "--input", nilpotent, "--block", "2", "--dim", "2"]) == 1


def test_check(tmp_path, nilpotent, capsys):
    assert main(["check", "--id", "C1", "--inputs", nilpotent]) == 0
    results = json.loads(capsys.readouterr().out)
    assert [r["index"] for r in results] == [0, 1]
    alpha = tmp_path / "a.json"
    save_matrix(np.eye(1), alpha)
    assert main(["check", "--id", "C7", "--inputs", nilpotent, nilpotent, str(alpha),
                 str(alpha), "--sign", "-1"]) == 0


def test_check_wmax_level(tmp_path, capsys):
    p = tmp_path / "x.json"
    save_matrix(random_ginibre(4, Rng(0)), p)
    assert main(["check", "--id", "C14", "--inputs", str(p), str(p), "--block", "2",
                 "--budget", "5"]) == 0
    assert all(r["mode"] == "consistency" for r in json.loads(capsys.readouterr().out))


def test_unknown_check(nilpotent, capsys):
    assert main(["check", "--id", "C99", "--inputs", nilpotent]) == 1
    assert "C99" in capsys.readouterr().err


def test_wrong_arity(nilpotent, capsys):
    assert main(["check", "--id", "C3", "--inputs", nilpotent]) == 1
    assert "takes 2" in capsys.readouterr().err


def test_malformed_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["radius", "--input", str(p)]) == 1
    assert capsys.readouterr().err.startswith("opradius: error")


def test_dimension_mismatch(tmp_path, nilpotent, capsys):
    p = tmp_path / "big.json"
    save_matrix(np.eye(3), p)
    assert main(["check", "--id", "C3", "--inputs", nilpotent, str(p)]) == 1


def test_usage_errors(capsys):
    assert main([]) == 1
    assert main(["verify", "--trials", "abc"]) == 1
    assert main(["verify", "--dim", "9"]) == 1


def test_verify_identity_suite(tmp_path, capsys):
    out, csv_path = tmp_path / "r.json", tmp_path / "m.csv"
    code = main(["verify", "--suite", "C8", "--trials", "100", "--seed", "1", "--dim", "2",
                 "--block", "1", "--out", str(out), "--csv", str(csv_path)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["checks"]["C8"]["violations"] == 0
    assert len(csv_path.read_text().splitlines()) == 1 + 100 * 5


def test_verify_exit_two_on_violation(monkeypatch, tmp_path, capsys):
    from opradius import inequalities

    def always_violated(lhs, rhs, relation, mode="certified", **kw):
        return -1.0, "violated"
    monkeypatch.setattr(inequalities, "judge", always_violated)
    assert main(["verify", "--suite", "C1", "--trials", "1", "--out", str(tmp_path / "r.json")]) == 2
    report = json.loads((tmp_path / "r.json").read_text())
    assert len(report["violations"]) == 2
    assert "x" in report["violations"][0]["inputs"]


def test_eigen_backend_flag(nilpotent, capsys):
    from opradius import eigen
    old = eigen.get_backend()
    try:
        assert main(["--eigen-backend", "jacobi", "radius", "--input", nilpotent]) == 0
        assert eigen.get_backend() == "jacobi"
    finally:
        eigen.set_backend(old)
