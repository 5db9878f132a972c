import json

import pytest

import nilbound.bounds as bounds
from nilbound.cli import main
from nilbound.families import make_heisenberg
from nilbound.liealg import algebra_from_json, algebra_to_json, representation_to_json


@pytest.fixture
def heis_files(tmp_path):
    alg, rep = make_heisenberg(1)
    alg_path = tmp_path / "heis.algebra.json"
    rep_path = tmp_path / "heis.representation.json"
    alg_path.write_text(json.dumps(algebra_to_json(alg)))
    rep_path.write_text(json.dumps(representation_to_json(rep)))
    return alg_path, rep_path


@pytest.fixture
def reset_fault_hook():
    yield
    bounds.CONSTRAINT_B_FAULT_OFFSET = 0


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestFamily:
    def test_emits_round_trippable_files(self, tmp_path, capsys):
        code, out, _ = run(capsys, "family", "nap", "--a", "2", "--p", "2", "-o", str(tmp_path))
        assert code == 0
        info = json.loads(out)
        assert (info["dim"], info["dimV"]) == (12, 6)
        reparsed = algebra_from_json(json.loads((tmp_path / "n_2_2.algebra.json").read_text()))
        from nilbound.families import make_nap

        assert reparsed == make_nap(2, 2)[0]

    def test_missing_parameter(self, capsys):
        code, _, err = run(capsys, "family", "nabc", "--a", "1")
        assert code == 1
        assert "needs" in err

    def test_abelian_has_empty_brackets(self, tmp_path, capsys):
        code, _, _ = run(capsys, "family", "abelian", "--n", "4", "-o", str(tmp_path))
        assert code == 0
        data = json.loads((tmp_path / "abelian_4.algebra.json").read_text())
        assert data["brackets"] == []


class TestSolve:
    def test_heisenberg_dims(self, capsys):
        code, out, _ = run(capsys, "solve", "--p", "2", "--p0", "2", "--dims", "3,1")
        assert code == 0
        report = json.loads(out)
        assert report["r0_min"] == 3
        assert report["witness"] == [1, 1, 1]

    def test_9_4(self, capsys):
        code, out, _ = run(capsys, "solve", "--p", "2", "--p0", "2", "--dims", "9,4")
        assert json.loads(out)["r0_min"] == 6 and code == 0

    def test_brute_flag_agrees(self, capsys):
        _, out1, _ = run(capsys, "solve", "--p", "1", "--p0", "1", "--dims", "4")
        _, out2, _ = run(capsys, "solve", "--p", "1", "--p0", "1", "--dims", "4", "--brute")
        a, b = json.loads(out1), json.loads(out2)
        assert a["r0_min"] == b["r0_min"] == 4
        assert a["witness"] == b["witness"]

    def test_malformed_dims(self, capsys):
        code, _, err = run(capsys, "solve", "--p", "2", "--p0", "2", "--dims", "3;1")
        assert code == 1
        assert "dims" in err

    def test_increasing_dims_rejected(self, capsys):
        code, _, _ = run(capsys, "solve", "--p", "2", "--p0", "2", "--dims", "1,3")
        assert code == 1


class TestBound:
    def test_heisenberg_file(self, heis_files, capsys):
        alg_path, _ = heis_files
        code, out, _ = run(capsys, "bound", str(alg_path))
        assert code == 0
        assert json.loads(out)["mu_nil_lower_bound"] == 3

    def test_non_nilpotent_rejected(self, tmp_path, capsys):
        data = {
            "name": "solvable",
            "dim": 2,
            "basis": ["x", "y"],
            "brackets": [{"i": 1, "j": 2, "terms": [[2, "1"]]}],
        }
        path = tmp_path / "solvable.algebra.json"
        path.write_text(json.dumps(data))
        code, _, err = run(capsys, "bound", str(path))
        assert code == 1
        assert "not nilpotent" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "bound", "no/such/file.json")
        assert code == 1
        assert "cannot read" in err

    def test_deterministic_output(self, heis_files, capsys):
        alg_path, _ = heis_files
        _, out1, _ = run(capsys, "bound", str(alg_path))
        _, out2, _ = run(capsys, "bound", str(alg_path))
        assert out1 == out2


class TestAnalyze:
    def test_heisenberg_summary(self, heis_files, capsys):
        alg_path, _ = heis_files
        code, out, _ = run(capsys, "analyze", str(alg_path))
        assert code == 0
        summary = json.loads(out)
        assert summary["nilpotent"] is True
        assert summary["series_dims"] == [3, 1]
        assert summary["center_dim"] == 1
        assert summary["admissible_p0"] == [2]


class TestDecompose:
    def test_heisenberg_seed_42(self, heis_files, capsys):
        _, rep_path = heis_files
        code, out, _ = run(capsys, "decompose", str(rep_path), "--seed", "42")
        assert code == 0
        report = json.loads(out)
        assert report["partition"] == [2, 1]
        assert report["profile"] == [1, 1, 1]
        assert report["verified"] is True

    def test_seed_determinism(self, heis_files, capsys):
        _, rep_path = heis_files
        _, out1, _ = run(capsys, "decompose", str(rep_path), "--seed", "7")
        _, out2, _ = run(capsys, "decompose", str(rep_path), "--seed", "7")
        assert out1 == out2

    def test_non_nilpotent_matrix_rejected(self, tmp_path, capsys):
        alg, rep = make_heisenberg(1)
        data = representation_to_json(rep)
        data["matrices"][0] = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
        path = tmp_path / "bad.representation.json"
        path.write_text(json.dumps(data))
        code, _, _ = run(capsys, "decompose", str(path))
        assert code == 1


class TestVerifyPaper:
    def test_quick_grid_passes(self, capsys):
        code, out, _ = run(capsys, "verify-paper", "--quick")
        assert code == 0
        assert "FAIL" not in out
        assert out.count("PASS") == 4

    def test_injected_fault_detected(self, capsys, reset_fault_hook):
        code, out, _ = run(capsys, "verify-paper", "--quick", "--inject-constraint-fault")
        assert code == 2
        assert "FAIL" in out
