import json

import numpy as np
import pytest

from progchan import (
    dump_matrix,
    haar_unitary,
    obj_to_matrix,
    optimal_interaction,
    pauli,
    random_density,
)
from progchan.cli import main


@pytest.fixture
def files(tmp_path):
    rng = np.random.default_rng(0)
    paths = {}
    paths["v_opt"] = tmp_path / "v_opt.json"
    dump_matrix(optimal_interaction(1, 1), paths["v_opt"])
    paths["v_id"] = tmp_path / "v_id.json"
    dump_matrix(np.eye(4), paths["v_id"])
    paths["u_id"] = tmp_path / "u_id.json"
    dump_matrix(np.eye(2), paths["u_id"])
    paths["u_x"] = tmp_path / "u_x.json"
    dump_matrix(pauli(1), paths["u_x"])
    paths["sigma"] = tmp_path / "sigma.json"
    dump_matrix(random_density(rng), paths["sigma"])
    paths["v_haar"] = tmp_path / "v_haar.json"
    dump_matrix(haar_unitary(4, rng), paths["v_haar"])
    paths["swap"] = tmp_path / "swap.json"
    dump_matrix(
        np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex),
        paths["swap"],
    )
    paths["tmp"] = tmp_path
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestWorstCase:
    def test_optimal_device(self, files, capsys):
        code, out, _ = run(capsys, "worst-case", "--v", files["v_opt"])
        assert code == 0
        rep = json.loads(out)
        assert rep["fidelity"] == pytest.approx(0.25, abs=1e-12)
        assert rep["epsilon"] == pytest.approx(np.sqrt(3) / 2, abs=1e-12)
        assert rep["argmin_j"] in range(4)
        assert len(rep["t"]) == 4

    def test_out_file(self, files, capsys):
        out_path = files["tmp"] / "report.json"
        code, out, _ = run(capsys, "worst-case", "--v", files["v_opt"], "--out", out_path)
        assert code == 0 and out == ""
        assert json.loads(out_path.read_text())["fidelity"] == pytest.approx(0.25, abs=1e-12)


class TestFidelity:
    def test_identity(self, files, capsys):
        code, out, _ = run(capsys, "fidelity", "--u", files["u_id"], "--v", files["v_id"])
        assert code == 0
        assert json.loads(out)["fidelity"] == pytest.approx(1.0, abs=1e-12)

    def test_with_sigma(self, files, capsys):
        code, out, _ = run(
            capsys, "fidelity", "--u", files["u_x"], "--v", files["v_id"], "--sigma", files["sigma"]
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["program"] == "given"
        assert rep["fidelity"] == pytest.approx(0.0, abs=1e-12)


class TestProgram:
    def test_swap_outputs_program(self, files, capsys):
        code, out, _ = run(
            capsys,
            "program", "--v", files["swap"], "--sigma", files["sigma"], "--rho", files["u_id"],
        )
        # rho = I2 is not a density matrix: parse succeeds, contract fails
        assert code == 2

    def test_swap_with_valid_rho(self, files, capsys):
        rho_path = files["tmp"] / "rho.json"
        dump_matrix(np.diag([0.25, 0.75]), rho_path)
        code, out, _ = run(
            capsys, "program", "--v", files["swap"], "--sigma", files["sigma"], "--rho", rho_path
        )
        assert code == 0
        rep = json.loads(out)
        sigma = obj_to_matrix(json.loads(files["sigma"].read_text()))
        np.testing.assert_allclose(obj_to_matrix(rep["output"]), sigma, atol=1e-12)
        assert len(rep["kraus"]) >= 1


class TestOptimalV:
    def test_emit_circuit(self, files, capsys):
        code, out, _ = run(capsys, "optimal-v", "--sx", "1", "--sz", "-1", "--emit-circuit")
        assert code == 0
        rep = json.loads(out)
        assert rep["fidelity"] == pytest.approx(0.25, abs=1e-12)
        assert rep["circuit"][0] == "CNOT 0 1"
        assert len(rep["circuit"]) == 4


class TestDecompose:
    def test_haar(self, files, capsys):
        code, out, _ = run(capsys, "decompose", "--v", files["v_haar"])
        assert code == 0
        rep = json.loads(out)
        assert rep["residual"] <= 1e-9
        assert len(rep["alpha"]) == 3
        assert np.pi / 4 + 1e-12 >= rep["alpha"][0] >= rep["alpha"][1] >= abs(rep["alpha"][2])


class TestCircuitVerb:
    def test_prints_gates(self, files, capsys):
        code, out, _ = run(capsys, "circuit", "--alpha", "0.3,0.2,0.1")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "CNOT 0 1"
        assert any(line.startswith("XROT") for line in lines)

    def test_bad_alpha(self, files, capsys):
        code, _, err = run(capsys, "circuit", "--alpha", "1,2")
        assert code == 2
        assert "alpha" in err


class TestVerify:
    def test_all_passes(self, files, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "all", "--seed", "0")
        assert code == 0
        assert "holds-with-corrected-sign" in out
        assert "fail" not in out.replace("holds-with-corrected-sign", "")

    def test_single_suite(self, files, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "hadamard", "--seed", "1")
        assert code == 0
        assert "hadamard/sum-rule" in out


class TestOracleVerb:
    def test_scan_report(self, files, capsys):
        code, out, _ = run(
            capsys,
            "oracle", "--v", files["v_opt"], "--resolution", "2000", "--refine", "20", "--seed", "3",
            "--sigma-samples", "200",
        )
        assert code == 0
        rep = json.loads(out)
        assert 0.25 - 1e-9 <= rep["f_min"] <= 0.25 + 2e-3
        assert rep["evaluations"] >= 2000
        assert rep["seed"] == 3
        assert rep["sigma_dominance_max"] <= rep["f_min"] + 1e-10

    def test_deterministic_output(self, files, capsys):
        args = ("oracle", "--v", files["v_id"], "--resolution", "500", "--refine", "5", "--seed", "1")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2

    def test_env_seed(self, files, capsys, monkeypatch):
        monkeypatch.setenv("PROGCHAN_SEED", "17")
        code, out, _ = run(capsys, "oracle", "--v", files["v_id"], "--resolution", "500", "--refine", "0")
        assert code == 0
        assert json.loads(out)["seed"] == 17


class TestScanVerb:
    def test_grid_csv(self, files, capsys):
        out_path = files["tmp"] / "grid.csv"
        code, _, _ = run(capsys, "scan", "--alpha-grid", "3", "--out", out_path)
        assert code == 0
        lines = out_path.read_text().strip().splitlines()
        assert lines[0] == "a1,a2,a3,t0_sq,t1_sq,t2_sq,t3_sq,fidelity"
        assert len(lines) > 3
        last = lines[-1].split(",")
        assert len(last) == 8
        # final row is the chamber corner alpha = (pi/4, pi/4, pi/4): F = 1/4
        assert float(last[-1]) == pytest.approx(0.25, abs=1e-12)


class TestErrors:
    def test_missing_file(self, files, capsys):
        code, _, err = run(capsys, "worst-case", "--v", files["tmp"] / "nope.json")
        assert code == 2
        assert "error" in err

    def test_non_unitary_input(self, files, capsys):
        bad = files["tmp"] / "bad.json"
        dump_matrix(np.ones((4, 4)), bad)
        code, _, err = run(capsys, "worst-case", "--v", bad)
        assert code == 2

    def test_non_square_json(self, files, capsys):
        bad = files["tmp"] / "badshape.json"
        bad.write_text(json.dumps({"dim": 2, "rows": [[[1, 0]]]}))
        code, _, _ = run(capsys, "worst-case", "--v", bad)
        assert code == 2

    def test_unknown_flag(self, files, capsys):
        code, _, _ = run(capsys, "worst-case", "--v", files["v_id"], "--bogus")
        assert code == 2

    def test_unknown_verb(self, files, capsys):
        code, _, _ = run(capsys, "frobnicate")
        assert code == 2
