import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dickelab.core.operator import DensityMatrix
from dickelab.data.io import read_density_matrix, report, write_density_matrix
from dickelab.data.library import get_state, get_witness
from dickelab.noise.channel import NoiseParams


def write_entries(path, n_qubits, matrix):
    pairs = [[float(z.real), float(z.imag)] for z in np.asarray(matrix).reshape(-1)]
    path.write_text(json.dumps({"n_qubits": n_qubits, "entries": pairs}))


class TestDensityMatrixFiles:
    def test_round_trip(self, tmp_path, rho_random):
        path = tmp_path / "rho.json"
        write_density_matrix(rho_random, path)
        loaded = read_density_matrix(path)
        assert_allclose(loaded.entries, rho_random.entries, atol=1e-15)

    def test_tolerates_small_errors(self, tmp_path):
        matrix = np.eye(2) / 2
        matrix[0, 1] = 1e-10
        path = tmp_path / "rho.json"
        write_entries(path, 1, matrix * (1 + 1e-9))
        loaded = read_density_matrix(path)
        assert loaded.entries[0, 1] == loaded.entries[1, 0]
        assert np.trace(loaded.entries).real == pytest.approx(1.0, abs=1e-15)

    def test_rejects_bad_trace(self, tmp_path):
        path = tmp_path / "rho.json"
        write_entries(path, 1, np.eye(2))
        with pytest.raises(ValueError):
            read_density_matrix(path)

    def test_rejects_non_hermitian(self, tmp_path):
        path = tmp_path / "rho.json"
        write_entries(path, 1, [[0.5, 0.2], [0.0, 0.5]])
        with pytest.raises(ValueError):
            read_density_matrix(path)

    def test_rejects_wrong_size(self, tmp_path):
        path = tmp_path / "rho.json"
        write_entries(path, 2, np.eye(2) / 2)
        with pytest.raises(ValueError):
            read_density_matrix(path)

    @pytest.mark.parametrize("n_qubits", [2.7, 2.0, "2", True])
    def test_rejects_non_integer_qubit_count(self, tmp_path, n_qubits):
        path = tmp_path / "rho.json"
        write_entries(path, n_qubits, np.eye(4) / 4)
        with pytest.raises(ValueError, match="n_qubits"):
            read_density_matrix(path)

    def test_rejects_missing_keys(self, tmp_path):
        path = tmp_path / "rho.json"
        path.write_text(json.dumps({"entries": []}))
        with pytest.raises(ValueError):
            read_density_matrix(path)


class TestLibrary:
    def test_builtin_states(self, dicke4):
        assert_allclose(get_state("dicke4").entries, dicke4.projector().entries)
        assert get_state("maximally-mixed").purity == pytest.approx(1 / 16)

    def test_noisy_state_uses_params(self):
        rho = get_state("dicke4-noisy", NoiseParams(q2=0.5))
        assert rho.purity < 1

    def test_state_file(self, tmp_path):
        path = tmp_path / "rho.json"
        write_density_matrix(DensityMatrix.maximally_mixed(4), path)
        assert get_state(str(path)).purity == pytest.approx(1 / 16)

    def test_unknown_state(self):
        with pytest.raises(ValueError):
            get_state("ghz4")

    def test_unknown_witness(self):
        with pytest.raises(ValueError):
            get_witness("w-zero")


class TestReport:
    def test_dict_report(self):
        values = report(NoiseParams(q1=0.123456), report_type="dict", sig_figs=3)
        assert values["q1"] == 0.123

    def test_print_report(self, capsys):
        NoiseParams(q2=0.25).report()
        out = capsys.readouterr().out
        assert "NoiseParams Attributes:" in out
        assert "q2 = 0.25" in out
        assert "constr" not in out
