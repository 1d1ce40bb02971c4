from itertools import combinations
from math import pi

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dickelab.core.operator import Operator, StateVector
from dickelab.core.pauli import PauliString, pauli_string_to_operator
from dickelab.separability.oracle import (
    OracleConfig,
    ProductStateParams,
    axis_product_minimum,
    fold_angles,
    grid_scan_minimum,
    minimize_witness,
    product_state,
    verify_witness,
)
from dickelab.witness.witness import generalized_witness, structural_witness, wbar_witness

QUICK = dict(restarts=4, samples=256, seed=3)


@pytest.fixture(scope="module")
def wbar_report():
    return minimize_witness(wbar_witness(), restarts=32, samples=4096, seed=0)


class TestProductStates:
    def test_bloch_convention(self):
        params = ProductStateParams(thetas=(0.0, pi), phis=(0.0, 0.0))
        assert_allclose(np.abs(product_state(params).amplitudes), [0, 1, 0, 0], atol=1e-15)

    def test_normalized(self, rng):
        params = ProductStateParams.random(4, rng)
        psi = product_state(params)
        assert isinstance(psi, StateVector)
        assert np.linalg.norm(psi.amplitudes) == pytest.approx(1.0, abs=1e-12)

    def test_schmidt_rank_one_on_every_cut(self, rng):
        psi = product_state(ProductStateParams.random(4, rng)).amplitudes.reshape((2,) * 4)
        for size in (1, 2):
            for part in combinations(range(4), size):
                rest = tuple(q for q in range(4) if q not in part)
                matrix = psi.transpose(part + rest).reshape(2**size, -1)
                singular = np.linalg.svd(matrix, compute_uv=False)
                assert singular[0] == pytest.approx(1.0, abs=1e-12)
                assert_allclose(singular[1:], 0.0, atol=1e-12)

    @pytest.mark.parametrize("theta, phi", [(-0.1, 0.0), (3.2, 0.0), (0.5, 2 * pi)])
    def test_range(self, theta, phi):
        with pytest.raises(ValueError):
            ProductStateParams(thetas=(theta,), phis=(phi,))

    def test_fold_preserves_state(self):
        theta, phi = 4.0, -1.0
        folded = ProductStateParams(thetas=fold_angles(theta, phi)[:1], phis=fold_angles(theta, phi)[1:])
        raw = np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])
        overlap = np.vdot(raw, product_state(folded).amplitudes)
        assert abs(overlap) == pytest.approx(1.0, abs=1e-12)


class TestMinimizeWitness:
    def test_wbar_passes(self, wbar_report):
        assert wbar_report.passed
        assert wbar_report.min_value >= -1e-6

    def test_beats_coarse_grid(self, wbar_report):
        grid_value, grid_argmin = grid_scan_minimum(wbar_witness(), points=5)
        assert grid_value > 0
        assert grid_argmin.n_qubits == 4
        assert wbar_report.min_value <= grid_value + 1e-6

    def test_structural_witness_passes(self):
        assert verify_witness(structural_witness(pi), OracleConfig(restarts=32, samples=4096, seed=0))

    def test_negative_identity_fails(self):
        report = minimize_witness(-Operator.identity(4), **QUICK)
        assert not report.passed
        assert report.min_value == pytest.approx(-1.0, abs=1e-12)

    def test_finds_product_optimum(self):
        zzzz = pauli_string_to_operator(PauliString(labels="ZZZZ"))
        report = minimize_witness(zzzz, **QUICK)
        assert report.min_value == pytest.approx(-1.0, abs=1e-8)

    def test_rejects_operator_negative_on_product_state(self):
        proj = StateVector.from_bitstring("0000").projector().entries
        w = Operator(n_qubits=4, entries=np.eye(16) - 2 * proj)
        assert not verify_witness(w, OracleConfig(**QUICK))

    def test_argmin_attains_value(self, wbar_report):
        psi = product_state(wbar_report.argmin)
        value = np.vdot(psi.amplitudes, wbar_witness().entries @ psi.amplitudes).real
        assert value == pytest.approx(wbar_report.min_value, abs=1e-12)

    def test_reproducible(self):
        w = structural_witness(0.4, (0.3, -0.7, 1.0))
        a = minimize_witness(w, **QUICK)
        b = minimize_witness(w, **QUICK)
        assert a.min_value == b.min_value
        assert a.argmin == b.argmin

    def test_workers_match_serial(self):
        w = structural_witness(1.1, (1.0, 0.5, -0.5))
        serial = minimize_witness(w, **QUICK)
        threaded = minimize_witness(w, **QUICK, workers=3)
        assert serial.min_value == threaded.min_value
        assert serial.argmin == threaded.argmin

    def test_rejects_non_hermitian(self):
        w = Operator(n_qubits=4, entries=np.triu(np.ones((16, 16))))
        with pytest.raises(ValueError):
            minimize_witness(w, **QUICK)

    @pytest.mark.parametrize(
        "settings", [dict(restarts=0), dict(samples=2, restarts=4), dict(tol=0.0)]
    )
    def test_invalid_settings(self, settings):
        with pytest.raises(ValueError):
            OracleConfig(**settings)

    def test_config_round_trip(self):
        config = OracleConfig(restarts=8, samples=100, seed=5, tol=1e-7)
        assert OracleConfig.from_constr(config.constr) == config


@pytest.mark.slow
@pytest.mark.parametrize("index", range(5))
def test_random_generalized_witnesses_pass(index):
    rng = np.random.default_rng(1000 + index)
    c = tuple(rng.uniform(-1.0, 1.0, 3))
    kx, ky, kz = rng.uniform(0.0, 2 * pi, 3)
    w = generalized_witness(kx, ky, kz, c)
    assert verify_witness(w, OracleConfig(restarts=32, samples=4096, seed=index))


class TestExhaustiveScans:
    def test_axis_states_wbar(self):
        value = axis_product_minimum(wbar_witness())
        assert value >= -1e-12
        assert value == pytest.approx(0.0, abs=1e-12)

    def test_grid_small_register(self):
        w = pauli_string_to_operator(PauliString(labels="XZ"))
        value, argmin = grid_scan_minimum(w, points=5)
        assert value == pytest.approx(-1.0, abs=1e-12)
        assert argmin.n_qubits == 2

    def test_grid_points(self):
        with pytest.raises(ValueError):
            grid_scan_minimum(wbar_witness(), points=1)
