from itertools import permutations, product
from math import pi

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dickelab.core.channel import apply_channel, channels_equal
from dickelab.core.operator import StateVector, expectation
from dickelab.noise.channel import (
    ChannelFrame,
    NoiseParams,
    NoiseSource,
    collective_channel,
    noisy_dicke_state,
    noisy_xi_state,
    path_dephasing_channel,
    polarization_channel,
    second_bs_channel,
)
from dickelab.state.circuit import dicke_transform
from dickelab.witness.structure import structure_factor
from dickelab.witness.witness import wbar_witness


class TestNoiseParams:
    @pytest.mark.parametrize("field", ["q1", "q2", "q3"])
    @pytest.mark.parametrize("value", [-0.01, 0.51, float("nan")])
    def test_range(self, field, value):
        with pytest.raises(ValueError):
            NoiseParams(**{field: value})

    @pytest.mark.parametrize("value", [None, "low", [0.1]])
    def test_non_numeric(self, value):
        with pytest.raises(ValueError, match="must be a number"):
            NoiseParams(q1=value)

    def test_bounds_inclusive(self):
        NoiseParams(q1=0.0, q2=0.5, q3=0.5)

    def test_constr_round_trip(self):
        p = NoiseParams(q1=0.05, q2=0.0175, q3=0.05)
        assert NoiseParams.from_constr(p.constr) == p

    def test_from_dict_ignores_extra_keys(self):
        p = NoiseParams.from_dict(q1=0.1, steps=3)
        assert p == NoiseParams(q1=0.1)


class TestChannels:
    @pytest.mark.parametrize("q2", [0.0, 0.1, 0.25, 0.5])
    def test_collective_is_conjugated_path_dephasing(self, q2):
        u = dicke_transform()
        assert channels_equal(path_dephasing_channel(q2).conjugated(u), collective_channel(q2))

    @pytest.mark.parametrize("q1", [0.0, 0.05, 0.5])
    def test_polarization_frames(self, q1):
        u = dicke_transform()
        xi_frame = polarization_channel(q1, ChannelFrame.XI)
        assert channels_equal(xi_frame.conjugated(u), polarization_channel(q1, ChannelFrame.DICKE))

    @pytest.mark.parametrize("q2, factor", [(0.0, 1.0), (0.0175, 0.931225), (0.5, 0.0)])
    def test_path_dephasing_singlet_coherence(self, q2, factor):
        amplitudes = np.zeros(16, dtype=complex)
        amplitudes[0b0010], amplitudes[0b1000] = 1 / np.sqrt(2), -1 / np.sqrt(2)
        rho = StateVector.from_amplitudes(amplitudes).projector()
        out = apply_channel(rho, path_dephasing_channel(q2))
        assert out.entries[0b0010, 0b1000] / rho.entries[0b0010, 0b1000] == pytest.approx(factor, abs=1e-12)

    def test_kraus_counts(self):
        assert len(collective_channel(0.1).kraus_ops) == 4
        assert len(polarization_channel(0.1).kraus_ops) == 2
        assert len(second_bs_channel(0.1).kraus_ops) == 4

    def test_invalid_probability(self):
        with pytest.raises(ValueError):
            collective_channel(0.6)

    def test_unknown_frame(self):
        with pytest.raises(ValueError):
            polarization_channel(0.1, "lab")


class TestNoisyStates:
    def test_ideal_limit(self, dicke4):
        rho = noisy_dicke_state(NoiseParams())
        assert_allclose(rho.entries, dicke4.projector().entries, atol=1e-15)

    def test_collective_szz(self):
        rho = noisy_dicke_state(NoiseParams(q2=0.1))
        assert expectation(rho, structure_factor("z", "z", 0.0)) == pytest.approx(-1.52, abs=1e-12)

    def test_xi_frame_matches_dicke_frame(self):
        q1, q2 = 0.07, 0.2
        u = dicke_transform().entries
        rotated = u @ noisy_xi_state(q1, q2).entries @ u.conj().T
        expected = noisy_dicke_state(NoiseParams(q1=q1, q2=q2))
        assert_allclose(rotated, expected.entries, atol=1e-12)

    def test_order_independent(self):
        params = NoiseParams(q1=0.1, q2=0.2, q3=0.3)
        reference = noisy_dicke_state(params).entries
        for order in permutations(NoiseSource):
            assert_allclose(noisy_dicke_state(params, order=order).entries, reference, atol=1e-14)

    def test_order_must_cover_sources(self):
        with pytest.raises(ValueError):
            noisy_dicke_state(NoiseParams(), order=("polarization", "collective"))

    def test_valid_density_matrices(self):
        for q1, q2, q3 in product([0.0, 0.25, 0.5], repeat=3):
            rho = noisy_dicke_state(NoiseParams(q1=q1, q2=q2, q3=q3), check=True)
            assert np.trace(rho.entries).real == pytest.approx(1.0, abs=1e-12)
            assert rho.eigenvalues[0] >= -1e-10

    @pytest.mark.parametrize("q1, q3", [(0.0, 0.0), (0.05, 0.05), (0.3, 0.1), (0.5, 0.5)])
    def test_wbar_nondecreasing_in_q2(self, q1, q3):
        w = wbar_witness()
        values = [
            expectation(noisy_dicke_state(NoiseParams(q1=q1, q2=q2, q3=q3)), w)
            for q2 in np.linspace(0.0, 0.5, 11)
        ]
        assert np.all(np.diff(values) >= -1e-12)

    def test_full_dephasing_kills_xx(self):
        rho = noisy_dicke_state(NoiseParams(q3=0.5))
        assert expectation(rho, structure_factor("x", "x", pi)) == pytest.approx(2 / 3, abs=1e-12)
