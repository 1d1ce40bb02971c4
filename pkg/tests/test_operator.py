import numpy as np
import pytest
from numpy.testing import assert_allclose

from dickelab.core.operator import (
    DensityMatrix,
    Operator,
    StateVector,
    expectation,
    fidelity_with_pure,
)


def z_on(site: int, n: int) -> Operator:
    diag = [1 - 2 * int(format(b, f"0{n}b")[site - 1]) for b in range(2**n)]
    return Operator(n_qubits=n, entries=np.diag(diag))


class TestStateVector:
    def test_bitstring_index_convention(self):
        psi = StateVector.from_bitstring("0010")
        assert psi.amplitudes[2] == 1
        assert psi.amplitude("0010") == 1

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            StateVector(n_qubits=1, amplitudes=[1.0, 1.0])

    def test_from_amplitudes_normalize(self):
        psi = StateVector.from_amplitudes([1.0, 1.0], normalize=True)
        assert psi.n_qubits == 1
        assert_allclose(np.abs(psi.amplitudes), [2**-0.5, 2**-0.5])

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            StateVector(n_qubits=2, amplitudes=[1.0, 0.0])

    @pytest.mark.parametrize("n", [0, 9])
    def test_register_limits(self, n):
        with pytest.raises(ValueError):
            DensityMatrix.maximally_mixed(n)

    def test_amplitudes_read_only(self):
        psi = StateVector.from_bitstring("01")
        with pytest.raises(ValueError):
            psi.amplitudes[0] = 1.0


class TestDensityMatrix:
    def test_projector_is_pure(self, dicke4):
        rho = dicke4.projector()
        assert rho.purity == pytest.approx(1.0, abs=1e-12)

    def test_rejects_bad_trace(self):
        with pytest.raises(ValueError):
            DensityMatrix(n_qubits=1, entries=np.eye(2))

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            DensityMatrix(n_qubits=1, entries=[[0.5, 0.1], [0.0, 0.5]])

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            DensityMatrix(n_qubits=1, entries=[[1.5, 0.0], [0.0, -0.5]])

    def test_check_disabled(self):
        rho = DensityMatrix(n_qubits=1, entries=np.eye(2), check=False)
        assert rho.dim == 2


class TestOperator:
    def test_hermitian_flag_computed(self):
        assert Operator.identity(2).hermitian
        assert not Operator(n_qubits=1, entries=[[0, 1], [0, 0]]).hermitian

    def test_hermitian_flag_validated(self):
        with pytest.raises(ValueError):
            Operator(n_qubits=1, entries=[[0, 1], [0, 0]], hermitian=True)

    def test_arithmetic(self):
        a = Operator.identity(1)
        b = 2.0 * a - a
        assert b.allclose(a)
        assert (a @ a).allclose(a)
        assert (-a).trace() == -2

    def test_mismatched_registers(self):
        with pytest.raises(ValueError):
            Operator.identity(1) + Operator.identity(2)

    def test_from_matrix(self):
        assert Operator.from_matrix(np.eye(8)).n_qubits == 3


class TestExpectation:
    def test_z_sign_convention(self):
        assert expectation(StateVector.from_bitstring("0"), z_on(1, 1)) == 1.0
        assert expectation(StateVector.from_bitstring("1"), z_on(1, 1)) == -1.0

    def test_pure_and_mixed_agree(self, dicke4):
        obs = z_on(1, 4) @ z_on(2, 4)
        assert expectation(dicke4, obs) == pytest.approx(-1 / 3, abs=1e-12)
        assert expectation(dicke4.projector(), obs) == pytest.approx(-1 / 3, abs=1e-12)

    def test_linear_in_observable(self, rho_random):
        a, b = z_on(1, 4), z_on(3, 4)
        lhs = expectation(rho_random, 0.3 * a + b)
        rhs = 0.3 * expectation(rho_random, a) + expectation(rho_random, b)
        assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_rejects_non_hermitian(self, dicke4):
        with pytest.raises(ValueError):
            expectation(dicke4, Operator(n_qubits=4, entries=np.triu(np.ones((16, 16)))))

    def test_dimension_mismatch(self, dicke4):
        with pytest.raises(ValueError):
            expectation(dicke4, Operator.identity(2))


class TestFidelity:
    def test_pure_self(self, dicke4):
        assert fidelity_with_pure(dicke4.projector(), dicke4) == pytest.approx(1.0, abs=1e-12)

    def test_maximally_mixed(self, dicke4):
        rho = DensityMatrix.maximally_mixed(4)
        assert fidelity_with_pure(rho, dicke4) == pytest.approx(1 / 16, abs=1e-12)

    def test_orthogonal(self, dicke4):
        rho = StateVector.from_bitstring("0000").projector()
        assert fidelity_with_pure(rho, dicke4) == pytest.approx(0.0, abs=1e-12)
