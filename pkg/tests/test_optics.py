import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from topobell import optics
from topobell.linalg import is_unitary, unitarity_deviation

angles = st.floats(min_value=-30.0, max_value=30.0, allow_nan=False)


class TestBeamSplitter:
    def test_matrix(self):
        expected = np.array([[1, 1j], [1j, 1]]) / np.sqrt(2)
        assert_allclose(optics.beam_splitter(), expected, atol=0)

    def test_unitary_tightly(self):
        assert unitarity_deviation(optics.beam_splitter()) < 1e-15

    def test_single_quanton_split(self):
        out = optics.beam_splitter() @ np.array([1.0, 0.0])
        assert_allclose(out, [1 / np.sqrt(2), 1j / np.sqrt(2)], atol=1e-15)


class TestPhaseRetarder:
    def test_zero_is_identity(self):
        assert_allclose(optics.phase_retarder(0.0), np.eye(2), atol=0)

    def test_pi_flips_upper_arm(self):
        assert_allclose(optics.phase_retarder(np.pi), np.diag([-1.0, 1.0]), atol=1e-15)

    @given(a=angles, b=angles)
    @settings(max_examples=100, deadline=None)
    def test_composition_adds_phases(self, a, b):
        composed = optics.phase_retarder(a) @ optics.phase_retarder(b)
        assert np.max(np.abs(composed - optics.phase_retarder(a + b))) < 1e-12


class TestMachZehnder:
    def test_zero_phase_swaps_ports(self):
        assert_allclose(optics.mach_zehnder(0.0), [[0, 1], [1, 0]], atol=1e-15)

    def test_pi_detects_at_first_port(self):
        m = optics.mach_zehnder(np.pi)
        assert_allclose(m[0, 0], -1.0, atol=1e-15)
        probs = np.abs(m @ np.array([1.0, 0.0])) ** 2
        assert_allclose(probs, [1.0, 0.0], atol=1e-15)

    def test_quarter_wave_balances_detectors(self):
        probs = np.abs(optics.mach_zehnder(np.pi / 2) @ np.array([1.0, 0.0])) ** 2
        assert_allclose(probs, [0.5, 0.5], atol=1e-15)

    @given(theta=angles)
    @settings(max_examples=200, deadline=None)
    def test_matches_raw_splitter_product(self, theta):
        # raw product carries the retarder on the other arm: the compact
        # form appears at -theta once the global i*e^{i theta/2} is removed
        bs = optics.beam_splitter()
        raw = bs @ optics.phase_retarder(theta) @ bs
        stripped = raw / (1j * np.exp(0.5j * theta))
        assert np.max(np.abs(stripped - optics.mach_zehnder(-theta))) < 1e-12
        # and detection statistics match the printed orientation exactly
        assert np.max(np.abs(np.abs(raw) - np.abs(optics.mach_zehnder(theta)))) < 1e-12

    @given(theta=angles)
    @settings(max_examples=100, deadline=None)
    def test_unitary(self, theta):
        assert is_unitary(optics.mach_zehnder(theta), 1e-12)


class TestPathPhaseOperator:
    def test_zero_integrals_give_identity(self):
        assert_allclose(optics.path_phase_operator(0.0, 0.0, 1.0), np.eye(2), atol=0)

    def test_upper_arm_half_turn(self):
        op = optics.path_phase_operator(np.pi, 0.0, 1.0)
        assert_allclose(op, np.diag([-1.0, 1.0]), atol=1e-15)

    def test_unitary_for_random_inputs(self, rng):
        for _ in range(100):
            i_u, i_d, mu = rng.uniform(-5, 5, size=3)
            assert unitarity_deviation(optics.path_phase_operator(i_u, i_d, mu)) < 1e-15

    @given(i_u=angles, i_d=angles)
    @settings(max_examples=100, deadline=None)
    def test_diagonal_ratio_tracks_loop_sum(self, i_u, i_d):
        mu = 0.8
        op = optics.path_phase_operator(i_u, i_d, mu)
        assert abs(op[0, 0] / op[1, 1] - np.exp(1j * mu * (i_u + i_d))) < 1e-12


class TestSpinLoopPhase:
    def test_zero_loop_integral(self):
        assert optics.spin_loop_phase(1, 2.0, 0.0) == 1.0

    def test_quarter_turn_spin_up(self):
        assert_allclose(optics.spin_loop_phase(1, 1.0, np.pi / 2), -1j, atol=1e-15)

    @given(mu=angles, lam=angles)
    @settings(max_examples=100, deadline=None)
    def test_opposite_spins_cancel(self, mu, lam):
        product = optics.spin_loop_phase(1, mu, lam) * optics.spin_loop_phase(-1, mu, lam)
        assert abs(product - 1.0) < 1e-12

    @pytest.mark.parametrize("bad", [0, 2, -2, "up"])
    def test_rejects_non_spin_labels(self, bad):
        with pytest.raises(ValueError):
            optics.spin_loop_phase(bad, 1.0, 1.0)


class TestCustomBeamSplitter:
    def test_accepts_the_symmetric_splitter(self):
        accepted = optics.custom_beam_splitter(optics.beam_splitter())
        assert_allclose(accepted, optics.beam_splitter(), atol=0)

    def test_rejects_polarizing_candidate_at_zero(self):
        with pytest.raises(optics.NonUnitaryError) as excinfo:
            optics.custom_beam_splitter(optics.polarizing_splitter_candidate(0.0, 0.0))
        assert excinfo.value.deviation == pytest.approx(0.5, abs=1e-12)

    def test_rejects_zero_matrix(self):
        with pytest.raises(optics.NonUnitaryError) as excinfo:
            optics.custom_beam_splitter(np.zeros((2, 2)))
        assert excinfo.value.deviation == pytest.approx(1.0, abs=1e-15)

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            optics.custom_beam_splitter(np.eye(4))

    def test_polarizing_candidate_mixes_both_angles(self):
        m = optics.polarizing_splitter_candidate(np.pi / 3, np.pi / 5)
        assert_allclose(m[0, 0], -np.sin(np.pi / 6) / np.sqrt(2), atol=1e-15)
        assert_allclose(m[1, 1], np.cos(np.pi / 10) / np.sqrt(2), atol=1e-15)


class TestSpinEigenstates:
    def test_reference_direction(self):
        up, down = optics.spin_eigenstates(0.0)
        assert_allclose(up, np.array([-1.0, 1.0]) / np.sqrt(2), atol=1e-15)
        assert_allclose(down, np.array([1.0, 1.0]) / np.sqrt(2), atol=1e-15)

    def test_orthogonality(self):
        up, down = optics.spin_eigenstates(1.2345)
        assert abs(np.vdot(up, down)) < 1e-15

    @given(theta=angles)
    @settings(max_examples=100, deadline=None)
    def test_unit_norms(self, theta):
        up, down = optics.spin_eigenstates(theta)
        assert abs(np.linalg.norm(up) - 1.0) < 1e-12
        assert abs(np.linalg.norm(down) - 1.0) < 1e-12
