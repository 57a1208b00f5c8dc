import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_state
from gaussbc import tolerances
from gaussbc.errors import DimensionError, PhysicalityError
from gaussbc.state import (
    GaussianState,
    apply_unitary,
    from_thermal_form,
    moment_residual,
    partial_trace,
    sqrt_state,
    tensor,
    thermal_form,
    validate,
)
from gaussbc.symplectic import GaussianUnitary, random_covariance, random_symplectic
from gaussbc.purification import tmsv


def wigner(state, xi):
    d = xi - state.mu
    g = state.gamma
    norm = (2 * np.pi) ** state.n * np.sqrt(np.linalg.det(g))
    return np.exp(-0.5 * d @ np.linalg.solve(g, d)) / norm


class TestValidate:
    def test_vacuum(self):
        diag = validate(GaussianState.vacuum(2))
        assert diag.valid and diag.pure
        assert diag.purity == pytest.approx(1.0)
        np.testing.assert_allclose(diag.symplectic_spectrum, [1.0, 1.0])

    def test_sub_vacuum_flagged(self):
        diag = validate(0.5 * np.eye(2))
        assert not diag.valid
        assert diag.min_eigenvalue == pytest.approx(-0.5)
        assert "Heisenberg" in diag.problems[0]

    def test_asymmetric_flagged(self):
        diag = validate(np.array([[2.0, 0.1], [0.0, 2.0]]))
        assert not diag.valid
        assert any("symmetric" in p for p in diag.problems)

    def test_bad_shape(self):
        diag = validate(np.eye(3))
        assert not diag.valid and diag.problems

    def test_non_finite(self):
        g = np.eye(2)
        g[0, 0] = np.nan
        assert not validate(g).valid

    def test_mixed_is_not_pure(self):
        diag = validate(3 * np.eye(2))
        assert diag.valid and not diag.pure
        assert diag.purity == pytest.approx(1 / 3)

    def test_random_states_valid(self):
        for seed in range(1000):
            g = random_covariance(1 + seed % 4, squeeze_bound=1.5, seed=seed)
            assert validate(g).valid


class TestGaussianState:
    def test_coherent_mean(self):
        s = GaussianState.coherent(1.5 - 0.5j)
        np.testing.assert_array_equal(s.mu, [3.0, -1.0])
        np.testing.assert_array_equal(s.gamma, np.eye(2))

    def test_thermal(self):
        s = GaussianState.thermal([3.0, 1.0])
        np.testing.assert_allclose(s.symplectic_spectrum(), [3.0, 1.0])
        assert s.purity() == pytest.approx(1 / 3)
        assert not s.is_pure()

    def test_unphysical_rejected(self):
        with pytest.raises(PhysicalityError):
            GaussianState(None, np.diag([2.0, 0.4]))

    def test_asymmetric_rejected(self):
        with pytest.raises(DimensionError):
            GaussianState(None, np.array([[2.0, 0.5], [0.0, 2.0]]))

    def test_mean_shape(self):
        with pytest.raises(DimensionError):
            GaussianState([0.0], np.eye(2))

    def test_heisenberg_slack_is_configurable(self):
        g = np.diag([1 - 1e-6, 1.0])
        with pytest.raises(PhysicalityError):
            GaussianState(None, g)
        with tolerances.using(eig=1e-5):
            GaussianState(None, g)

    def test_frozen(self):
        s = GaussianState.vacuum()
        with pytest.raises(ValueError):
            s.gamma[0, 0] = 2.0


class TestApplyUnitary:
    def test_displaced_vacuum_is_coherent(self):
        s = apply_unitary(GaussianState.vacuum(), GaussianUnitary.displacement([3.0, -1.0]))
        assert moment_residual(s, GaussianState.coherent(1.5 - 0.5j)) == 0.0

    def test_round_trip(self):
        s = random_state(3, 1)
        U = GaussianUnitary(random_symplectic(3, 1.0, seed=2), np.arange(6.0))
        assert moment_residual(apply_unitary(apply_unitary(s, U), U.inverse()), s) < 1e-12

    def test_subset_of_modes(self):
        a, b = random_state(1, 1), random_state(2, 2)
        U = GaussianUnitary(random_symplectic(2, 1.0, seed=3), [1.0, 2.0, 3.0, 4.0])
        lhs = apply_unitary(tensor(a, b), U, modes=[1, 2])
        rhs = tensor(a, apply_unitary(b, U))
        assert moment_residual(lhs, rhs) < 1e-14

    def test_mode_count_mismatch(self):
        with pytest.raises(DimensionError):
            apply_unitary(GaussianState.vacuum(2), GaussianUnitary.identity(1))

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_wigner_pullback(self, seed):
        # W'(xi) = W(S^-1 (xi - d)) for any Gaussian unitary
        rng = np.random.default_rng(seed)
        s = random_state(2, rng, temp_bound=4)
        U = GaussianUnitary(random_symplectic(2, 0.8, seed=rng), rng.normal(size=4))
        t = apply_unitary(s, U)
        for xi in rng.normal(size=(3, 4)):
            pulled = np.linalg.solve(U.S, xi - U.d)
            assert wigner(t, xi) == pytest.approx(wigner(s, pulled), rel=1e-9, abs=1e-300)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_spectrum_preserved(self, seed):
        rng = np.random.default_rng(seed)
        s = random_state(3, rng)
        U = GaussianUnitary(random_symplectic(3, 1.0, seed=rng), None)
        np.testing.assert_allclose(apply_unitary(s, U).symplectic_spectrum(),
                                   s.symplectic_spectrum(), rtol=1e-9)


class TestTensorAndTrace:
    def test_vacua(self):
        s = tensor(GaussianState.vacuum(), GaussianState.vacuum())
        np.testing.assert_array_equal(s.gamma, np.eye(4))

    def test_trace_inverts_tensor(self):
        a, b = random_state(2, 5), random_state(1, 6)
        ab = tensor(a, b)
        assert moment_residual(partial_trace(ab, [0, 1]), a) == 0.0
        assert moment_residual(partial_trace(ab, [2]), b) == 0.0

    def test_purity_multiplicative(self):
        a, b = random_state(2, 5), random_state(1, 6)
        assert tensor(a, b).purity() == pytest.approx(a.purity() * b.purity(), rel=1e-12)

    def test_tmsv_marginal(self):
        np.testing.assert_allclose(partial_trace(tmsv(3.0).state, [1]).gamma, 3 * np.eye(2),
                                   atol=1e-14)

    def test_reorders(self):
        s = tensor(GaussianState.thermal(2.0), GaussianState.thermal(5.0))
        np.testing.assert_allclose(partial_trace(s, [1, 0]).gamma, np.diag([5, 5, 2, 2.0]))

    def test_empty_keep(self):
        with pytest.raises(DimensionError):
            partial_trace(GaussianState.vacuum(), [])

    def test_out_of_range(self):
        with pytest.raises(DimensionError):
            partial_trace(GaussianState.vacuum(2), [2])


class TestThermalForm:
    def test_known_parameter(self):
        tf = thermal_form(GaussianState.thermal(3.0))
        np.testing.assert_allclose(tf.x, [0.5])

    def test_pure_mode_snapped(self):
        g = random_covariance(2, pure=True, seed=1)
        tf = thermal_form(GaussianState(None, g))
        np.testing.assert_array_equal(tf.nu, [1.0, 1.0])
        np.testing.assert_array_equal(tf.x, [0.0, 0.0])

    @pytest.mark.parametrize("seed", range(10))
    def test_reconstruction(self, seed):
        s = random_state(3, seed)
        tf = thermal_form(s)
        assert moment_residual(from_thermal_form(tf.V, tf.nu), s) < 1e-12


def thermal_series(x, cut=4000):
    return (1 - x) * x ** np.arange(cut)


class TestSqrtState:
    def test_pure_state_unchanged(self):
        s = GaussianState.coherent(0.3 + 1j)
        r = sqrt_state(s)
        assert r.log_scale == 0.0
        assert moment_residual(r.state, s) < 1e-14

    def test_single_mode_against_series(self):
        # oracle: square root of the thermal spectrum, term by term
        x = 0.25
        p = thermal_series(x)
        root = np.sqrt(p)
        r = sqrt_state(GaussianState.thermal((1 + x) / (1 - x)))
        x_root = float(r.state.gamma[0, 0] - 1) / float(r.state.gamma[0, 0] + 1)
        assert x_root == pytest.approx(root[1] / root[0], rel=1e-12)
        assert r.scale == pytest.approx(root.sum(), rel=1e-12)

    def test_fourth_root(self):
        x = 0.6
        r = sqrt_state(sqrt_state(GaussianState.thermal((1 + x) / (1 - x))).state)
        nu = r.state.gamma[0, 0]
        assert (nu - 1) / (nu + 1) == pytest.approx(x ** 0.25, rel=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_trace_of_root_at_least_one(self, seed):
        s = random_state(2, seed)
        r = sqrt_state(s)
        assert r.log_scale >= -1e-15
        # same Williamson frame and mean as the state
        np.testing.assert_array_equal(r.state.mu, s.mu)

    def test_log_scale_matches_determinant(self):
        # sum of log scales equals a quarter of log det of the root covariance
        for seed in range(20):
            r = sqrt_state(random_state(3, seed))
            assert r.log_scale == pytest.approx(0.25 * np.linalg.slogdet(r.state.gamma)[1],
                                                rel=1e-10)
