import numpy as np
import pytest

from flockspectra import (SimConfig, StepSizeTooLarge, Trajectory,
                          build_laplacian, coherence_error,
                          laplacian_spectrum, make_params,
                          simulate_first_order, simulate_second_order,
                          spectral_radius_estimate)


def _stable_params(n=20):
    return make_params(1, 1, 2, 0.5, 0.5, n)


class TestSimulateFirstOrder:
    def test_fixed_point(self):
        p = _stable_params()
        h = -np.arange(21.0)
        traj = simulate_first_order(SimConfig(p, h, h.copy(), t_end=5.0))
        assert np.allclose(traj.positions, h, atol=1e-12)
        assert np.all(traj.coherence_errors < 1e-12)

    def test_coherence_decays_when_stable(self):
        p = _stable_params()
        h = -np.arange(21.0)
        rng = np.random.default_rng(1)
        traj = simulate_first_order(
            SimConfig(p, h, h + rng.normal(size=21), t_end=400.0,
                      save_stride=10))
        ce = traj.coherence_errors
        assert ce[-1] < 1e-1 * ce[0]

    def test_coherence_grows_when_visibly_unstable(self):
        p = make_params(3, 1, 4, 5, -4, 20)   # c+e<0: positive mode 0.75
        h = -np.arange(21.0)
        rng = np.random.default_rng(2)
        traj = simulate_first_order(
            SimConfig(p, h, h + rng.normal(size=21) * 0.01, t_end=30.0,
                      save_stride=10))
        ce = traj.coherence_errors
        assert ce[-1] > 100 * ce[0]

    def test_leader_coordinate_constant(self):
        p = _stable_params()
        h = -np.arange(21.0)
        rng = np.random.default_rng(3)
        x0 = h + rng.normal(size=21)
        traj = simulate_first_order(SimConfig(p, h, x0, t_end=10.0))
        assert np.allclose(traj.positions[:, 0], x0[0], atol=1e-13)

    def test_step_size_guard(self):
        p = _stable_params()
        h = np.zeros(21)
        with pytest.raises(StepSizeTooLarge):
            simulate_first_order(SimConfig(p, h, h, t_end=10.0, dt=10.0))

    def test_rk4_refinement_ratio(self):
        p = _stable_params()
        h = -np.arange(21.0)
        rng = np.random.default_rng(4)
        x0 = h + rng.normal(size=21)

        def final_state(dt):
            return simulate_first_order(
                SimConfig(p, h, x0, t_end=4.0, dt=dt)).positions[-1]

        ref = final_state(0.0125)
        e1 = np.linalg.norm(final_state(0.1) - ref)
        e2 = np.linalg.norm(final_state(0.05) - ref)
        assert 8 <= e1 / e2 <= 32


class TestSimulateSecondOrder:
    def test_coherent_flight_preserved(self):
        p = _stable_params()
        h = -np.arange(21.0)
        traj = simulate_second_order(
            SimConfig(p, h, h + 3.0, t_end=20.0, v0=np.full(21, 0.7),
                      alpha=1.0, beta=1.0))
        assert traj.coherence_errors.max() < 1e-9
        # positions follow x = vbar t + xbar + h
        t_final = traj.times[-1]
        assert np.allclose(traj.positions[-1], h + 3.0 + 0.7 * t_final,
                           atol=1e-8)

    def test_velocities_converge_when_stable(self):
        p = _stable_params()
        h = -np.arange(21.0)
        rng = np.random.default_rng(5)
        traj = simulate_second_order(
            SimConfig(p, h, h + rng.normal(size=21) * 0.1, t_end=3000.0,
                      v0=rng.normal(size=21) * 0.1, alpha=1.0, beta=1.0,
                      save_stride=100))
        v_final = traj.velocities[-1]
        assert np.ptp(v_final) < 1e-2 * max(np.ptp(traj.velocities[0]), 1e-9)

    def test_negative_alpha_diverges(self):
        p = _stable_params()
        h = -np.arange(21.0)
        rng = np.random.default_rng(6)
        traj = simulate_second_order(
            SimConfig(p, h, h + rng.normal(size=21) * 0.01, t_end=30.0,
                      v0=np.zeros(21), alpha=-1.0, beta=1.0,
                      save_stride=10))
        assert traj.coherence_errors[-1] > 100 * traj.coherence_errors[0]


class TestCoherenceError:
    def _traj(self, positions):
        positions = np.asarray(positions, dtype=float)
        m = positions.shape[0]
        return Trajectory(np.array([0.0]), positions.reshape(1, m), None,
                          np.zeros(1))

    def test_exact_offsets(self):
        h = np.array([0.0, -1.0, -2.0])
        assert coherence_error(self._traj(h), h)[0] == 0

    def test_shifted_offsets_still_coherent(self):
        h = np.array([0.0, -1.0, -2.0])
        assert coherence_error(self._traj(h + 5.0), h)[0] == pytest.approx(0)

    def test_non_coherent_positive(self):
        h = np.array([0.0, -1.0, -2.0])
        x = h + np.array([1.0, 0.0, 0.0])
        assert coherence_error(self._traj(x), h)[0] > 0


def test_decay_rate_matches_spectral_prediction():
    p = _stable_params()
    lam = max(z.real for z in laplacian_spectrum(p) if abs(z) > 2e-8)
    h = -np.arange(21.0)
    rng = np.random.default_rng(7)
    traj = simulate_first_order(
        SimConfig(p, h, h + rng.normal(size=21), t_end=1500.0,
                  save_stride=20))
    mask = traj.times >= traj.times[-1] * 2 / 3
    slope = np.polyfit(traj.times[mask],
                       np.log(traj.coherence_errors[mask]), 1)[0]
    assert slope <= 0.9 * lam
    assert abs(slope - lam) < 0.15 * abs(lam)


def test_spectral_radius_estimate_dominates():
    p = make_params(1, 3, 4, 5, -2, 30)
    L = build_laplacian(p)
    rho_hat = spectral_radius_estimate(L)
    rho_true = max(abs(z) for z in np.linalg.eigvals(L))
    assert rho_hat >= 0.95 * rho_true
