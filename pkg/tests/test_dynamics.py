import numpy as np
import pytest
from scipy.linalg import expm

from relchron.dynamics import (
    PotentialTrace,
    compare_trajectories,
    fit_scaling_exponent,
    integrate_tdse_reference,
    tdpt_first_order,
)
from relchron.errors import GridMismatch

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def constant_trace(v, times):
    return PotentialTrace(times=times, samples=np.broadcast_to(v, (len(times), 2, 2)).copy())


def test_trace_rejects_bad_grids():
    v = np.zeros((3, 2, 2), complex)
    with pytest.raises(GridMismatch):
        PotentialTrace(times=np.array([0.0, 1.0]), samples=v[:2])
    with pytest.raises(GridMismatch):
        PotentialTrace(times=np.array([0.0, 1.0, 1.5]), samples=v)
    with pytest.raises(GridMismatch):
        PotentialTrace(times=np.array([0.0, 1.0, 2.0, 3.0]), samples=v)


def test_g_zero_is_free_evolution():
    times = np.linspace(0.0, 3.0, 41)
    h0 = 0.7 * SZ
    phi0 = np.array([0.6, 0.8], dtype=complex)
    traj = tdpt_first_order(h0, constant_trace(SX, times), 0.0, phi0)
    for i, t in enumerate(times):
        ref = expm(-1j * t * h0) @ phi0
        assert np.max(np.abs(traj.states[i] - ref)) < 1e-12
        assert traj.norms[i] == pytest.approx(1.0, abs=1e-12)


def test_first_order_against_commuting_oracle():
    # H0 = 0 and constant V: exact state is exp(-i g t V) phi0 and the
    # first-order expansion is (1 - i g t V) phi0, which tdpt reproduces
    # exactly (the integrand is constant, Simpson is exact).
    times = np.linspace(0.0, 2.0, 33)
    g = 0.05
    phi0 = np.array([1.0, 0.0], dtype=complex)
    traj = tdpt_first_order(np.zeros((2, 2), complex), constant_trace(SX, times), g, phi0)
    for i, t in enumerate(times):
        raw = (np.eye(2) - 1j * g * t * SX) @ phi0
        ref = raw / np.linalg.norm(raw)
        assert np.max(np.abs(traj.states[i] - ref)) < 1e-12


def test_first_order_error_scales_as_g_squared():
    times = np.linspace(0.0, 2.0, 201)
    h0 = 0.7 * SZ
    # complex superposition so the O(g^2) population term does not cancel
    phi0 = np.array([0.8, 0.6j], dtype=complex)
    # time-dependent potential sampled on the grid
    samples = np.array([np.cos(t) * SX + 0.3 * np.sin(t) * SZ for t in times])
    trace = PotentialTrace(times=times, samples=samples)
    gs = [0.02, 0.01, 0.005]
    devs = []
    for g in gs:
        a = tdpt_first_order(h0, trace, g, phi0)
        b = integrate_tdse_reference(h0, trace, g, phi0, substeps=8)
        devs.append(compare_trajectories(a, b).max_pop_deviation)
    slope = fit_scaling_exponent(np.array(gs), np.array(devs))
    assert 1.9 <= slope <= 2.1


def test_rk4_matches_expm_for_constant_hamiltonian():
    times = np.linspace(0.0, 1.5, 61)
    h0 = 0.9 * SZ
    g = 0.3
    phi0 = np.array([0.6, 0.8], dtype=complex)
    traj = integrate_tdse_reference(h0, constant_trace(SX, times), g, phi0, substeps=8)
    h = h0 + g * SX
    ref = expm(-1j * times[-1] * h) @ phi0
    assert np.max(np.abs(traj.states[-1] - ref)) < 1e-9


def test_rk4_fourth_order_step_scaling():
    times = np.linspace(0.0, 2.0, 21)
    h0 = 0.7 * SZ
    samples = np.array([np.cos(1.3 * t) * SX for t in times])
    trace = PotentialTrace(times=times, samples=samples)
    phi0 = np.array([1.0, 0.0], dtype=complex)
    dense = integrate_tdse_reference(h0, trace, 0.4, phi0, substeps=64)

    def err(substeps):
        traj = integrate_tdse_reference(h0, trace, 0.4, phi0, substeps=substeps)
        return np.max(np.abs(traj.states[-1] - dense.states[-1]))

    ratio = err(1) / err(2)
    # fourth-order: halving the step divides the error by ~16
    assert 10.0 <= ratio <= 22.0


def test_rk4_norm_conservation():
    times = np.linspace(0.0, 2 * np.pi, 201)
    samples = np.array([np.cos(t) * SX for t in times])
    trace = PotentialTrace(times=times, samples=samples)
    traj = integrate_tdse_reference(0.7 * SZ, trace, 0.3, np.array([1.0, 0.0], complex))
    assert np.max(np.abs(traj.norms - 1.0)) < 1e-8


def test_compare_trajectories_identity_and_mismatch():
    times = np.linspace(0.0, 1.0, 11)
    traj = tdpt_first_order(0.7 * SZ, constant_trace(SX, times), 0.1, np.array([1.0, 0.0], complex))
    rep = compare_trajectories(traj, traj)
    assert rep.max_pop_deviation == 0.0
    assert rep.mean_fidelity_gap <= 1e-15
    other_times = np.linspace(0.0, 2.0, 11)
    other = tdpt_first_order(0.7 * SZ, constant_trace(SX, other_times), 0.1, np.array([1.0, 0.0], complex))
    with pytest.raises(GridMismatch):
        compare_trajectories(traj, other)


def test_fit_scaling_exponent_recovers_power_law():
    gs = np.array([0.2, 0.1, 0.05, 0.025])
    devs = 3.7 * gs**2.4
    assert fit_scaling_exponent(gs, devs) == pytest.approx(2.4, abs=1e-12)
    with pytest.raises(ValueError):
        fit_scaling_exponent(gs, 0.0 * devs)
