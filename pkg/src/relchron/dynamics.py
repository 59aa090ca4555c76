"""Time-dependent propagation: first-order perturbative evolution under a
sampled effective potential, a fixed-step Runge-Kutta reference integrator,
and trajectory comparison metrics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson

from .errors import GridMismatch
from .numerics import hermitian_eigensolve, spectral_propagator
from .relational import Method, RelationalTrajectory

_UNIFORM_TOL = 1e-9


@dataclass(frozen=True)
class PotentialTrace:
    """Hermitian system potential sampled on a uniform, increasing time grid."""

    times: np.ndarray
    samples: np.ndarray  # shape (n, d_s, d_s)

    def __post_init__(self):
        steps = np.diff(self.times)
        if len(self.times) < 3 or np.any(steps <= 0):
            raise GridMismatch("times must be strictly increasing with >= 3 points")
        if np.max(np.abs(steps - steps[0])) > _UNIFORM_TOL * steps[0]:
            raise GridMismatch("time grid must be uniform")
        if self.samples.shape[0] != self.times.shape[0]:
            raise GridMismatch("one potential sample per time point required")


@dataclass(frozen=True)
class ComparisonReport:
    """Summary metrics between two trajectories on the same grid."""

    max_pop_deviation: float
    mean_fidelity_gap: float
    scaling_exponent: float = float("nan")


def _cumulative_simpson_complex(y: np.ndarray, x: np.ndarray) -> np.ndarray:
    re = cumulative_simpson(y.real, x=x, axis=0, initial=0.0)
    im = cumulative_simpson(y.imag, x=x, axis=0, initial=0.0)
    return re + 1j * im


def tdpt_first_order(
    H0_s: np.ndarray, trace: PotentialTrace, g: float, phi0: np.ndarray
) -> RelationalTrajectory:
    """First-order perturbed evolution of phi0 under H0_s + g * trace.

    Propagates U(t) [1 - i g \\int_0^t U^dag(s) V(s) U(s) ds] phi0 with
    U(t) = exp(-i t H0_s), the integral done by composite Simpson on the
    trace grid. States are re-normalized per time point; the squared
    pre-normalization norms are kept in ``norms``.
    """
    spec = hermitian_eigensolve(np.asarray(H0_s, dtype=complex))
    phi0 = np.asarray(phi0, dtype=complex)
    times = trace.times
    n = len(times)
    integrand = np.empty((n, phi0.shape[0]), dtype=complex)
    props = []
    for i, t in enumerate(times):
        u = spectral_propagator(spec, float(t))
        props.append(u)
        integrand[i] = u.conj().T @ (trace.samples[i] @ (u @ phi0))
    integral = _cumulative_simpson_complex(integrand, times)
    states = np.empty((n, phi0.shape[0]), dtype=complex)
    norms = np.empty(n)
    for i in range(n):
        raw = props[i] @ (phi0 - 1j * g * integral[i])
        nrm = np.linalg.norm(raw)
        states[i] = raw / nrm
        norms[i] = nrm**2
    return RelationalTrajectory(
        times=times.copy(), states=states, norms=norms, method=Method.TDPT
    )


def integrate_tdse_reference(
    H0_s: np.ndarray,
    trace: PotentialTrace,
    g: float,
    phi0: np.ndarray,
    substeps: int = 4,
) -> RelationalTrajectory:
    """Fixed-step RK4 integration of i dphi/dt = (H0_s + g V(t)) phi.

    The potential is interpolated linearly between trace samples. States are
    reported on the trace grid; ``norms`` holds the squared integrator norm
    (drift stays below 1e-8 per period for the default step).
    """
    if substeps < 1:
        raise GridMismatch("substeps must be >= 1")
    H0_s = np.asarray(H0_s, dtype=complex)
    phi = np.asarray(phi0, dtype=complex).copy()
    times = trace.times
    n = len(times)
    samples = trace.samples

    def h_at(i: int, frac: float) -> np.ndarray:
        if i >= n - 1:
            v = samples[-1]
        else:
            v = (1.0 - frac) * samples[i] + frac * samples[i + 1]
        return H0_s + g * v

    states = np.empty((n, phi.shape[0]), dtype=complex)
    norms = np.empty(n)
    states[0] = phi / np.linalg.norm(phi)
    norms[0] = float(np.vdot(phi, phi).real)
    for i in range(n - 1):
        dt = (times[i + 1] - times[i]) / substeps
        for k in range(substeps):
            f0 = float(k) / substeps
            fm = (k + 0.5) / substeps
            f1 = float(k + 1) / substeps
            h0 = h_at(i, f0)
            hm = h_at(i, fm)
            h1 = h_at(i, f1)
            k1 = -1j * (h0 @ phi)
            k2 = -1j * (hm @ (phi + 0.5 * dt * k1))
            k3 = -1j * (hm @ (phi + 0.5 * dt * k2))
            k4 = -1j * (h1 @ (phi + dt * k3))
            phi = phi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        nrm2 = float(np.vdot(phi, phi).real)
        states[i + 1] = phi / np.sqrt(nrm2)
        norms[i + 1] = nrm2
    return RelationalTrajectory(
        times=times.copy(), states=states, norms=norms, method=Method.TDPT
    )


def compare_trajectories(
    a: RelationalTrajectory, b: RelationalTrajectory
) -> ComparisonReport:
    """Max per-level population deviation and mean fidelity gap."""
    if a.times.shape != b.times.shape or np.max(np.abs(a.times - b.times)) > _UNIFORM_TOL:
        raise GridMismatch("trajectories live on different time grids")
    pop_dev = float(np.max(np.abs(a.populations() - b.populations())))
    overlaps = np.abs(np.sum(np.conj(a.states) * b.states, axis=1))
    fid_gap = float(np.mean(1.0 - overlaps))
    return ComparisonReport(max_pop_deviation=pop_dev, mean_fidelity_gap=fid_gap)


def fit_scaling_exponent(gs: np.ndarray, deviations: np.ndarray) -> float:
    """Slope of log(deviation) against log(g)."""
    gs = np.asarray(gs, dtype=float)
    deviations = np.asarray(deviations, dtype=float)
    if np.any(gs <= 0) or np.any(deviations <= 0):
        raise ValueError("scaling fit needs positive g values and deviations")
    return float(np.polyfit(np.log(gs), np.log(deviations), 1)[0])
