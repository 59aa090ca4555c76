"""Emergent-time machinery: clock evolution, relational trajectories from
exact or perturbed global eigenstates, and the effective system potential.

The effective potential here carries no factor of the coupling strength g;
consumers multiply by g themselves.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import GridMismatch, VanishingOverlap
from .hilbert import ClockState, GlobalModel, N_FLOOR, condition, condition_raw
from .numerics import Spectrum, hermitian_eigensolve, spectral_propagator
from .statics import PerturbedEigenstate, assemble_corrected_state


class Method(enum.Enum):
    EXACT = "EXACT"
    TIPT_CONDITIONED = "TIPT_CONDITIONED"
    TDPT = "TDPT"


@dataclass(frozen=True)
class RelationalTrajectory:
    """System states on a time grid.

    ``states`` has shape (n, dim_s) with unit-norm rows. ``norms`` holds the
    conditioning factor N(t) for the conditioned methods; for the TDPT method
    it holds the squared pre-normalization norm (1 + O(g^2)).
    """

    times: np.ndarray
    states: np.ndarray
    norms: np.ndarray
    method: Method

    def populations(self) -> np.ndarray:
        return np.abs(self.states) ** 2


@dataclass(frozen=True)
class EffectivePotentialSample:
    t: float
    V_eff: np.ndarray


def evolve_clock(
    chi0: ClockState, H_c: np.ndarray, E: float, t: float
) -> ClockState:
    """Clock state at parameter t: exp(-i t (H_c - E)) |chi0>."""
    spec = hermitian_eigensolve(np.asarray(H_c, dtype=complex))
    return _evolve_clock_spec(chi0, spec, E, t)


def _evolve_clock_spec(
    chi0: ClockState, clock_spec: Spectrum, E: float, t: float
) -> ClockState:
    u = spectral_propagator(clock_spec, t, shift=E)
    amps = u @ chi0.amplitudes
    amps = amps / np.linalg.norm(amps)
    return ClockState(space=chi0.space, amplitudes=amps, label=chi0.label)


def _conditioned_trajectory(
    psi: np.ndarray,
    E: float,
    m: GlobalModel,
    chi0: ClockState,
    times: np.ndarray,
    method: Method,
) -> RelationalTrajectory:
    clock_spec = hermitian_eigensolve(np.asarray(m.H_c, dtype=complex))
    states = np.empty((len(times), m.space.dim_s), dtype=complex)
    norms = np.empty(len(times))
    for i, t in enumerate(times):
        chi_t = _evolve_clock_spec(chi0, clock_spec, E, float(t))
        phi, n = condition(psi, chi_t)
        states[i] = phi
        norms[i] = n
    return RelationalTrajectory(
        times=np.asarray(times, dtype=float), states=states, norms=norms, method=method
    )


def relational_trajectory_exact(
    m: GlobalModel,
    level_select: np.ndarray,
    chi0: ClockState,
    times: np.ndarray,
    spectrum: Spectrum | None = None,
) -> RelationalTrajectory:
    """Condition the exact eigenstate of H_tot(g) on the evolving clock.

    The eigenvector is the one with maximal overlap with ``level_select``.
    A precomputed ``spectrum`` of H_tot(g) may be passed to avoid repeating
    the diagonalization across calls.
    """
    if spectrum is None:
        spectrum = hermitian_eigensolve(m.h_tot())
    overlaps = np.abs(spectrum.vectors.conj().T @ np.asarray(level_select, dtype=complex))
    k = int(np.argmax(overlaps))
    psi = spectrum.vectors[:, k]
    e_exact = float(spectrum.eigenvalues[k])
    return _conditioned_trajectory(psi, e_exact, m, chi0, times, Method.EXACT)


def relational_trajectory_tipt(
    p: PerturbedEigenstate,
    g: float,
    m: GlobalModel,
    chi0: ClockState,
    times: np.ndarray,
) -> RelationalTrajectory:
    """Condition the assembled first-order state, with E = E0 + g E1 driving
    the clock."""
    psi = assemble_corrected_state(p, g)
    e_appr = p.E0 + g * p.E1
    return _conditioned_trajectory(psi, e_appr, m, chi0, times, Method.TIPT_CONDITIONED)


def _potential_from_vectors(
    w: np.ndarray, u: np.ndarray, dim_s: int
) -> tuple[np.ndarray, float]:
    """Hermitian potential from the conditioned state w = <chi|Psi> and the
    conditioned coupling action u = <chi|V Psi>."""
    n = float(np.vdot(w, w).real)
    if n < N_FLOOR:
        raise VanishingOverlap(f"normalization factor {n:.3e} below floor")
    scal = np.vdot(u, w)  # <<Psi| V P_chi |Psi>>
    v_eff = (
        np.outer(u, np.conj(w)) + np.outer(w, np.conj(u)) - scal.real * np.eye(dim_s)
    ) / n
    return v_eff, n


def effective_potential_full(
    psi: np.ndarray, E_used: float, m: GlobalModel, chi_t: ClockState, t: float = 0.0
) -> EffectivePotentialSample:
    """Effective system potential built from a (normalized) global state.

    ``E_used`` is the energy that drove the clock to ``chi_t``; it affects the
    potential only through ``chi_t`` itself and is accepted for bookkeeping.
    The coupling-strength prefactor is NOT included.
    """
    w = condition_raw(psi, chi_t)
    u = condition_raw(m.V_coupling @ np.asarray(psi, dtype=complex), chi_t)
    v_eff, _ = _potential_from_vectors(w, u, m.space.dim_s)
    return EffectivePotentialSample(t=t, V_eff=v_eff)


def effective_potential_zeroth(
    psi0: np.ndarray, m: GlobalModel, chi_t: ClockState, t: float = 0.0
) -> EffectivePotentialSample:
    """Zeroth-order effective potential: same construction fed with the
    unperturbed global eigenstate."""
    w = condition_raw(psi0, chi_t)
    u = condition_raw(m.V_coupling @ np.asarray(psi0, dtype=complex), chi_t)
    v_eff, _ = _potential_from_vectors(w, u, m.space.dim_s)
    return EffectivePotentialSample(t=t, V_eff=v_eff)


def sample_potential_zeroth(
    psi0: np.ndarray,
    m: GlobalModel,
    chi0: ClockState,
    E: float,
    times: np.ndarray,
) -> "np.ndarray":
    """Zeroth-order potential sampled on a time grid; shape (n, d_s, d_s)."""
    clock_spec = hermitian_eigensolve(np.asarray(m.H_c, dtype=complex))
    ds = m.space.dim_s
    out = np.empty((len(times), ds, ds), dtype=complex)
    for i, t in enumerate(times):
        chi_t = _evolve_clock_spec(chi0, clock_spec, E, float(t))
        out[i] = effective_potential_zeroth(psi0, m, chi_t).V_eff
    return out


def sample_potential_full(
    psi: np.ndarray,
    m: GlobalModel,
    chi0: ClockState,
    E: float,
    times: np.ndarray,
) -> "np.ndarray":
    """Full-state potential sampled on a time grid; shape (n, d_s, d_s)."""
    clock_spec = hermitian_eigensolve(np.asarray(m.H_c, dtype=complex))
    ds = m.space.dim_s
    out = np.empty((len(times), ds, ds), dtype=complex)
    for i, t in enumerate(times):
        chi_t = _evolve_clock_spec(chi0, clock_spec, E, float(t))
        out[i] = effective_potential_full(psi, E, m, chi_t).V_eff
    return out


def default_time_grid(Ecal: float, n_times: int = 400) -> np.ndarray:
    """Uniform grid over one clock period [0, 2*pi/Ecal]."""
    if n_times < 2:
        raise GridMismatch("need at least two time points")
    return np.linspace(0.0, 2.0 * np.pi / Ecal, n_times)
