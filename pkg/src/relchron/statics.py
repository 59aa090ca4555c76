"""Time-independent perturbation theory on the global Hamiltonian.

Covers the non-degenerate first-order corrections, the degenerate-subspace
zeroth-order selection with its first-order correction, and the in-subspace
part of the second-order state that enters at order g when a degeneracy is
lifted at first order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegeneracyNotLifted, DegenerateLevel
from .numerics import Spectrum, hermitian_eigensolve, resolvent_apply

DEFAULT_KERNEL_TOL = 1e-9


@dataclass(frozen=True)
class PerturbedEigenstate:
    """First-order perturbed eigenpair of H_tot0 + g V.

    ``psi2_deg`` is the degenerate-subspace second-order part that enters the
    corrected state at order g (zero vector for a non-degenerate level).
    ``subspace_basis`` holds the D orthonormal vectors spanning the degenerate
    subspace (a single column for D = 1).
    """

    E0: float
    E1: float
    psi0: np.ndarray
    psi1: np.ndarray
    psi2_deg: np.ndarray
    degeneracy: int = 1
    subspace_basis: np.ndarray = field(default=None)  # type: ignore[assignment]


def level_index_for_energy(spectrum: Spectrum, e0: float) -> int:
    """Index of the eigenvalue closest to ``e0``."""
    return int(np.argmin(np.abs(spectrum.eigenvalues - e0)))


def _degenerate_indices(spectrum: Spectrum, e0: float, kernel_tol: float) -> np.ndarray:
    return np.flatnonzero(
        np.abs(spectrum.eigenvalues - e0) <= kernel_tol * spectrum.spectral_range
    )


def tipt_first_order(
    H_tot0: np.ndarray,
    V: np.ndarray,
    level_index: int,
    kernel_tol: float = DEFAULT_KERNEL_TOL,
) -> PerturbedEigenstate:
    """First-order corrections for a non-degenerate level of H_tot0.

    Raises DegenerateLevel when the selected level's gap to its neighbors is
    below ``kernel_tol`` times the spectral range.
    """
    spectrum = hermitian_eigensolve(H_tot0)
    e0 = float(spectrum.eigenvalues[level_index])
    group = _degenerate_indices(spectrum, e0, kernel_tol)
    if group.size > 1:
        raise DegenerateLevel(
            f"level {level_index} is {group.size}-fold degenerate; use tipt_degenerate"
        )
    psi0 = spectrum.vectors[:, level_index]
    e1_c = np.vdot(psi0, V @ psi0)
    e1 = float(e1_c.real)
    rhs = V @ psi0 - e1 * psi0
    psi1 = resolvent_apply(spectrum, e0, kernel_tol, rhs)
    return PerturbedEigenstate(
        E0=e0,
        E1=e1,
        psi0=psi0,
        psi1=psi1,
        psi2_deg=np.zeros_like(psi0),
        degeneracy=1,
        subspace_basis=psi0[:, None],
    )


def tipt_degenerate(
    H_tot0: np.ndarray,
    V: np.ndarray,
    E0: float,
    branch_index: int,
    kernel_tol: float = DEFAULT_KERNEL_TOL,
) -> PerturbedEigenstate:
    """Degenerate-level corrections for the level at energy E0.

    The zeroth-order state is the ``branch_index``-th eigenvector (ascending
    eigenvalue) of the subspace-projected coupling; its eigenvalue is the
    first-order energy. Raises DegeneracyNotLifted when those eigenvalues are
    not pairwise distinct, and DegenerateLevel when the level is not actually
    degenerate.
    """
    spectrum = hermitian_eigensolve(H_tot0)
    group = _degenerate_indices(spectrum, E0, kernel_tol)
    d = group.size
    if d < 2:
        raise DegenerateLevel(f"level at E0={E0} has degeneracy {d}; need D >= 2")
    basis = spectrum.vectors[:, group]  # columns span the degenerate subspace
    block = basis.conj().T @ V @ basis  # P0 V P0 restricted to the subspace
    small = hermitian_eigensolve(block)
    e1s = small.eigenvalues
    v_scale = max(np.linalg.norm(V), 1.0)
    gaps = np.diff(e1s)
    if np.any(gaps <= 1e-9 * v_scale):
        raise DegeneracyNotLifted(
            "first-order corrections do not split the subspace "
            f"(min gap {gaps.min():.3e})"
        )
    if not 0 <= branch_index < d:
        raise DegenerateLevel(f"branch_index {branch_index} out of range for D={d}")
    e1 = float(e1s[branch_index])
    psi0 = basis @ small.vectors[:, branch_index]
    # Q0 resolvent: remove the full in-subspace component of V psi0 first.
    v_psi0 = V @ psi0
    rhs = v_psi0 - basis @ (basis.conj().T @ v_psi0)
    psi1 = resolvent_apply(spectrum, E0, kernel_tol, rhs)
    # In-subspace second-order part: invert (E1 - P0 V P0) on the complement
    # of psi0 inside the subspace, applied to the projection of V psi1.
    psi2 = np.zeros_like(psi0)
    v_psi1 = V @ psi1
    for j in range(d):
        if j == branch_index:
            continue
        w = basis @ small.vectors[:, j]
        psi2 = psi2 + w * (np.vdot(w, v_psi1) / (e1 - e1s[j]))
    return PerturbedEigenstate(
        E0=float(E0),
        E1=e1,
        psi0=psi0,
        psi1=psi1,
        psi2_deg=psi2,
        degeneracy=d,
        subspace_basis=basis,
    )


def assemble_corrected_state(p: PerturbedEigenstate, g: float) -> np.ndarray:
    """Normalized first-order state psi0 + g psi1 + g psi2_deg."""
    state = p.psi0 + g * p.psi1 + g * p.psi2_deg
    return state / np.linalg.norm(state)


def verify_degenerate_kernel(
    H_tot0: np.ndarray, E0: float, Pbar0: np.ndarray
) -> float:
    """Max-norm of (E0 - H_tot0) Pbar0; zero iff Pbar0 lives in the E0-eigenspace."""
    return float(np.max(np.abs((E0 * np.eye(H_tot0.shape[0]) - H_tot0) @ Pbar0)))
