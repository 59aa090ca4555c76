"""Bipartite system-clock bookkeeping: operator embedding, conditioning a
global state on a clock state, and clock projectors.

Index convention is system-major: the global component of (s, c) sits at
``s * dim_c + c``. Everything here is a pure function over immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigInvalid, VanishingOverlap
from .numerics import kron

#: Smallest admissible normalization factor N when conditioning.
N_FLOOR = 1e-14

_HERM_TOL = 1e-12


@dataclass(frozen=True)
class BipartiteSpace:
    """Dimensions of the system (S) and clock (C) tensor factors."""

    dim_s: int
    dim_c: int

    def __post_init__(self):
        if self.dim_s < 1 or self.dim_c < 1:
            raise ConfigInvalid("subsystem dimensions must be positive")

    @property
    def dim_total(self) -> int:
        return self.dim_s * self.dim_c

    def global_index(self, s: int, c: int) -> int:
        return s * self.dim_c + c


def _require_hermitian(name: str, m: np.ndarray) -> None:
    dev = np.max(np.abs(m - m.conj().T))
    if dev > _HERM_TOL * max(np.linalg.norm(m), 1.0):
        raise ConfigInvalid(f"{name} is not Hermitian (max dev {dev:.3e})")


@dataclass(frozen=True)
class GlobalModel:
    """Full problem definition: free Hamiltonians, coupling operator, strength."""

    space: BipartiteSpace
    H0_s: np.ndarray
    H_c: np.ndarray
    V_coupling: np.ndarray
    g: float

    def __post_init__(self):
        ds, dc = self.space.dim_s, self.space.dim_c
        if self.H0_s.shape != (ds, ds):
            raise ConfigInvalid("H0_s dimension mismatch")
        if self.H_c.shape != (dc, dc):
            raise ConfigInvalid("H_c dimension mismatch")
        if self.V_coupling.shape != (ds * dc, ds * dc):
            raise ConfigInvalid("V_coupling dimension mismatch")
        _require_hermitian("H0_s", self.H0_s)
        _require_hermitian("H_c", self.H_c)
        _require_hermitian("V_coupling", self.V_coupling)

    def h_tot(self) -> np.ndarray:
        """Coupled Hamiltonian H_tot0 + g V."""
        return assemble_H_tot0(self) + self.g * self.V_coupling


@dataclass(frozen=True)
class ClockState:
    """Unit-norm clock state with a human-readable label."""

    space: BipartiteSpace
    amplitudes: np.ndarray
    label: str = ""

    def __post_init__(self):
        if self.amplitudes.shape != (self.space.dim_c,):
            raise ConfigInvalid("clock amplitude dimension mismatch")
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > 1e-12:
            raise ConfigInvalid(f"clock state norm {norm} is not 1")


def assemble_H_tot0(m: GlobalModel) -> np.ndarray:
    """Uncoupled global Hamiltonian H0_s (x) 1 + 1 (x) H_c."""
    ds, dc = m.space.dim_s, m.space.dim_c
    return kron(m.H0_s, np.eye(dc)) + kron(np.eye(ds), m.H_c)


def condition(
    psi: np.ndarray, chi: ClockState, n_floor: float = N_FLOOR
) -> tuple[np.ndarray, float]:
    """Project a global state onto a clock state.

    Returns the normalized system state and the normalization factor
    N = <<Psi| 1 (x) |chi><chi| |Psi>>. Raises VanishingOverlap when N
    falls below ``n_floor``.
    """
    ds, dc = chi.space.dim_s, chi.space.dim_c
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (ds * dc,):
        raise ConfigInvalid("global state dimension mismatch")
    raw = psi.reshape(ds, dc) @ np.conj(chi.amplitudes)
    n = float(np.vdot(raw, raw).real)
    if n < n_floor:
        raise VanishingOverlap(f"normalization factor {n:.3e} below floor {n_floor:.1e}")
    return raw / np.sqrt(n), n


def condition_raw(psi: np.ndarray, chi: ClockState) -> np.ndarray:
    """Unnormalized partial projection <chi|Psi> as a system vector."""
    ds, dc = chi.space.dim_s, chi.space.dim_c
    return np.asarray(psi, dtype=complex).reshape(ds, dc) @ np.conj(chi.amplitudes)


def clock_projector(chi: ClockState) -> np.ndarray:
    """Rank-1 projector |chi><chi| on the clock factor."""
    return np.outer(chi.amplitudes, np.conj(chi.amplitudes))
