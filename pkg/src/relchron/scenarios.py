"""Two-spin scenarios: a spin-1/2 system coupled to a large spin-J clock.

Builds the concrete models used throughout the test suite and provides the
closed-form expressions (perturbed states, the clock overlap function B(t),
effective potentials, and the degenerate-case building blocks) as analytic
oracles against which the generic pipeline is checked.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ConfigInvalid, VanishingAmplitude
from .hilbert import BipartiteSpace, ClockState, GlobalModel
from .numerics import kron
from .statics import PerturbedEigenstate

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

#: System basis ordering: index 0 is the upper level, index 1 the lower one.
UP, DOWN = 0, 1


class Branch(enum.Enum):
    NONDEGENERATE = "NONDEGENERATE"
    DEGENERATE_PLUS = "DEGENERATE_PLUS"


@dataclass(frozen=True)
class SpinScenarioConfig:
    """Parameters of the two-spin setup.

    ``J`` is the clock spin, ``eps`` and ``Ecal`` the system and clock energy
    scales, ``a`` the width parameter of the Gaussian clock coefficients.
    """

    J: int
    g: float
    eps: float
    Ecal: float
    a: float = 1.0
    branch: Branch = Branch.NONDEGENERATE
    n_times: int = 400
    t_max: float | None = None

    def __post_init__(self):
        if self.J < 1:
            raise ConfigInvalid("J must be a positive integer")
        if self.a <= 0:
            raise ConfigInvalid("Gaussian width parameter a must be > 0")
        if self.Ecal <= 0:
            raise ConfigInvalid("clock energy scale must be > 0")
        if self.n_times < 3:
            raise ConfigInvalid("n_times must be >= 3")
        ratio = self.eps / self.Ecal
        if self.branch is Branch.NONDEGENERATE:
            if abs(ratio - round(ratio)) < 1e-9:
                raise ConfigInvalid(
                    "non-degenerate branch needs eps/Ecal away from integers"
                )
        else:
            if abs(self.eps - self.Ecal) > 1e-12:
                raise ConfigInvalid("degenerate branch requires eps == Ecal")

    @property
    def dim_c(self) -> int:
        return 2 * self.J + 1

    @property
    def period(self) -> float:
        return 2.0 * np.pi / self.Ecal

    def time_grid(self) -> np.ndarray:
        t_max = self.period if self.t_max is None else self.t_max
        return np.linspace(0.0, t_max, self.n_times)


@dataclass(frozen=True)
class ClockCoefficients:
    """Clock amplitudes b_m, indexed m = -J..J, normalized to unit 2-norm."""

    b: np.ndarray

    def __post_init__(self):
        if abs(np.linalg.norm(self.b) - 1.0) > 1e-12:
            raise ConfigInvalid("clock coefficients must have unit norm")

    @property
    def J(self) -> int:
        return (len(self.b) - 1) // 2

    def at(self, m: int) -> complex:
        return complex(self.b[m + self.J])


def gaussian_coefficients(J: int, a: float) -> ClockCoefficients:
    """Default coefficient family b_m proportional to exp[-a (m/J)^2]."""
    m = np.arange(-J, J + 1)
    b = np.exp(-a * (m / J) ** 2).astype(complex)
    return ClockCoefficients(b=b / np.linalg.norm(b))


def _clock_index(J: int, m: int) -> int:
    return m + J


def _global_index(J: int, s: int, m: int) -> int:
    return s * (2 * J + 1) + _clock_index(J, m)


def build_scenario(
    cfg: SpinScenarioConfig,
) -> tuple[GlobalModel, ClockState, PerturbedEigenstate]:
    """Construct the GlobalModel, the initial clock state with Gaussian
    coefficients, and the analytic perturbed eigenstate for the branch."""
    J, dc = cfg.J, cfg.dim_c
    space = BipartiteSpace(dim_s=2, dim_c=dc)
    m_vals = np.arange(-J, J + 1, dtype=float)
    H0_s = cfg.eps * SIGMA_Z
    H_c = cfg.Ecal * np.diag(m_vals).astype(complex)
    F = np.ones((dc, dc), dtype=complex)  # <m|F|n> = 1 for all m, n
    V = kron(SIGMA_X, F)
    model = GlobalModel(space=space, H0_s=H0_s, H_c=H_c, V_coupling=V, g=cfg.g)
    coeffs = gaussian_coefficients(J, cfg.a)
    chi0 = ClockState(space=space, amplitudes=coeffs.b.copy(), label=f"gauss(a={cfg.a})")
    expected = _analytic_perturbed_state(cfg)
    return model, chi0, expected


def _analytic_perturbed_state(cfg: SpinScenarioConfig) -> PerturbedEigenstate:
    J, dc = cfg.J, cfg.dim_c
    dim = 2 * dc
    m_vals = np.arange(-J, J + 1, dtype=float)
    if cfg.branch is Branch.NONDEGENERATE:
        # Unperturbed |up, m=0> at E0 = eps; correction lives on |down, m>.
        psi0 = np.zeros(dim, dtype=complex)
        psi0[_global_index(J, UP, 0)] = 1.0
        psi1 = np.zeros(dim, dtype=complex)
        psi1[dc:] = 1.0 / (2.0 * cfg.eps - m_vals * cfg.Ecal)
        return PerturbedEigenstate(
            E0=cfg.eps,
            E1=0.0,
            psi0=psi0,
            psi1=psi1,
            psi2_deg=np.zeros(dim, dtype=complex),
            degeneracy=1,
            subspace_basis=psi0[:, None],
        )
    # Degenerate level E0 = 0 spanned by |up,-1> and |down,1>; plus branch.
    beta_plus = np.zeros(dim, dtype=complex)
    beta_minus = np.zeros(dim, dtype=complex)
    i_up = _global_index(J, UP, -1)
    i_dn = _global_index(J, DOWN, 1)
    beta_plus[i_up] = beta_plus[i_dn] = 1.0 / np.sqrt(2.0)
    beta_minus[i_up] = 1.0 / np.sqrt(2.0)
    beta_minus[i_dn] = -1.0 / np.sqrt(2.0)
    psi1 = np.zeros(dim, dtype=complex)
    for m in range(-J, J + 1):
        if m != 1:
            psi1[_global_index(J, DOWN, m)] += -1.0 / (
                np.sqrt(2.0) * cfg.Ecal * (m - 1)
            )
        if m != -1:
            psi1[_global_index(J, UP, m)] += -1.0 / (np.sqrt(2.0) * cfg.Ecal * (m + 1))
    g_coeff = 0.5 * (1.0 / J + 1.0 / (J + 1))
    psi2 = (g_coeff / cfg.Ecal) * beta_minus
    return PerturbedEigenstate(
        E0=0.0,
        E1=1.0,
        psi0=beta_plus,
        psi1=psi1,
        psi2_deg=psi2,
        degeneracy=2,
        subspace_basis=np.column_stack([beta_plus, beta_minus]),
    )


def eval_B(coeffs: ClockCoefficients, Ecal: float, t: float) -> complex:
    """Clock overlap function B(t) = sum_m conj(b_m) exp(i t m Ecal)."""
    J = coeffs.J
    m = np.arange(-J, J + 1)
    return complex(np.sum(np.conj(coeffs.b) * np.exp(1j * t * m * Ecal)))


def analytic_effective_potential(
    cfg: SpinScenarioConfig, coeffs: ClockCoefficients, t: float
) -> np.ndarray:
    """Closed-form zeroth-order effective potential for the branch."""
    B = eval_B(coeffs, cfg.Ecal, t)
    if cfg.branch is Branch.NONDEGENERATE:
        b0 = coeffs.at(0)
        if abs(b0) == 0.0:
            raise VanishingAmplitude("b_0 = 0: no population on |m=0>")
        z = b0 * B
        return (z.real * SIGMA_X + z.imag * SIGMA_Y) / abs(b0) ** 2
    b1 = coeffs.at(1)
    bm1 = coeffs.at(-1)
    if abs(b1) == 0.0 or abs(bm1) == 0.0:
        raise VanishingAmplitude("b_1 or b_-1 = 0: no population on |m = +-1>")
    phase = np.exp(1j * t * cfg.Ecal)
    z_z = B * (b1 / phase - bm1 * phase)
    z_xy = phase * (bm1 * B + np.conj(b1) * np.conj(B))
    pref = 1.0 / (abs(bm1) ** 2 + abs(b1) ** 2)
    return pref * (z_z.real * SIGMA_Z + z_xy.real * SIGMA_X + z_xy.imag * SIGMA_Y)


@dataclass(frozen=True)
class DegenerateElements:
    """Building blocks of the degenerate-case effective potential."""

    overlap: np.ndarray       # <chi(t)|Psi0> as a system vector (up, down)
    VPsi_overlap: np.ndarray  # <chi(t)|V|Psi0>
    N0: float                 # <<Psi0| P_chi0 |Psi0>>
    scalar: complex           # <<Psi0| V P_chi(t) |Psi0>>


def analytic_appendixA_elements(
    cfg: SpinScenarioConfig,
    coeffs: ClockCoefficients,
    t: float,
    E: float | None = None,
) -> DegenerateElements:
    """Closed-form elements for the degenerate plus branch.

    ``E`` is the energy in the clock phase (defaults to the branch energy
    E0 + g * lambda_plus = g).
    """
    if cfg.branch is not Branch.DEGENERATE_PLUS:
        raise ConfigInvalid("degenerate elements require the DEGENERATE_PLUS branch")
    if E is None:
        E = cfg.g
    b1 = coeffs.at(1)
    bm1 = coeffs.at(-1)
    B = eval_B(coeffs, cfg.Ecal, t)
    ph_e = np.exp(-1j * t * E)
    ph_c = np.exp(1j * t * cfg.Ecal)
    overlap = (ph_e / np.sqrt(2.0)) * np.array(
        [np.conj(bm1) / ph_c, np.conj(b1) * ph_c], dtype=complex
    )
    v_overlap = (B * ph_e / np.sqrt(2.0)) * np.array([1.0, 1.0], dtype=complex)
    n0 = (abs(bm1) ** 2 + abs(b1) ** 2) / 2.0
    scalar = 0.5 * np.conj(B) * (np.conj(b1) * ph_c + np.conj(bm1) / ph_c)
    return DegenerateElements(
        overlap=overlap, VPsi_overlap=v_overlap, N0=float(n0), scalar=complex(scalar)
    )
