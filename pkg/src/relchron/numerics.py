"""Dense complex linear algebra: tensor products, Hermitian eigensolver,
spectral propagators and kernel-excluding resolvents.

All routines are pure functions on immutable inputs. The eigensolver is a
cyclic Jacobi iteration with complex 2x2 rotations, which is deterministic
and accurate for the dense matrices (dim <= ~200) this package works with.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import KernelLeak, NoConvergence, NotHermitian

#: Relative off-diagonal Frobenius threshold at which Jacobi stops.
DEFAULT_TOL_EIG = 1e-12

#: Hard cap on Jacobi sweeps.
MAX_SWEEPS = 100


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    eigenvalues are ascending; eigenvectors are the matching orthonormal
    columns of ``vectors``. Each column's largest-magnitude component is
    made real and positive so the decomposition is reproducible.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def spectral_range(self) -> float:
        rng = float(self.eigenvalues[-1] - self.eigenvalues[0])
        return rng if rng > 0.0 else 1.0


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product with (i*rB + k, j*cB + l) index convention."""
    return np.kron(np.asarray(a), np.asarray(b))


def _check_hermitian(m: np.ndarray) -> None:
    fro = np.linalg.norm(m)
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > 1e-12 * max(fro, 1.0):
        raise NotHermitian(f"max |M - M^dag| = {dev:.3e} exceeds 1e-12 * ||M||_F")


def hermitian_eigensolve(m: np.ndarray, tol_eig: float = DEFAULT_TOL_EIG) -> Spectrum:
    """Diagonalize a Hermitian matrix by cyclic Jacobi rotations.

    Raises NotHermitian for non-Hermitian input and NoConvergence if the
    off-diagonal Frobenius norm is still above ``tol_eig * ||M||_F`` after
    MAX_SWEEPS sweeps.
    """
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotHermitian("matrix must be square")
    if not np.all(np.isfinite(a)):
        raise NotHermitian("matrix has non-finite entries")
    _check_hermitian(a)

    n = a.shape[0]
    fro = np.linalg.norm(a)
    threshold = tol_eig * max(fro, 1.0)
    # Rotations below this cannot push the off-diagonal norm above threshold.
    skip = threshold / max(n, 1)
    v = np.eye(n, dtype=complex)

    def _off_norm(x: np.ndarray) -> float:
        off_part = x - np.diag(np.diag(x))
        return float(np.linalg.norm(off_part))

    converged = False
    for _ in range(MAX_SWEEPS):
        off = _off_norm(a)
        if off <= threshold:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                absb = abs(apq)
                if absb <= skip:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                phase = apq / absb
                tau = (aqq - app) / (2.0 * absb)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c * phase

                ap = a[:, p].copy()
                aq = a[:, q]
                a[:, p] = c * ap - np.conj(s) * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :]
                a[p, :] = c * rp - s * rq
                a[q, :] = np.conj(s) * rp + c * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - np.conj(s) * vq
                v[:, q] = s * vp + c * vq
    if not converged:
        off = _off_norm(a)
        if off > threshold:
            raise NoConvergence(f"off-diagonal norm {off:.3e} after {MAX_SWEEPS} sweeps")

    eigvals = np.diag(a).real.copy()
    order = np.argsort(eigvals, kind="stable")
    eigvals = eigvals[order]
    v = v[:, order]
    # Fix each eigenvector's phase: largest-magnitude component real positive.
    for k in range(n):
        col = v[:, k]
        idx = int(np.argmax(np.abs(col)))
        pivot = col[idx]
        if abs(pivot) > 0.0:
            v[:, k] = col * (np.conj(pivot) / abs(pivot))
    return Spectrum(eigenvalues=eigvals, vectors=v)


def spectral_propagator(s: Spectrum, t: float, shift: float = 0.0) -> np.ndarray:
    """Unitary exp(-i t (H - shift)) built from the eigenbasis."""
    phases = np.exp(-1j * t * (s.eigenvalues - shift))
    return (s.vectors * phases) @ s.vectors.conj().T


def resolvent_apply(
    s: Spectrum, e0: float, kernel_tol: float, x: np.ndarray
) -> np.ndarray:
    """Apply (E0 - H)^{-1} restricted to the complement of the E0-eigenspace.

    Eigenvalues within ``kernel_tol * spectral_range`` of E0 are excluded.
    Raises KernelLeak if ``x`` has a relative component above 1e-8 inside the
    excluded subspace.
    """
    x = np.asarray(x, dtype=complex)
    coeffs = s.vectors.conj().T @ x
    excluded = np.abs(s.eigenvalues - e0) <= kernel_tol * s.spectral_range
    norm_x = np.linalg.norm(x)
    leak = np.linalg.norm(coeffs[excluded])
    if leak > 1e-8 * max(norm_x, 1e-300):
        raise KernelLeak(
            f"input has relative component {leak / max(norm_x, 1e-300):.3e} "
            "in the excluded eigenspace"
        )
    out = np.zeros_like(coeffs)
    keep = ~excluded
    out[keep] = coeffs[keep] / (e0 - s.eigenvalues[keep])
    return s.vectors @ out
