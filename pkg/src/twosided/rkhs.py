"""Finite-dimensional reproducing-kernel machinery for two-sided sampling.

Two kernel constructions are provided:

* `GramRKHS` - a span of basis functions with inner product given by a
  Hermitian positive-definite Gram matrix G, whose kernel is
  K(x, y) = Phi(x)^T G^{-1} Phi(y).

* `SobolevKernel` - the Fourier-symmetric kernel truncated to the first
  N+1 Hermite modes,

      K(x, y) = sum_n (n + 1/2)^{-1} phi_n(x) phi_n(y),

  whose frequency-evaluation representer carries the inverse-transform
  eigenphases i^n:

      L_omega(t) = sum_n (n + 1/2)^{-1} i^n phi_n(omega) phi_n(t).

The stacked block system pairs time representers K_t with frequency
representers L_omega; it is the Gram matrix of those representers and is
therefore Hermitian positive semidefinite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .basis import BasisFamily, eval_matrix, fourier_phase, hermite_block
from .linalg import as_vector, solve_min_norm
from .sampling import SamplingScheme

_HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class SobolevKernel:
    """Truncation of the Fourier-symmetric kernel to modes 0..truncation-1.

    Mode weights E_n = n + 1/2 are the harmonic-oscillator eigenvalues; the
    kernel uses their reciprocals.
    """

    truncation: int = 32

    def __post_init__(self):
        if self.truncation < 1:
            raise ValueError(f"truncation must be >= 1, got {self.truncation}")

    @property
    def weights(self) -> np.ndarray:
        """E_n = n + 1/2 for n = 0..truncation-1."""
        return np.arange(self.truncation) + 0.5


class GramRKHS:
    """Finite RKHS over a basis family with a positive-definite Gram matrix.

    The Cholesky factor of G is cached at construction so kernel evaluations
    apply G^{-1} without refactorizing; non-PD input fails here.
    """

    def __init__(self, family: BasisFamily, gram):
        g = np.asarray(gram, dtype=np.complex128)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError(f"Gram matrix must be square, got shape {g.shape}")
        if g.shape[0] != family.order:
            raise ValueError(f"Gram matrix size {g.shape[0]} != family order {family.order}")
        if np.linalg.norm(g - g.conj().T) > _HERMITICITY_TOL * max(1.0, np.linalg.norm(g)):
            raise ValueError("Gram matrix must be Hermitian")
        try:
            cho = scipy.linalg.cho_factor(g, lower=True)
        except np.linalg.LinAlgError as exc:
            raise ValueError(f"Gram matrix must be positive definite: {exc}") from exc
        self.family = family
        self.gram = g
        self._cho = cho

    def apply_inverse(self, vec: np.ndarray) -> np.ndarray:
        return scipy.linalg.cho_solve(self._cho, vec)


def gram_kernel_eval(rk: GramRKHS, x: float, y: float) -> complex:
    """K(x, y) = Phi(x)^T G^{-1} Phi(y)."""
    px = eval_matrix(rk.family, [x])[0].astype(np.complex128)
    py = eval_matrix(rk.family, [y])[0].astype(np.complex128)
    return complex(px @ rk.apply_inverse(py))


def sobolev_kernel_eval(kernel: SobolevKernel, x: float, y: float) -> float:
    """K(x, y) = sum_n E_n^{-1} phi_n(x) phi_n(y)."""
    inv = 1.0 / kernel.weights
    bx = hermite_block(kernel.truncation, [x])[0]
    by = hermite_block(kernel.truncation, [y])[0]
    return float(np.sum(inv * bx * by))


def freq_representer_eval(kernel: SobolevKernel, omega: float, t: float) -> complex:
    """L_omega(t) = sum_n E_n^{-1} i^n phi_n(omega) phi_n(t).

    This is the Riesz representer of f -> fhat(omega); equivalently the
    conjugate of the Fourier transform of K_t at omega.
    """
    n = np.arange(kernel.truncation)
    phases = np.conj(fourier_phase(n))  # i^n
    bw = hermite_block(kernel.truncation, [omega])[0]
    bt = hermite_block(kernel.truncation, [t])[0]
    return complex(np.sum(phases / kernel.weights * bw * bt))


def kernel_fourier_eval(kernel: SobolevKernel, t: float, omega: float) -> complex:
    """Khat_t(omega) = sum_n E_n^{-1} (-i)^n phi_n(omega) phi_n(t)."""
    n = np.arange(kernel.truncation)
    bw = hermite_block(kernel.truncation, [omega])[0]
    bt = hermite_block(kernel.truncation, [t])[0]
    return complex(np.sum(fourier_phase(n) / kernel.weights * bw * bt))


def _representer_blocks(kernel: SobolevKernel, scheme: SamplingScheme):
    """Weighted Hermite feature columns for the scheme's representers.

    Column j of the returned (truncation, K+L) array holds the Hermite
    coefficients of the j-th representer (K_{t_j} for time nodes, L_{omega_j}
    for frequency nodes).
    """
    inv = 1.0 / kernel.weights
    n = np.arange(kernel.truncation)
    bt = hermite_block(kernel.truncation, scheme.time_nodes)  # (K, N)
    bw = hermite_block(kernel.truncation, scheme.freq_nodes)  # (L, N)
    time_cols = (inv[None, :] * bt).T.astype(np.complex128)
    freq_cols = (inv[None, :] * bw).T * np.conj(fourier_phase(n))[:, None]
    return np.hstack([time_cols, freq_cols])


def assemble_block(kernel: SobolevKernel, scheme: SamplingScheme) -> np.ndarray:
    """The (K+L) x (K+L) two-sided interpolation matrix.

    Block layout: time rows first, then frequency rows; time columns first,
    then frequency columns.  Entry (row j, col i) is the value of the i-th
    representer (or its transform, for frequency rows) at the j-th node.
    """
    cols = _representer_blocks(kernel, scheme)  # coeffs of each representer
    bt = hermite_block(kernel.truncation, scheme.time_nodes).astype(np.complex128)
    bw = hermite_block(kernel.truncation, scheme.freq_nodes).astype(np.complex128)
    phases = fourier_phase(np.arange(kernel.truncation))  # (-i)^n
    top = bt @ cols                      # representer values at time nodes
    bottom = (bw * phases[None, :]) @ cols  # transformed values at freq nodes
    return np.vstack([top, bottom])


def rkhs_recover(kernel: SobolevKernel, scheme: SamplingScheme, c, c_hat,
                 rtol: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Representer coefficients (alpha, beta) solving the block system."""
    vc = as_vector(c, length=scheme.k, name="time measurements")
    vch = as_vector(c_hat, length=scheme.l, name="frequency measurements")
    rhs = np.concatenate([vc.astype(np.complex128), vch.astype(np.complex128)])
    sol = solve_min_norm(assemble_block(kernel, scheme), rhs, rtol)
    return sol[: scheme.k], sol[scheme.k:]


def rkhs_evaluate(kernel: SobolevKernel, scheme: SamplingScheme, alpha, beta, grid) -> np.ndarray:
    """f*(t) = sum_i alpha_i K_{t_i}(t) + sum_i beta_i L_{omega_i}(t) on the grid."""
    coeffs = _coeff_vector(kernel, scheme, alpha, beta)
    return hermite_block(kernel.truncation, grid).astype(np.complex128) @ coeffs


def rkhs_evaluate_fourier(kernel: SobolevKernel, scheme: SamplingScheme, alpha, beta, grid) -> np.ndarray:
    """The transform fhat* of the recovered interpolant on the grid."""
    coeffs = _coeff_vector(kernel, scheme, alpha, beta)
    phases = fourier_phase(np.arange(kernel.truncation))
    return (hermite_block(kernel.truncation, grid).astype(np.complex128) * phases[None, :]) @ coeffs


def _coeff_vector(kernel, scheme, alpha, beta) -> np.ndarray:
    a = as_vector(alpha, length=scheme.k, name="alpha")
    b = as_vector(beta, length=scheme.l, name="beta")
    weights = np.concatenate([a.astype(np.complex128), b.astype(np.complex128)])
    return _representer_blocks(kernel, scheme) @ weights
