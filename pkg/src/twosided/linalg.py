"""Dense complex linear algebra: SVD, pseudoinverse, min-norm least squares.

All solvers share one rank rule: a singular value sigma_i is treated as zero
when sigma_i <= rtol * sigma_max, with rtol defaulting to
max(rows, cols) * machine epsilon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class NumericFailure(RuntimeError):
    """Raised when a numerical routine fails to converge."""


def as_matrix(a) -> np.ndarray:
    """Validate and return `a` as a dense 2-D float or complex matrix.

    Rejects empty and non-finite input; real input is kept real (it embeds
    canonically in the complex matrices used elsewhere).
    """
    m = np.asarray(a)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"matrix must be at least 1x1, got shape {m.shape}")
    if np.iscomplexobj(m):
        m = m.astype(np.complex128, copy=False)
    else:
        m = m.astype(np.float64, copy=False)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def as_vector(b, length: int | None = None, name: str = "vector") -> np.ndarray:
    """Validate a 1-D measurement/coefficient vector, complex-capable."""
    v = np.asarray(b)
    if v.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got ndim={v.ndim}")
    v = v.astype(np.complex128, copy=False) if np.iscomplexobj(v) else v.astype(np.float64, copy=False)
    if v.size and not np.all(np.isfinite(v)):
        raise ValueError(f"{name} entries must be finite")
    if length is not None and v.size != length:
        raise ValueError(f"{name} has length {v.size}, expected {length}")
    return v


@dataclass(frozen=True, eq=False)
class SvdResult:
    """Thin SVD A = U diag(s) V^H with s nonincreasing and >= 0.

    `u` is rows x r, `v` is cols x r, r = min(rows, cols); both have
    orthonormal columns.
    """

    u: np.ndarray
    singular_values: np.ndarray
    v: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.singular_values) @ self.v.conj().T


def default_rtol(a: np.ndarray) -> float:
    return max(a.shape) * np.finfo(np.float64).eps


def svd(a) -> SvdResult:
    """Thin singular value decomposition of a dense matrix."""
    m = as_matrix(a)
    try:
        u, s, vh = np.linalg.svd(m, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(f"SVD did not converge: {exc}") from exc
    return SvdResult(u=u, singular_values=s, v=vh.conj().T)


def pseudoinverse(a, rtol: float | None = None) -> np.ndarray:
    """Moore-Penrose pseudoinverse via SVD.

    Singular values sigma_i <= rtol * sigma_max are inverted to zero (zeros
    left in place of vanishing singular values).
    """
    m = as_matrix(a)
    if rtol is None:
        rtol = default_rtol(m)
    if rtol < 0:
        raise ValueError(f"rtol must be >= 0, got {rtol}")
    res = svd(m)
    s = res.singular_values
    inv = np.zeros_like(s)
    if s.size and s[0] > 0:
        keep = s > rtol * s[0]
        inv[keep] = 1.0 / s[keep]
    return (res.v * inv) @ res.u.conj().T


def solve_min_norm(a, b, rtol: float | None = None) -> np.ndarray:
    """Minimum-norm least-squares solution x = A^+ b.

    Among all minimizers of ||A x - b||_2 this returns the one of smallest
    ||x||_2, applied through the SVD factors rather than by forming A^+.
    """
    m = as_matrix(a)
    vb = as_vector(b, length=m.shape[0], name="rhs")
    if rtol is None:
        rtol = default_rtol(m)
    if rtol < 0:
        raise ValueError(f"rtol must be >= 0, got {rtol}")
    res = svd(m)
    s = res.singular_values
    coeff = res.u.conj().T @ vb
    keep = s > rtol * s[0] if s.size and s[0] > 0 else np.zeros_like(s, dtype=bool)
    scaled = np.zeros_like(coeff)
    scaled[keep] = coeff[keep] / s[keep]
    return res.v @ scaled


def condition_number(a) -> float:
    """sigma_max / sigma_min over all min(rows, cols) singular values.

    Returns math.inf when sigma_min vanishes; the all-zero matrix has no
    condition number and raises.
    """
    m = as_matrix(a)
    s = svd(m).singular_values
    if s[0] == 0.0:
        raise ValueError("condition number undefined for the zero matrix")
    if s[-1] == 0.0:
        return math.inf
    return float(s[0] / s[-1])


def numerically_rank_deficient(a, rtol: float | None = None) -> bool:
    """True when the smallest singular value falls below the default cutoff,
    i.e. the matrix has less than full rank at working precision."""
    m = as_matrix(a)
    if rtol is None:
        rtol = default_rtol(m)
    s = svd(m).singular_values
    return bool(s[-1] <= rtol * s[0])
