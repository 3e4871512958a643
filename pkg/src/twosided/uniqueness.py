"""Singularity and uniqueness analysis for two-sided schemes.

Covers the determinant locus of the 3x3 Hermite system (one time node, two
frequency nodes), singular-value-ratio heatmap scans over frequency pairs,
a finite proxy of the critical-density classifier, and the square-root node
set whose gap products converge to the critical value pi.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .basis import hermite_block, fourier_phase
from .linalg import NumericFailure


class Density(enum.Enum):
    SUPERCRITICAL = "supercritical"
    SUBCRITICAL = "subcritical"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class DensityVerdict:
    """Trailing-window gap-product proxies and the resulting classification.

    The proxies are finite stand-ins for an asymptotic lim sup; the verdict
    is only as good as the window makes it.
    """

    lambda_proxy: float
    mu_proxy: float
    verdict: Density
    window: int


def h2_locus(t0: float, omega0: float, omega1: float) -> complex:
    """The non-constant determinant factor of the 3x3 two-sided system.

    Returns t0^2 - omega0*omega1 - 1 + i*t0*(omega0 + omega1); for distinct
    frequency nodes the system is singular exactly on its zero set.
    """
    return complex(t0 * t0 - omega0 * omega1 - 1.0, t0 * (omega0 + omega1))


def heatmap_scan(t0: float, omega_grid, ratio_tol: float = 1.85e-5) -> tuple[np.ndarray, np.ndarray]:
    """Singular-value-ratio scan of the 3x3 system over frequency pairs.

    Entry (i, j) of the first array is log10(sigma_min/sigma_max) of the
    system with time node t0 and frequency nodes (omega_grid[i],
    omega_grid[j]); the second array flags ratios below `ratio_tol`.
    """
    grid = np.asarray(omega_grid, dtype=np.float64)
    if grid.ndim != 1 or grid.size < 2:
        raise ValueError("omega_grid must be 1-D with at least 2 points")
    if np.any(np.diff(grid) < 0):
        raise ValueError("omega_grid must be sorted ascending")
    r = grid.size
    time_row = hermite_block(3, [t0])[0].astype(np.complex128)  # (3,)
    freq_rows = hermite_block(3, grid).astype(np.complex128) * fourier_phase(np.arange(3))[None, :]  # (r, 3)
    ratio = np.empty((r, r))
    # block holds chunk*r 3x3 systems; cap it near 500k systems (~72 MB)
    chunk = max(1, min(r, 500_000 // r))
    for start in range(0, r, chunk):
        stop = min(start + chunk, r)
        systems = np.empty((stop - start, r, 3, 3), dtype=np.complex128)
        systems[:, :, 0, :] = time_row
        systems[:, :, 1, :] = freq_rows[start:stop, None, :]
        systems[:, :, 2, :] = freq_rows[None, :, :]
        try:
            sigma = np.linalg.svd(systems, compute_uv=False)
        except np.linalg.LinAlgError as exc:
            raise NumericFailure(f"batched SVD did not converge: {exc}") from exc
        ratio[start:stop] = sigma[:, :, 2] / sigma[:, :, 0]
    with np.errstate(divide="ignore"):
        log_ratio = np.log10(ratio)
    return log_ratio, ratio < ratio_tol


def density_classify(lambda_nodes, mu_nodes, window: int, tol: float) -> DensityVerdict:
    """Classify a node pair by trailing-window gap products.

    For each sorted node set the proxy is max over the last `window` gaps of
    |x_j| * (x_{j+1} - x_j).  Both proxies below pi - tol reads supercritical,
    both above pi + tol subcritical, anything else indeterminate.
    """
    if window < 2:
        raise ValueError(f"window must be >= 2, got {window}")
    lam = _checked_nodes(lambda_nodes, window, "lambda_nodes")
    mu = _checked_nodes(mu_nodes, window, "mu_nodes")
    lam_proxy = _trailing_gap_product(lam, window)
    mu_proxy = _trailing_gap_product(mu, window)
    if lam_proxy < math.pi - tol and mu_proxy < math.pi - tol:
        verdict = Density.SUPERCRITICAL
    elif lam_proxy > math.pi + tol and mu_proxy > math.pi + tol:
        verdict = Density.SUBCRITICAL
    else:
        verdict = Density.INDETERMINATE
    return DensityVerdict(lambda_proxy=lam_proxy, mu_proxy=mu_proxy, verdict=verdict, window=window)


def _checked_nodes(values, window: int, name: str) -> np.ndarray:
    nodes = np.asarray(values, dtype=np.float64)
    if nodes.ndim != 1:
        raise ValueError(f"{name} must be 1-D")
    if nodes.size <= window:
        raise ValueError(f"{name} needs more than window={window} nodes, got {nodes.size}")
    if np.any(np.diff(nodes) <= 0):
        raise ValueError(f"{name} must be sorted strictly ascending")
    return nodes


def _trailing_gap_product(nodes: np.ndarray, window: int) -> float:
    gaps = np.diff(nodes[-(window + 1):])
    return float(np.max(np.abs(nodes[-(window + 1):-1]) * gaps))


def rv_nodes(count: int) -> np.ndarray:
    """The square-root node set sqrt(2 pi n), n = 0..count-1."""
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    return np.sqrt(2.0 * math.pi * np.arange(count))
