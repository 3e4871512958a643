"""Two-sided sampling schemes and the stacked measurement system.

A scheme holds K time nodes and L frequency nodes.  Stacking the family's
evaluation matrix on the time nodes above its Fourier matrix on the frequency
nodes gives the (K+L) x order system whose minimum-norm solution recovers the
expansion coefficients.
"""

from __future__ import annotations

import enum
from dataclasses import InitVar, dataclass, field

import numpy as np

from .basis import BasisFamily, eval_matrix, fourier_matrix
from .linalg import as_vector, solve_min_norm, svd

DUPLICATE_TOL = 1e-9


class GridMode(str, enum.Enum):
    """Equispaced-grid conventions. SPACING_OVER_COUNT places `count` points
    with spacing (b-a)/count starting at a (right endpoint excluded);
    INCLUSIVE_ENDPOINTS spreads `count` points from a to b inclusive."""

    SPACING_OVER_COUNT = "spacing-over-count"
    INCLUSIVE_ENDPOINTS = "inclusive-endpoints"


class SystemClass(enum.Enum):
    INVERTIBLE = "invertible"
    NUMERICALLY_SINGULAR = "numerically-singular"
    RECTANGULAR = "rectangular"


def _canonical_nodes(values, name: str, allow_duplicates: bool) -> np.ndarray:
    nodes = np.atleast_1d(np.asarray(values, dtype=np.float64)) if values is not None else np.empty(0)
    if nodes.ndim != 1:
        raise ValueError(f"{name} must be 1-D")
    if nodes.size and not np.all(np.isfinite(nodes)):
        raise ValueError(f"{name} must be finite")
    nodes = np.sort(nodes)
    if not allow_duplicates and nodes.size > 1 and np.min(np.diff(nodes)) <= DUPLICATE_TOL:
        raise ValueError(f"{name} contains duplicate nodes (within {DUPLICATE_TOL:g})")
    nodes.flags.writeable = False
    return nodes


@dataclass(frozen=True, eq=False)
class SamplingScheme:
    """Ordered time nodes and frequency nodes.

    Nodes are canonically sorted; near-duplicates (within 1e-9) are rejected
    unless `allow_duplicates` is set, which keeps provably singular repeated
    configurations representable for singularity studies.
    """

    time_nodes: np.ndarray = field(default=None)
    freq_nodes: np.ndarray = field(default=None)
    allow_duplicates: InitVar[bool] = False

    def __post_init__(self, allow_duplicates: bool):
        t = _canonical_nodes(self.time_nodes, "time_nodes", allow_duplicates)
        w = _canonical_nodes(self.freq_nodes, "freq_nodes", allow_duplicates)
        if t.size + w.size < 1:
            raise ValueError("scheme needs at least one node")
        object.__setattr__(self, "time_nodes", t)
        object.__setattr__(self, "freq_nodes", w)

    @property
    def k(self) -> int:
        return self.time_nodes.size

    @property
    def l(self) -> int:
        return self.freq_nodes.size


@dataclass(frozen=True, eq=False)
class StackedSystem:
    """Measurement matrix plus the scheme and family it was assembled from."""

    matrix: np.ndarray
    scheme: SamplingScheme
    family: BasisFamily


def assemble(family: BasisFamily, scheme: SamplingScheme) -> StackedSystem:
    """Stack the time block over the frequency block, no row reordering."""
    top = eval_matrix(family, scheme.time_nodes).astype(np.complex128)
    bottom = fourier_matrix(family, scheme.freq_nodes)
    return StackedSystem(matrix=np.vstack([top, bottom]), scheme=scheme, family=family)


def recover(system: StackedSystem, c, c_hat, rtol: float | None = None) -> np.ndarray:
    """Minimum-norm least-squares coefficients from stacked measurements."""
    vc = as_vector(c, length=system.scheme.k, name="time measurements")
    vch = as_vector(c_hat, length=system.scheme.l, name="frequency measurements")
    return solve_min_norm(system.matrix, np.concatenate([vc.astype(np.complex128), vch.astype(np.complex128)]), rtol)


def synthesize(family: BasisFamily, coeffs, grid) -> np.ndarray:
    """Pointwise expansion sum_n alpha_n Phi_n(t) on the grid."""
    a = as_vector(coeffs, length=family.order, name="coefficients")
    return eval_matrix(family, grid).astype(np.complex128) @ a.astype(np.complex128)


def synthesize_fourier(family: BasisFamily, coeffs, grid) -> np.ndarray:
    """Pointwise transform-side expansion sum_n alpha_n F[Phi_n](omega)."""
    a = as_vector(coeffs, length=family.order, name="coefficients")
    return fourier_matrix(family, grid) @ a.astype(np.complex128)


def gen_equispaced(a: float, b: float, count: int, mode: GridMode) -> np.ndarray:
    """Equispaced nodes on [a, b] under the selected convention."""
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    mode = GridMode(mode)
    if mode is GridMode.SPACING_OVER_COUNT:
        return a + np.arange(count) * (b - a) / count
    if count == 1:
        return np.array([a])
    return a + np.arange(count) * (b - a) / (count - 1)


def gen_uniform_random(a: float, b: float, count: int, seed: int) -> np.ndarray:
    """Sorted iid uniform draws on (a, b) from a seeded generator.

    Draws landing within 1e-9 of each other are resampled so the result is
    always a valid strictly-increasing node set.
    """
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    rng = np.random.default_rng(seed)
    nodes = np.sort(rng.uniform(a, b, count))
    for _ in range(100):
        if nodes.size < 2:
            break
        close = np.flatnonzero(np.diff(nodes) <= DUPLICATE_TOL)
        if close.size == 0:
            break
        nodes[close + 1] = rng.uniform(a, b, close.size)
        nodes = np.sort(nodes)
    else:
        raise ValueError("could not draw distinct nodes after 100 resampling rounds")
    return nodes


def classify(system: StackedSystem, ratio_tol: float = 1.85e-5) -> SystemClass:
    """Numerical singularity classification of the assembled system.

    Square systems whose singular value ratio sigma_min/sigma_max falls below
    `ratio_tol` are NUMERICALLY_SINGULAR; non-square systems are RECTANGULAR.
    """
    m = system.matrix
    if m.shape[0] != m.shape[1]:
        return SystemClass.RECTANGULAR
    s = svd(m).singular_values
    if s[0] == 0.0 or s[-1] / s[0] < ratio_tol:
        return SystemClass.NUMERICALLY_SINGULAR
    return SystemClass.INVERTIBLE
