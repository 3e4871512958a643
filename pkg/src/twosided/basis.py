"""Finite reconstruction families and their closed-form Fourier transforms.

Two families are supported:

* Hermite functions ``phi_n``, orthonormal on the real line and eigenfunctions
  of the unitary Fourier transform with eigenvalues ``(-i)^n``.  They are
  evaluated with the normalized three-term recurrence

      phi_n(x) = x sqrt(2/n) phi_{n-1}(x) - sqrt((n-1)/n) phi_{n-2}(x),

  seeded by ``phi_0(x) = pi^(-1/4) exp(-x^2/2)``, which stays bounded for
  large order where the factorial form overflows.

* Integer-shifted sinc functions ``s_n(t) = sinc((t - nT)/T)`` with
  ``sinc(x) = sin(pi x)/(pi x)``, whose unit-step transform is a pure phase
  on the band ``|omega| <= pi`` and zero outside.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

SQRT_2PI = math.sqrt(2.0 * math.pi)

# Fourier eigenvalue (-i)^n, period 4 in n.
_FOURIER_PHASE = np.array([1.0, -1.0j, -1.0, 1.0j], dtype=np.complex128)

# phi_0 underflows to exactly 0 long before |x| = 700; beyond that the
# recurrence seed is meaningless, so reject the input.
_HERMITE_X_LIMIT = 700.0


class FamilyKind(str, enum.Enum):
    HERMITE = "hermite"
    SHIFTED_SINC = "sinc"


@dataclass(frozen=True)
class BasisFamily:
    """A finite reconstruction family of `order` functions, indices 0..order-1.

    `step` is the shift spacing T of the sinc family and is ignored for
    Hermite.  Only the unit step T = 1 has a supported Fourier transform.
    """

    kind: FamilyKind
    order: int
    step: float = 1.0

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        if not (self.step > 0):
            raise ValueError(f"step must be > 0, got {self.step}")


def hermite_family(order: int) -> BasisFamily:
    return BasisFamily(kind=FamilyKind.HERMITE, order=order)


def sinc_family(order: int, step: float = 1.0) -> BasisFamily:
    return BasisFamily(kind=FamilyKind.SHIFTED_SINC, order=order, step=step)


def hermite_block(order: int, x) -> np.ndarray:
    """Evaluate phi_0..phi_{order-1} at the points `x`.

    Returns an array of shape (len(x), order); one recurrence pass yields
    every order at once.
    """
    pts = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if pts.ndim != 1:
        raise ValueError("x must be scalar or 1-D")
    if pts.size and np.max(np.abs(pts)) >= _HERMITE_X_LIMIT:
        raise ValueError(f"|x| must be < {_HERMITE_X_LIMIT}")
    out = np.zeros((pts.size, order))
    if order >= 1:
        out[:, 0] = math.pi ** -0.25 * np.exp(-0.5 * pts**2)
    if order >= 2:
        out[:, 1] = math.sqrt(2.0) * pts * out[:, 0]
    for n in range(2, order):
        out[:, n] = pts * math.sqrt(2.0 / n) * out[:, n - 1] - math.sqrt((n - 1) / n) * out[:, n - 2]
    return out


def hermite_eval(n: int, x: float) -> float:
    """phi_n(x) by the stable normalized recurrence."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return float(hermite_block(n + 1, [x])[0, n])


def fourier_phase(n) -> np.ndarray | complex:
    """(-i)^n, the Fourier eigenvalue of phi_n."""
    return _FOURIER_PHASE[np.asarray(n) % 4]


def hermite_fourier_eval(n: int, omega: float) -> complex:
    """F[phi_n](omega) = (-i)^n phi_n(omega)."""
    return complex(fourier_phase(n) * hermite_eval(n, omega))


def sinc_eval(n: int, t: float, step: float = 1.0) -> float:
    """s_n(t) = sinc((t - n*step)/step); 1 at its own node, 0 at the others."""
    if not (step > 0):
        raise ValueError(f"step must be > 0, got {step}")
    return float(np.sinc((t - n * step) / step))


def sinc_fourier_eval(n: int, omega: float, step: float = 1.0) -> complex:
    """F[s_n](omega) = e^{-i omega n} / sqrt(2 pi) on |omega| <= pi, else 0.

    The band boundary is included.  Only step = 1 is supported; the
    experiments use the unit-shift family exclusively.
    """
    if step != 1.0:
        raise ValueError("sinc Fourier evaluation supports step = 1 only")
    if abs(omega) > math.pi:
        return 0.0 + 0.0j
    return complex(np.exp(-1j * omega * n) / SQRT_2PI)


def eval_matrix(family: BasisFamily, nodes) -> np.ndarray:
    """Time-domain evaluation matrix, entry (i, j) = Phi_j(nodes[i]).

    Shape (len(nodes), order); an empty node vector yields an empty block,
    as used by one-sided schemes.
    """
    pts = np.atleast_1d(np.asarray(nodes, dtype=np.float64))
    if pts.size and not np.all(np.isfinite(pts)):
        raise ValueError("nodes must be finite")
    if family.kind is FamilyKind.HERMITE:
        return hermite_block(family.order, pts)
    shifts = np.arange(family.order) * family.step
    return np.sinc((pts[:, None] - shifts[None, :]) / family.step)


def fourier_matrix(family: BasisFamily, nodes) -> np.ndarray:
    """Frequency-domain evaluation matrix, entry (i, j) = F[Phi_j](nodes[i])."""
    pts = np.atleast_1d(np.asarray(nodes, dtype=np.float64))
    if pts.size and not np.all(np.isfinite(pts)):
        raise ValueError("nodes must be finite")
    if family.kind is FamilyKind.HERMITE:
        block = hermite_block(family.order, pts).astype(np.complex128)
        return block * fourier_phase(np.arange(family.order))[None, :]
    if pts.size == 0:
        return np.zeros((0, family.order), dtype=np.complex128)
    if family.step != 1.0:
        raise ValueError("sinc Fourier evaluation supports step = 1 only")
    shifts = np.arange(family.order)
    mat = np.exp(-1j * pts[:, None] * shifts[None, :]) / SQRT_2PI
    mat[np.abs(pts) > math.pi, :] = 0.0
    return mat
