"""Independent numerical oracles used across the test suite.

These deliberately avoid the library's own evaluation paths: quadrature for
Fourier transforms, the factorial-form Hermite definition via scipy, a naive
O(n^2) DFT, and plain matrix identities.
"""

import math

import numpy as np
from scipy.special import eval_hermite, factorial

SQRT_2PI = math.sqrt(2.0 * math.pi)


def quad_grid(t_min=-20.0, t_max=20.0, step=1e-3):
    n = int(round((t_max - t_min) / step)) + 1
    return np.linspace(t_min, t_max, n)


def quad_fourier(func, omegas, t_min=-20.0, t_max=20.0, step=1e-3):
    """Trapezoid quadrature of (1/sqrt(2pi)) integral f(t) e^{-i w t} dt."""
    t = quad_grid(t_min, t_max, step)
    f = np.asarray(func(t))
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    kernel = np.exp(-1j * np.outer(omegas, t))
    return np.trapezoid(kernel * f[None, :], t, axis=1) / SQRT_2PI


def quad_inverse_fourier(func, ts, w_min=-20.0, w_max=20.0, step=1e-3):
    """Trapezoid quadrature of (1/sqrt(2pi)) integral f(w) e^{+i w t} dw."""
    w = quad_grid(w_min, w_max, step)
    f = np.asarray(func(w))
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    kernel = np.exp(1j * np.outer(ts, w))
    return np.trapezoid(kernel * f[None, :], w, axis=1) / SQRT_2PI


def quad_inner(f_vals, g_vals, t):
    return np.trapezoid(f_vals * g_vals, t)


def hermite_factorial_form(n, x):
    """phi_n via the factorial normalization of the Hermite polynomial.

    Only usable for moderate n before the factors overflow.
    """
    x = np.asarray(x, dtype=float)
    norm = math.sqrt(2.0**n * factorial(n, exact=True) * math.sqrt(math.pi))
    return eval_hermite(n, x) * np.exp(-0.5 * x**2) / norm


def hermite_mpmath(n, x, dps=60):
    """phi_n(x) in arbitrary precision; reference for large order."""
    import mpmath

    with mpmath.workdps(dps):
        hx = mpmath.hermite(n, mpmath.mpf(x))
        norm = mpmath.sqrt(mpmath.power(2, n) * mpmath.factorial(n) * mpmath.sqrt(mpmath.pi))
        return float(hx * mpmath.exp(-mpmath.mpf(x) ** 2 / 2) / norm)


def naive_dft(x):
    """Direct O(n^2) DFT, X_k = sum_m x[m] e^{-i 2 pi k m / n}."""
    x = np.asarray(x)
    n = x.size
    k = np.arange(n)
    return np.exp(-2j * math.pi * np.outer(k, k) / n) @ x.astype(np.complex128)


def random_unitary(n, rng):
    q, r = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return q * (np.diag(r) / np.abs(np.diag(r)))
