"""Tests for the kernel machinery.

The truncated Fourier-symmetric kernel has closed-form entries (weighted sums
of Hermite products), so independent oracles are easy: direct summation with
the factorial-form Hermite evaluation, trapezoid quadrature for transformed
representers, and eigendecompositions for positivity.
"""

import math

import numpy as np
import pytest

from twosided.basis import hermite_block, hermite_family
from twosided.rkhs import (
    GramRKHS,
    SobolevKernel,
    assemble_block,
    freq_representer_eval,
    gram_kernel_eval,
    kernel_fourier_eval,
    rkhs_evaluate,
    rkhs_evaluate_fourier,
    rkhs_recover,
    sobolev_kernel_eval,
)
from twosided.sampling import SamplingScheme
from twosided.linalg import condition_number

from _oracles import hermite_factorial_form, quad_fourier


def direct_kernel_sum(n_modes, x, y):
    return sum(hermite_factorial_form(n, x) * hermite_factorial_form(n, y) / (n + 0.5)
               for n in range(n_modes))


class TestSobolevKernel:
    def test_weights(self):
        np.testing.assert_allclose(SobolevKernel(4).weights, [0.5, 1.5, 2.5, 3.5])

    def test_single_mode_at_origin(self):
        # 2 * phi_0(0)^2 = 2 / sqrt(pi)
        assert sobolev_kernel_eval(SobolevKernel(1), 0.0, 0.0) == pytest.approx(
            1.1283791670955126, abs=1e-12)

    @pytest.mark.parametrize("seed", range(4))
    def test_symmetry(self, seed):
        rng = np.random.default_rng(seed)
        k = SobolevKernel(9)
        x, y = rng.uniform(-3, 3, 2)
        assert sobolev_kernel_eval(k, x, y) == pytest.approx(sobolev_kernel_eval(k, y, x), abs=1e-13)

    def test_direct_summation_oracle(self):
        k = SobolevKernel(9)
        assert sobolev_kernel_eval(k, 0.3, -1.1) == pytest.approx(
            direct_kernel_sum(9, 0.3, -1.1), abs=1e-12)

    def test_invalid_truncation(self):
        with pytest.raises(ValueError):
            SobolevKernel(0)


class TestFreqRepresenter:
    def test_single_mode(self):
        k = SobolevKernel(1)
        for t in (0.0, 0.7, -2.1):
            expected = 2.0 * hermite_factorial_form(0, 0.0) * hermite_factorial_form(0, t)
            assert freq_representer_eval(k, 0.0, t) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("n_modes", [1, 4, 8])
    def test_quadrature_oracle(self, n_modes):
        # L_omega(t) = (1/sqrt(2pi)) int K(t, s) e^{i omega s} ds
        k = SobolevKernel(n_modes)
        t, omega = 0.4, -0.9
        grid = np.linspace(-20, 20, 20001)
        kvals = hermite_block(n_modes, grid) / k.weights[None, :] @ hermite_block(n_modes, [t])[0]
        numeric = np.trapezoid(kvals * np.exp(1j * omega * grid), grid) / math.sqrt(2 * math.pi)
        assert freq_representer_eval(k, omega, t) == pytest.approx(numeric, abs=1e-6)

    def test_conjugate_is_kernel_transform(self):
        k = SobolevKernel(7)
        rng = np.random.default_rng(12)
        for _ in range(5):
            t, w = rng.uniform(-2, 2, 2)
            assert np.conj(freq_representer_eval(k, w, t)) == pytest.approx(
                kernel_fourier_eval(k, t, w), abs=1e-13)


class TestKernelFourier:
    def test_single_mode_real(self):
        k = SobolevKernel(1)
        val = kernel_fourier_eval(k, 0.5, 1.5)
        assert val.imag == pytest.approx(0.0, abs=1e-15)
        assert val.real == pytest.approx(2.0 * hermite_factorial_form(0, 0.5) * hermite_factorial_form(0, 1.5), abs=1e-12)

    @pytest.mark.parametrize("n_modes", [2, 5, 8])
    def test_quadrature_oracle(self, n_modes):
        # Khat_t(omega) = (1/sqrt(2pi)) int K(s, t) e^{-i omega s} ds
        k = SobolevKernel(n_modes)
        t, omega = -0.6, 1.3
        numeric = quad_fourier(
            lambda s: hermite_block(n_modes, s) / k.weights[None, :] @ hermite_block(n_modes, [t])[0],
            [omega], step=2e-3)[0]
        assert kernel_fourier_eval(k, t, omega) == pytest.approx(numeric, abs=1e-6)


class TestAssembleBlock:
    def test_single_time_node_positive(self):
        k = SobolevKernel(16)
        block = assemble_block(k, SamplingScheme([0.3], None))
        assert block.shape == (1, 1)
        assert block[0, 0].real > 0

    def test_hermitian(self):
        k = SobolevKernel(12)
        block = assemble_block(k, SamplingScheme([0.0], [1.0]))
        assert np.linalg.norm(block - block.conj().T) < 1e-12

    def test_entries_match_pointwise_kernels(self):
        k = SobolevKernel(10)
        scheme = SamplingScheme([0.2, 1.1], [-0.4])
        block = assemble_block(k, scheme)
        t, w = scheme.time_nodes, scheme.freq_nodes
        assert block[0, 1] == pytest.approx(sobolev_kernel_eval(k, t[1], t[0]), abs=1e-13)
        assert block[0, 2] == pytest.approx(freq_representer_eval(k, w[0], t[0]), abs=1e-13)
        assert block[2, 0] == pytest.approx(kernel_fourier_eval(k, t[0], w[0]), abs=1e-13)
        # bottom-right is the Fourier-symmetric kernel itself
        assert block[2, 2] == pytest.approx(sobolev_kernel_eval(k, w[0], w[0]), abs=1e-13)

    @pytest.mark.parametrize("seed", range(4))
    def test_positive_semidefinite(self, seed):
        rng = np.random.default_rng(40 + seed)
        k = SobolevKernel(20)
        scheme = SamplingScheme(np.sort(rng.uniform(-2, 2, 3)), np.sort(rng.uniform(-2, 2, 3)))
        block = assemble_block(k, scheme)
        eigs = np.linalg.eigvalsh(block)
        assert eigs.min() >= -1e-10

    def test_repeated_time_node_singular(self):
        k = SobolevKernel(16)
        scheme = SamplingScheme([0.5, 0.5], None, allow_duplicates=True)
        block = assemble_block(k, scheme)
        s = np.linalg.svd(block, compute_uv=False)
        assert s[-1] / s[0] < 1.85e-5

    def test_fourier_symmetry_of_kernel(self):
        # swapping time and frequency roles leaves the kernel unchanged
        k = SobolevKernel(14)
        x, y = 0.8, -1.3
        freq_only = assemble_block(k, SamplingScheme(None, [x, y]))
        assert freq_only[0, 1] == pytest.approx(sobolev_kernel_eval(k, x, y), abs=1e-13)


class TestRkhsRecover:
    def test_forward_then_invert(self):
        k = SobolevKernel(24)
        scheme = SamplingScheme([-1.0, 0.2, 1.4], [-0.8, 0.9])
        block = assemble_block(k, scheme)
        cond = condition_number(block)
        assert math.isfinite(cond)
        rng = np.random.default_rng(2)
        coeffs0 = rng.normal(size=5) + 1j * rng.normal(size=5)
        rhs = block @ coeffs0
        alpha, beta = rkhs_recover(k, scheme, rhs[:3], rhs[3:])
        got = np.concatenate([alpha, beta])
        assert np.linalg.norm(got - coeffs0) <= 1e-8 * cond * np.linalg.norm(coeffs0)

    def test_zero_data(self):
        k = SobolevKernel(8)
        scheme = SamplingScheme([0.0, 1.0], [0.5])
        alpha, beta = rkhs_recover(k, scheme, [0.0, 0.0], [0.0])
        np.testing.assert_array_equal(alpha, np.zeros(2))
        np.testing.assert_array_equal(beta, np.zeros(1))

    def test_interpolation_consistency(self):
        k = SobolevKernel(24)
        scheme = SamplingScheme([-0.7, 0.3, 1.1], [-1.2, 0.4])
        rng = np.random.default_rng(8)
        c = rng.normal(size=3)
        c_hat = rng.normal(size=2) + 1j * rng.normal(size=2)
        alpha, beta = rkhs_recover(k, scheme, c, c_hat)
        f_at_nodes = rkhs_evaluate(k, scheme, alpha, beta, scheme.time_nodes)
        fhat_at_nodes = rkhs_evaluate_fourier(k, scheme, alpha, beta, scheme.freq_nodes)
        assert np.linalg.norm(f_at_nodes - c) <= 1e-8 * np.linalg.norm(c)
        assert np.linalg.norm(fhat_at_nodes - c_hat) <= 1e-8 * np.linalg.norm(c_hat)

    def test_dimension_mismatch(self):
        k = SobolevKernel(8)
        with pytest.raises(ValueError):
            rkhs_recover(k, SamplingScheme([0.0], [1.0]), [0.0, 0.0], [0.0])

    @pytest.mark.parametrize("seed", range(4))
    def test_interpolant_has_minimal_weighted_norm(self, seed):
        # the recovered interpolant is the minimum-norm element matching the
        # data, so its weighted coefficient norm never exceeds that of the
        # function the data came from
        from twosided.rkhs import _representer_blocks
        from twosided.basis import hermite_block, fourier_phase

        rng = np.random.default_rng(660 + seed)
        k = SobolevKernel(24)
        scheme = SamplingScheme(np.sort(rng.uniform(-2, 2, 3)), np.sort(rng.uniform(-2, 2, 2)))
        a = rng.normal(size=k.truncation)
        c = hermite_block(k.truncation, scheme.time_nodes) @ a
        c_hat = (hermite_block(k.truncation, scheme.freq_nodes)
                 * fourier_phase(np.arange(k.truncation))[None, :]) @ a.astype(complex)
        alpha, beta = rkhs_recover(k, scheme, c, c_hat)
        coeffs = _representer_blocks(k, scheme) @ np.concatenate([alpha, beta])
        norm_star = np.sum(k.weights * np.abs(coeffs) ** 2)
        norm_f = np.sum(k.weights * a**2)
        assert norm_star <= norm_f * (1 + 1e-9)
        # and it still interpolates the data
        f_nodes = rkhs_evaluate(k, scheme, alpha, beta, scheme.time_nodes)
        assert np.linalg.norm(f_nodes - c) <= 1e-8 * max(1.0, np.linalg.norm(c))


class TestReproducingProperty:
    @pytest.mark.parametrize("seed", range(3))
    def test_weighted_inner_product_reproduces(self, seed):
        # <f, K_y> in the E_n-weighted inner product equals f(y)
        rng = np.random.default_rng(70 + seed)
        n_modes = 16
        k = SobolevKernel(n_modes)
        a = rng.normal(size=n_modes)
        y = float(rng.uniform(-2, 2))
        kernel_coeffs = hermite_block(n_modes, [y])[0] / k.weights
        inner = np.sum(a * k.weights * kernel_coeffs)
        f_y = float(hermite_block(n_modes, [y])[0] @ a)
        assert inner == pytest.approx(f_y, abs=1e-10)


class TestGramRKHS:
    def test_identity_gram_matches_plain_sum(self):
        fam = hermite_family(3)
        rk = GramRKHS(fam, np.eye(3))
        x, y = 0.4, -0.2
        expected = float(hermite_block(3, [x])[0] @ hermite_block(3, [y])[0])
        assert gram_kernel_eval(rk, x, y) == pytest.approx(expected, abs=1e-13)

    def test_diagonal_weights_match_sobolev(self):
        n_modes = 10
        fam = hermite_family(n_modes)
        k = SobolevKernel(n_modes)
        rk = GramRKHS(fam, np.diag(k.weights))
        rng = np.random.default_rng(21)
        for _ in range(6):
            x, y = rng.uniform(-2.5, 2.5, 2)
            assert gram_kernel_eval(rk, x, y) == pytest.approx(
                sobolev_kernel_eval(k, x, y), abs=1e-12)

    def test_diagonal_value_nonnegative(self):
        rk = GramRKHS(hermite_family(1), np.eye(1))
        assert gram_kernel_eval(rk, 0.3, 0.3).real >= 0

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            GramRKHS(hermite_family(2), np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_rejects_non_positive_definite(self):
        with pytest.raises(ValueError):
            GramRKHS(hermite_family(2), np.diag([1.0, -1.0]))

    def test_rejects_size_mismatch(self):
        with pytest.raises(ValueError):
            GramRKHS(hermite_family(3), np.eye(2))
