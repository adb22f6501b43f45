import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import i0 as scipy_i0

from nfftk import errors, window
from nfftk.window import WindowModel, bessel_i0, phi_hat_oracle


def make(kind, N=16, sigma=2.0, m=4):
    n = int(round(N * sigma))
    return WindowModel.make(kind, (N,), (n,), m)


class TestModelValidation:
    def test_unknown_kind(self):
        with pytest.raises(errors.NfftError):
            WindowModel.make("bspline", (16,), (32,), 4)

    def test_oversampling_required(self):
        with pytest.raises(errors.NfftError):
            WindowModel.make("kaiserbessel", (16,), (16,), 4)

    def test_support_below_half(self):
        with pytest.raises(errors.NfftError):
            WindowModel.make("kaiserbessel", (16,), (18,), 9)


class TestPhi:
    def test_gaussian_peak_value(self):
        w = make("gaussian")
        sigma = w.sigma[0]
        b = 2.0 * sigma * w.m / ((2.0 * sigma - 1.0) * math.pi)
        assert w.phi(0.0) == pytest.approx((math.pi * b) ** -0.5, rel=1e-15)

    @pytest.mark.parametrize("kind", ["kaiserbessel", "gaussian"])
    def test_even(self, kind, rng):
        w = make(kind)
        t = (rng.random(100) - 0.5) * 0.9
        assert np.array_equal(w.phi(t), w.phi(-t))

    def test_kb_support_edge_is_finite_limit(self):
        # removable singularity at |t| = m/n: sinh(bz)/(pi z) -> b/pi
        w = make("kaiserbessel")
        edge = w.m / w.n[0]
        assert w.phi(edge) == pytest.approx(w.b[0] / math.pi, rel=1e-12)

    def test_positive_inside_support(self, rng):
        for kind in ("kaiserbessel", "gaussian"):
            w = make(kind)
            t = (rng.random(50) - 0.5) * (2 * w.m / w.n[0] * 0.999)
            assert np.all(w.phi(t) > 0)


class TestPsi:
    def test_outside_support_zero(self):
        w = make("kaiserbessel")
        assert w.psi(2.0 * w.m / w.n[0]) == 0.0

    def test_inside_equals_phi(self):
        w = make("kaiserbessel")
        assert w.psi(0.0) == w.phi(0.0)
        edge = w.m / w.n[0]
        assert w.psi(edge) == w.phi(edge)  # closed support interval

    @pytest.mark.parametrize("kind", ["kaiserbessel", "gaussian"])
    def test_truncation_mass_below_full_tail(self, kind):
        # |phi - psi| on one period is a subset of the full tail mass
        # (equality only in the limit of a window with no mass beyond 1/2)
        w = make(kind, m=2)
        cut = w.m / w.n[0]
        inner = quad(lambda t: abs(w.phi(t) - w.psi(t)), cut, 0.5, limit=400)[0] * 2.0
        tail = 2.0 * quad(lambda t: abs(w.phi(t)), cut, 2.0, limit=800)[0]
        assert 0.0 < inner <= tail * (1.0 + 1e-9)  # slack covers quadrature noise
        if kind == "kaiserbessel":  # oscillating 1/x tail keeps mass beyond one period
            assert inner < tail

    def test_periodization_single_wrap(self):
        # with m/n < 1/2 the 3-term shifted sum collapses to one translate
        for kind in ("kaiserbessel", "gaussian"):
            w = make(kind)
            t = np.linspace(-0.5, 0.5, 101, endpoint=False)
            three = w.psi(t - 1.0) + w.psi(t) + w.psi(t + 1.0)
            wrapped = np.mod(t + 0.5, 1.0) - 0.5
            assert np.allclose(three, w.psi(wrapped), rtol=0, atol=1e-300)


class TestPhiHat:
    def test_gaussian_dc_value(self):
        w = make("gaussian")
        assert w.phi_hat(0) == pytest.approx(1.0 / w.n[0], rel=1e-15)

    @pytest.mark.parametrize("kind", ["kaiserbessel", "gaussian"])
    def test_even_in_k(self, kind):
        w = make(kind, N=16)
        for k in range(0, 9):
            assert w.phi_hat(k) == w.phi_hat(-k)

    def test_out_of_range_k(self):
        w = make("kaiserbessel")
        with pytest.raises(errors.NfftError):
            w.phi_hat(w.n[0] // 2 + 1)

    def test_positive_over_deconvolution_range(self):
        for kind in ("kaiserbessel", "gaussian"):
            w = make(kind, N=16, sigma=2.0)
            for k in range(-8, 9):
                assert w.phi_hat(k) > 0

    def test_table_covers_closed_range(self):
        w = make("kaiserbessel", N=16)
        tab = w.phi_hat_table(0, kmax=8)
        assert tab.shape == (17,)
        assert tab[8] == w.phi_hat(0)


class TestCk:
    def test_zero_vector(self):
        w = WindowModel.make("kaiserbessel", (16, 8), (32, 20), 4)
        assert w.ck((0, 0)) == pytest.approx(w.phi_hat(0, 0) * w.phi_hat(0, 1), rel=1e-15)

    def test_tensor_structure(self, rng):
        w = WindowModel.make("gaussian", (16, 16), (32, 32), 4)
        for _ in range(50):
            a, b = rng.integers(-8, 9, size=2)
            assert w.ck((a, b)) == pytest.approx(
                w.phi_hat(int(a), 0) * w.phi_hat(int(b), 1), rel=1e-15
            )

    @pytest.mark.parametrize("kind", ["kaiserbessel", "gaussian"])
    def test_positive_on_full_box(self, kind):
        w = WindowModel.make(kind, (16, 16), (32, 32), 4)
        from nfftk.indexing import index_set

        for k in index_set((16, 16)):
            assert w.ck(tuple(k)) > 0


class TestBesselI0:
    def test_against_scipy(self):
        for x in np.linspace(0.0, 120.0, 25):
            assert bessel_i0(float(x)) == pytest.approx(float(scipy_i0(x)), rel=1e-13)


class TestOracle:
    def test_gaussian_dc(self):
        w = make("gaussian")
        assert phi_hat_oracle(w, 0) == pytest.approx(w.phi_hat(0), rel=1e-10)

    def test_kb_edge_frequency(self):
        w = make("kaiserbessel", N=16, sigma=2.0, m=4)
        k = 8  # N/2
        assert phi_hat_oracle(w, k) == pytest.approx(w.phi_hat(k), rel=1e-8)

    def test_kb_dc_vs_plain_quadrature(self):
        w = make("kaiserbessel")
        assert phi_hat_oracle(w, 0) == pytest.approx(w.phi_hat(0), rel=1e-10)

    @pytest.mark.parametrize("kind", ["kaiserbessel", "gaussian"])
    def test_evenness(self, kind):
        w = make(kind, N=8, sigma=1.25, m=2)
        for k in (1, 3):
            assert phi_hat_oracle(w, k) == pytest.approx(phi_hat_oracle(w, -k), rel=1e-11)


@pytest.mark.slow
class TestClosedFormsAgainstOracle:
    """Full sweep gating both closed forms; runtime dominated by the
    oscillatory kaiserbessel tail integrals."""

    @pytest.mark.parametrize("kind", ["kaiserbessel", "gaussian"])
    @pytest.mark.parametrize("N", [8, 16, 32])
    @pytest.mark.parametrize("sigma", [1.25, 2.0])
    @pytest.mark.parametrize("m", [2, 4, 8])
    def test_agreement(self, kind, N, sigma, m):
        if m / (N * sigma) >= 0.5:
            pytest.skip("window support needs m/n < 1/2; combination not constructible")
        w = make(kind, N=N, sigma=sigma, m=m)
        worst = 0.0
        for k in range(0, N // 2 + 1):
            closed = w.phi_hat(k)
            orc = phi_hat_oracle(w, k)
            worst = max(worst, abs(orc - closed) / abs(closed))
        assert worst <= 1e-8
