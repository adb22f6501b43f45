import numpy as np
import pytest

from nfftk.fft import dft_ref, fft_1d, fft_nd


def rel(a, b):
    return np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300)


class TestDftRef:
    def test_impulse(self):
        v = np.array([1, 0, 0, 0], dtype=complex)
        for s in (-1, 1):
            assert np.allclose(dft_ref(v, s), np.ones(4), atol=1e-15)

    def test_constant(self):
        v = np.ones(4, dtype=complex)
        out = dft_ref(v, -1)
        assert np.allclose(out, [4, 0, 0, 0], atol=1e-12)

    def test_inversion_identity(self, rng):
        v = rng.standard_normal(12) + 1j * rng.standard_normal(12)
        assert rel(dft_ref(dft_ref(v, -1), 1), 12 * v) < 1e-13

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            dft_ref(np.ones(4, dtype=complex), 2)


class TestFft1d:
    @pytest.mark.parametrize("n", list(range(2, 65, 2)) + [514, 614, 716, 1024])
    def test_matches_reference_even_lengths(self, rng, n):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        for s in (-1, 1):
            assert rel(fft_1d(v, s), dft_ref(v, s)) <= 1e-12

    def test_impulse_all_ones(self):
        v = np.zeros(16, dtype=complex)
        v[0] = 1.0
        assert np.allclose(fft_1d(v, -1), np.ones(16), atol=1e-15)

    def test_large_power_of_two(self, rng):
        v = rng.standard_normal(1024) + 1j * rng.standard_normal(1024)
        assert rel(fft_1d(v, -1), dft_ref(v, -1)) <= 1e-12

    def test_batched_rows_match_loop(self, rng):
        a = rng.standard_normal((5, 24)) + 1j * rng.standard_normal((5, 24))
        batch = fft_1d(a, -1)
        for i in range(5):
            assert np.array_equal(batch[i], fft_1d(a[i], -1))

    @pytest.mark.parametrize("n", [2, 6, 16, 50, 514])
    def test_parseval(self, rng, n):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        lhs = np.linalg.norm(fft_1d(v, -1)) ** 2
        assert lhs == pytest.approx(n * np.linalg.norm(v) ** 2, rel=1e-12)

    def test_linearity(self, rng):
        u = rng.standard_normal(36) + 1j * rng.standard_normal(36)
        v = rng.standard_normal(36) + 1j * rng.standard_normal(36)
        a, b = 1.7 - 0.3j, -0.4 + 2.1j
        assert rel(fft_1d(a * u + b * v, -1), a * fft_1d(u, -1) + b * fft_1d(v, -1)) < 1e-12


class TestFftNd:
    def test_2d_impulse(self):
        t = np.zeros((8, 8), dtype=complex)
        t[0, 0] = 1.0
        assert np.allclose(fft_nd(t, -1), np.ones((8, 8)), atol=1e-15)

    def test_2d_vs_nested_reference(self, rng):
        t = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        ref = np.array([dft_ref(row, -1) for row in t])
        ref = np.array([dft_ref(col, -1) for col in ref.T]).T
        assert rel(fft_nd(t, -1), ref) <= 1e-12

    def test_inversion_identity(self, rng):
        t = rng.standard_normal((4, 6, 10)) + 1j * rng.standard_normal((4, 6, 10))
        assert rel(fft_nd(fft_nd(t, -1), 1), t.size * t) < 1e-12

    @pytest.mark.parametrize("shape", [(8,), (6, 10), (4, 4, 12)])
    def test_against_numpy(self, rng, shape):
        t = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        assert rel(fft_nd(t, -1), np.fft.fftn(t)) < 1e-12
        assert rel(fft_nd(t, 1), np.fft.ifftn(t) * t.size) < 1e-12
