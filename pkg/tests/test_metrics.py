import time

import numpy as np
import pytest

from nfftk import Plan, errors
from nfftk.metrics import cost_estimate, error_e2, error_einf, time_mean10


class TestErrorE2:
    def test_zero_for_equal(self):
        f = np.array([1 + 2j, 3.0])
        assert error_e2(f, f) == 0.0

    def test_unit(self):
        assert error_e2([1, 0], [0, 0]) == 1.0

    def test_hand_value(self):
        assert error_e2([3, 4], [3, 0]) == pytest.approx(4 / 5, rel=1e-15)

    def test_zero_denominator(self):
        with pytest.raises(errors.UndefinedMetricError):
            error_e2([0, 0], [1, 0])

    def test_scale_invariance(self, rng):
        f = rng.standard_normal(64) + 1j * rng.standard_normal(64)
        g = f + 1e-3 * (rng.standard_normal(64) + 1j * rng.standard_normal(64))
        base = error_e2(f, g)
        assert error_e2(17.5 * f, 17.5 * g) == pytest.approx(base, rel=1e-15)


class TestErrorEinf:
    def test_zero_for_equal(self):
        f = np.array([1 + 2j, 3.0])
        assert error_einf(f, f, [1.0]) == 0.0

    def test_unit(self):
        assert error_einf([1, 0], [0, 0], [1]) == 1.0

    def test_hand_value(self):
        assert error_einf([2, -1], [0, 0], [1, 1]) == pytest.approx(1.0, rel=1e-15)

    def test_zero_denominator(self):
        with pytest.raises(errors.UndefinedMetricError):
            error_einf([1, 0], [0, 0], [0.0])


class TestCostEstimate:
    def test_documented_value(self):
        plan = Plan((512,), 1024, n=(1024,), m=8)
        assert cost_estimate(plan) == 512 + 1024 * 10 + 2 * 17 * 1024

    def test_monotone_in_nodes(self):
        a = Plan((64,), 100)
        b = Plan((64,), 200)
        assert cost_estimate(b) > cost_estimate(a)

    def test_gather_term_ratio_3d(self):
        small = Plan((32, 32, 32), 1000, n=(64, 64, 64), m=2)
        big = Plan((32, 32, 32), 1000, n=(64, 64, 64), m=8)
        fixed = 32**3 + 64**3 * np.log2(64**3)
        ratio = (cost_estimate(small) - fixed) / (cost_estimate(big) - fixed)
        assert ratio == pytest.approx((5 / 17) ** 3, rel=1e-12)


class TestTimeMean10:
    def test_noop_nonnegative(self):
        assert time_mean10(lambda: None, samples=3) >= 0.0

    def test_sleep_bounds(self):
        ms = time_mean10(lambda: time.sleep(0.001), samples=3)
        assert 1.0 <= ms <= 50.0
