"""Relative error metrics, the arithmetic cost model, and the timing protocol."""

import math
import time
from dataclasses import dataclass

import numpy as np

from .errors import UndefinedMetricError


@dataclass(frozen=True)
class ErrorReport:
    e2: float
    einf: float


@dataclass(frozen=True)
class TimingReport:
    precompute_ms: float
    trafo_ms: float
    samples: int = 10


def error_e2(f, ftilde):
    """Relative l2 error ||f - ftilde||_2 / ||f||_2."""
    f = np.asarray(f, dtype=np.complex128).ravel()
    ftilde = np.asarray(ftilde, dtype=np.complex128).ravel()
    if f.shape != ftilde.shape:
        raise UndefinedMetricError(f"length mismatch: {f.shape} vs {ftilde.shape}")
    denom = np.linalg.norm(f)
    if denom == 0.0:
        raise UndefinedMetricError("reference vector has zero norm")
    return float(np.linalg.norm(f - ftilde) / denom)


def error_einf(f, ftilde, fhat):
    """Sup-norm error normalized by the l1 norm of the coefficients."""
    f = np.asarray(f, dtype=np.complex128).ravel()
    ftilde = np.asarray(ftilde, dtype=np.complex128).ravel()
    if f.shape != ftilde.shape:
        raise UndefinedMetricError(f"length mismatch: {f.shape} vs {ftilde.shape}")
    denom = float(np.sum(np.abs(np.asarray(fhat, dtype=np.complex128))))
    if denom == 0.0:
        raise UndefinedMetricError("coefficient vector has zero l1 norm")
    return float(np.max(np.abs(f - ftilde)) / denom)


def error_report(f, ftilde, fhat):
    return ErrorReport(e2=error_e2(f, ftilde), einf=error_einf(f, ftilde, fhat))


def cost_estimate(plan):
    """Arithmetic cost model: |I_N| + |I_n| log2|I_n| + 2 (2m+1)^d M, rounded."""
    gather = 2 * (2 * plan.m + 1) ** plan.d * plan.M
    return int(round(plan.num_freqs + plan.grid_size * math.log2(plan.grid_size) + gather))


def time_mean10(fn, samples=10):
    """Mean wall-clock milliseconds over ``samples`` runs after one warm-up."""
    fn()
    total = 0.0
    for _ in range(samples):
        t0 = time.perf_counter()
        fn()
        total += time.perf_counter() - t0
    return total * 1000.0 / samples


def time_plan(plan, fhat, samples=10):
    """Timing report for a plan's precompute and forward transform."""
    pre_ms = time_mean10(plan.precompute, samples=samples)
    trafo_ms = time_mean10(lambda: plan.trafo(fhat), samples=samples)
    return TimingReport(precompute_ms=pre_ms, trafo_ms=trafo_ms, samples=samples)
