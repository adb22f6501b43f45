"""Self-contained complex FFT for arbitrary even lengths, both exponent signs.

Power-of-two lengths run an iterative radix-2 engine with cached twiddle
tables; every other length goes through the Bluestein chirp-z reduction to a
power-of-two convolution of length >= 2n - 1.  Transforms are unnormalized in
both directions: ``fft(fft(v, -1), +1) == n * v``.

All twiddle/chirp caches are immutable after first construction and shared
across threads.
"""

import threading

import numpy as np

# RLock: building Bluestein tables runs the power-of-two path under the lock
_CACHE_LOCK = threading.RLock()
_POW2_CACHE = {}
_BLUESTEIN_CACHE = {}


def dft_ref(v, sign):
    """O(n^2) reference transform: out[l] = sum_k v[k] exp(sign 2 pi i k l / n)."""
    v = np.asarray(v, dtype=np.complex128)
    n = v.shape[-1]
    if sign not in (-1, 1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    k = np.arange(n)
    w = np.exp(sign * 2j * np.pi * np.outer(k, k) / n)
    return v @ w.T


def _pow2_tables(n, sign):
    key = (n, sign)
    tab = _POW2_CACHE.get(key)
    if tab is not None:
        return tab
    with _CACHE_LOCK:
        tab = _POW2_CACHE.get(key)
        if tab is not None:
            return tab
        stages = []
        half = 1
        while half < n:
            ang = sign * 2j * np.pi * np.arange(half) / (2 * half)
            stages.append(np.exp(ang))
            half *= 2
        # bit-reversal permutation
        rev = np.zeros(n, dtype=np.int64)
        bits = n.bit_length() - 1
        for i in range(n):
            r = 0
            x = i
            for _ in range(bits):
                r = (r << 1) | (x & 1)
                x >>= 1
            rev[i] = r
        tab = (rev, stages)
        _POW2_CACHE[key] = tab
        return tab


def _fft_pow2(a, sign):
    """Radix-2 transform along the last axis of a (batch, n) array."""
    n = a.shape[-1]
    if n == 1:
        return a.copy()
    rev, stages = _pow2_tables(n, sign)
    a = np.ascontiguousarray(a[..., rev])
    for w in stages:
        half = w.shape[0]
        blk = a.reshape(a.shape[:-1] + (n // (2 * half), 2, half))
        t = blk[..., 1, :] * w
        hi = blk[..., 0, :] - t
        blk[..., 0, :] += t
        blk[..., 1, :] = hi
    return a


def _bluestein_tables(n, sign):
    key = (n, sign)
    tab = _BLUESTEIN_CACHE.get(key)
    if tab is not None:
        return tab
    with _CACHE_LOCK:
        tab = _BLUESTEIN_CACHE.get(key)
        if tab is not None:
            return tab
        L = 1
        while L < 2 * n - 1:
            L *= 2
        k = np.arange(n, dtype=np.int64)
        # k^2 mod 2n keeps the chirp argument small (exp is 2n-periodic in it)
        q = (k * k) % (2 * n)
        chirp = np.exp(sign * 1j * np.pi * q / n)
        b = np.zeros(L, dtype=np.complex128)
        b[:n] = np.conj(chirp)
        b[L - n + 1 :] = np.conj(chirp[1:][::-1])
        bhat = _fft_pow2(b.reshape(1, L), -1)[0]
        tab = (L, chirp, bhat)
        _BLUESTEIN_CACHE[key] = tab
        return tab


def _fft_bluestein(a, sign):
    n = a.shape[-1]
    L, chirp, bhat = _bluestein_tables(n, sign)
    A = np.zeros(a.shape[:-1] + (L,), dtype=np.complex128)
    A[..., :n] = a * chirp
    conv = _fft_pow2(_fft_pow2(A, -1) * bhat, +1) / L
    return conv[..., :n] * chirp


def fft_1d(v, sign):
    """Unnormalized transform along the last axis, any length >= 1."""
    v = np.asarray(v, dtype=np.complex128)
    if v.shape[-1] < 1:
        raise ValueError("transform length must be >= 1")
    if sign not in (-1, 1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    n = v.shape[-1]
    if n & (n - 1) == 0:
        return _fft_pow2(v, sign)
    return _fft_bluestein(v, sign)


def fft_nd(t, sign):
    """Separable d-variate transform: fft_1d applied along every axis."""
    t = np.asarray(t, dtype=np.complex128)
    if t.ndim == 0:
        raise ValueError("input must have at least one axis")
    out = t
    for axis in range(t.ndim):
        moved = np.moveaxis(out, axis, -1)
        shape = moved.shape
        flat = np.ascontiguousarray(moved).reshape(-1, shape[-1])
        flat = fft_1d(flat, sign)
        out = np.moveaxis(flat.reshape(shape), -1, axis)
    return np.ascontiguousarray(out)
