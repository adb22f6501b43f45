"""numba kernels for window gathering (forward) and spreading (adjoint).

Factor-evaluation modes shared by all kernels:

* ``MODE_DIRECT`` — evaluate the window on the fly inside the node loop;
* ``MODE_TENSOR`` — read per-node, per-dimension factors from a table;
* ``MODE_LUT``    — linear interpolation from an equispaced sample table.

Accumulation inside a node's range is plain sequential summation in
lexicographic cell order; per-cell weights are formed left-to-right
(``(f0*f1)*f2``) so the tensor and stored-product paths agree bitwise.

The parallel adjoint partitions the leading grid dimension into one slab per
worker; a worker only writes rows it owns, nodes whose row range wraps
around the grid boundary are replayed in a sequential epilogue.  This keeps
the accumulation free of write conflicts and deterministic for a fixed
worker count.
"""

import numpy as np
from numba import njit, prange

from .window import window_factor

MODE_DIRECT = 0
MODE_TENSOR = 1
MODE_LUT = 2


@njit(cache=True, inline="always")
def lut_factor(lut, step, i, t):
    """Linear interpolation of the window from equispaced samples of |t|."""
    u = abs(t) * step
    idx = int(u)
    last = lut.shape[1] - 1
    if idx >= last:
        return lut[i, last]
    frac = u - idx
    return lut[i, idx] + frac * (lut[i, idx + 1] - lut[i, idx])


@njit(cache=True, inline="always")
def _dim_factors(mode, code, coords, lo, width, j, i, n_i, m, b, psi, lut, lut_steps, wrap, fac):
    """Fill wrapped grid cells and window factors for node j, dimension i."""
    for t in range(width[j, i]):
        cell = lo[j, i] + t
        wrap[t] = cell % n_i
        if mode == MODE_DIRECT:
            fac[t] = window_factor(code, coords[j, i] - cell / n_i, float(n_i), float(m), b[i])
        elif mode == MODE_TENSOR:
            fac[t] = psi[j, i, t]
        else:
            fac[t] = lut_factor(lut, lut_steps[i], i, coords[j, i] - cell / n_i)


@njit(cache=True, parallel=True)
def build_psi_tensor(coords, lo, width, nvec, code, m, b, out):
    """Tensor-factor table: out[j, i, t] = window(x_ji - (lo_ji + t)/n_i)."""
    M, d = coords.shape
    evals = 0
    for j in prange(M):
        for i in range(d):
            n_i = nvec[i]
            for t in range(width[j, i]):
                cell = lo[j, i] + t
                out[j, i, t] = window_factor(
                    code, coords[j, i] - cell / n_i, float(n_i), float(m), b[i]
                )
                evals += 1
            for t in range(width[j, i], out.shape[2]):
                out[j, i, t] = 0.0
    return evals


@njit(cache=True)
def build_lut(code, n_i, m, b_i, size):
    """Equispaced window samples on [0, m/n_i], inclusive endpoints."""
    out = np.empty(size + 1)
    h = (m / n_i) / size
    for t in range(size + 1):
        out[t] = window_factor(code, t * h, n_i, float(m), b_i)
    return out


@njit(cache=True, parallel=True)
def build_psi_full_1d(psi, lo, width, n0, vals, idx):
    for j in prange(lo.shape[0]):
        for t0 in range(width[j, 0]):
            vals[j, t0] = psi[j, 0, t0]
            idx[j, t0] = (lo[j, 0] + t0) % n0


@njit(cache=True, parallel=True)
def build_psi_full_2d(psi, lo, width, n0, n1, vals, idx):
    for j in prange(lo.shape[0]):
        p = 0
        for t0 in range(width[j, 0]):
            r0 = (lo[j, 0] + t0) % n0
            f0 = psi[j, 0, t0]
            for t1 in range(width[j, 1]):
                vals[j, p] = f0 * psi[j, 1, t1]
                idx[j, p] = r0 * n1 + (lo[j, 1] + t1) % n1
                p += 1


@njit(cache=True, parallel=True)
def build_psi_full_3d(psi, lo, width, n0, n1, n2, vals, idx):
    for j in prange(lo.shape[0]):
        p = 0
        for t0 in range(width[j, 0]):
            r0 = (lo[j, 0] + t0) % n0
            f0 = psi[j, 0, t0]
            for t1 in range(width[j, 1]):
                r01 = (r0 * n1 + (lo[j, 1] + t1) % n1) * n2
                f01 = f0 * psi[j, 1, t1]
                for t2 in range(width[j, 2]):
                    vals[j, p] = f01 * psi[j, 2, t2]
                    idx[j, p] = r01 + (lo[j, 2] + t2) % n2
                    p += 1


@njit(cache=True, parallel=True)
def gather_1d(gflat, n0, coords, lo, width, mode, psi, lut, lut_steps, code, m, b, out):
    M = coords.shape[0]
    K = 2 * m + 1
    evals = 0
    for j in prange(M):
        w0 = np.empty(K, np.int64)
        f0 = np.empty(K, np.float64)
        _dim_factors(mode, code, coords, lo, width, j, 0, n0, m, b, psi, lut, lut_steps, w0, f0)
        if mode == MODE_DIRECT:
            evals += width[j, 0]
        acc = 0.0 + 0.0j
        for t0 in range(width[j, 0]):
            acc += f0[t0] * gflat[w0[t0]]
        out[j] = acc
    return evals


@njit(cache=True, parallel=True)
def gather_2d(gflat, n0, n1, coords, lo, width, mode, psi, lut, lut_steps, code, m, b, out):
    M = coords.shape[0]
    K = 2 * m + 1
    evals = 0
    for j in prange(M):
        w0 = np.empty(K, np.int64)
        f0 = np.empty(K, np.float64)
        w1 = np.empty(K, np.int64)
        f1 = np.empty(K, np.float64)
        _dim_factors(mode, code, coords, lo, width, j, 0, n0, m, b, psi, lut, lut_steps, w0, f0)
        if mode == MODE_DIRECT:
            evals += width[j, 0]
        _dim_factors(mode, code, coords, lo, width, j, 1, n1, m, b, psi, lut, lut_steps, w1, f1)
        if mode == MODE_DIRECT:
            evals += width[j, 1]
        acc = 0.0 + 0.0j
        for t0 in range(width[j, 0]):
            base = w0[t0] * n1
            p0 = f0[t0]
            for t1 in range(width[j, 1]):
                acc += (p0 * f1[t1]) * gflat[base + w1[t1]]
        out[j] = acc
    return evals


@njit(cache=True, parallel=True)
def gather_3d(gflat, n0, n1, n2, coords, lo, width, mode, psi, lut, lut_steps, code, m, b, out):
    M = coords.shape[0]
    K = 2 * m + 1
    evals = 0
    for j in prange(M):
        w0 = np.empty(K, np.int64)
        f0 = np.empty(K, np.float64)
        w1 = np.empty(K, np.int64)
        f1 = np.empty(K, np.float64)
        w2 = np.empty(K, np.int64)
        f2 = np.empty(K, np.float64)
        _dim_factors(mode, code, coords, lo, width, j, 0, n0, m, b, psi, lut, lut_steps, w0, f0)
        if mode == MODE_DIRECT:
            evals += width[j, 0]
        _dim_factors(mode, code, coords, lo, width, j, 1, n1, m, b, psi, lut, lut_steps, w1, f1)
        if mode == MODE_DIRECT:
            evals += width[j, 1]
        _dim_factors(mode, code, coords, lo, width, j, 2, n2, m, b, psi, lut, lut_steps, w2, f2)
        if mode == MODE_DIRECT:
            evals += width[j, 2]
        acc = 0.0 + 0.0j
        for t0 in range(width[j, 0]):
            base0 = w0[t0] * n1
            p0 = f0[t0]
            for t1 in range(width[j, 1]):
                base1 = (base0 + w1[t1]) * n2
                p01 = p0 * f1[t1]
                for t2 in range(width[j, 2]):
                    acc += (p01 * f2[t2]) * gflat[base1 + w2[t2]]
        out[j] = acc
    return evals


@njit(cache=True, parallel=True)
def gather_full(gflat, vals, idx, counts, out):
    for j in prange(counts.shape[0]):
        acc = 0.0 + 0.0j
        for p in range(counts[j]):
            acc += vals[j, p] * gflat[idx[j, p]]
        out[j] = acc


@njit(cache=True)
def spread_seq_1d(fvals, order, gflat, n0, coords, lo, width, mode, psi, lut, lut_steps, code, m, b):
    K = 2 * m + 1
    w0 = np.empty(K, np.int64)
    f0 = np.empty(K, np.float64)
    evals = 0
    for oi in range(order.shape[0]):
        j = order[oi]
        _dim_factors(mode, code, coords, lo, width, j, 0, n0, m, b, psi, lut, lut_steps, w0, f0)
        if mode == MODE_DIRECT:
            evals += width[j, 0]
        fj = fvals[j]
        for t0 in range(width[j, 0]):
            gflat[w0[t0]] += fj * f0[t0]
    return evals


@njit(cache=True)
def spread_seq_2d(fvals, order, gflat, n0, n1, coords, lo, width, mode, psi, lut, lut_steps, code, m, b):
    K = 2 * m + 1
    w0 = np.empty(K, np.int64)
    f0 = np.empty(K, np.float64)
    w1 = np.empty(K, np.int64)
    f1 = np.empty(K, np.float64)
    evals = 0
    for oi in range(order.shape[0]):
        j = order[oi]
        _dim_factors(mode, code, coords, lo, width, j, 0, n0, m, b, psi, lut, lut_steps, w0, f0)
        if mode == MODE_DIRECT:
            evals += width[j, 0]
        _dim_factors(mode, code, coords, lo, width, j, 1, n1, m, b, psi, lut, lut_steps, w1, f1)
        if mode == MODE_DIRECT:
            evals += width[j, 1]
        fj = fvals[j]
        for t0 in range(width[j, 0]):
            base = w0[t0] * n1
            p0 = f0[t0]
            for t1 in range(width[j, 1]):
                gflat[base + w1[t1]] += fj * (p0 * f1[t1])
    return evals


@njit(cache=True)
def spread_seq_3d(fvals, order, gflat, n0, n1, n2, coords, lo, width, mode, psi, lut, lut_steps, code, m, b):
    K = 2 * m + 1
    w0 = np.empty(K, np.int64)
    f0 = np.empty(K, np.float64)
    w1 = np.empty(K, np.int64)
    f1 = np.empty(K, np.float64)
    w2 = np.empty(K, np.int64)
    f2 = np.empty(K, np.float64)
    evals = 0
    for oi in range(order.shape[0]):
        j = order[oi]
        _dim_factors(mode, code, coords, lo, width, j, 0, n0, m, b, psi, lut, lut_steps, w0, f0)
        if mode == MODE_DIRECT:
            evals += width[j, 0]
        _dim_factors(mode, code, coords, lo, width, j, 1, n1, m, b, psi, lut, lut_steps, w1, f1)
        if mode == MODE_DIRECT:
            evals += width[j, 1]
        _dim_factors(mode, code, coords, lo, width, j, 2, n2, m, b, psi, lut, lut_steps, w2, f2)
        if mode == MODE_DIRECT:
            evals += width[j, 2]
        fj = fvals[j]
        for t0 in range(width[j, 0]):
            base0 = w0[t0] * n1
            p0 = f0[t0]
            for t1 in range(width[j, 1]):
                base1 = (base0 + w1[t1]) * n2
                p01 = p0 * f1[t1]
                for t2 in range(width[j, 2]):
                    gflat[base1 + w2[t2]] += fj * (p01 * f2[t2])
    return evals


@njit(cache=True)
def spread_full_seq(fvals, order, gflat, vals, idx, counts):
    for oi in range(order.shape[0]):
        j = order[oi]
        fj = fvals[j]
        for p in range(counts[j]):
            gflat[idx[j, p]] += fj * vals[j, p]


@njit(cache=True, parallel=True)
def spread_slab_1d(fvals, order, gflat, n0, coords, lo, width, mode, psi, lut, lut_steps, code, m, b, nslabs):
    K = 2 * m + 1
    evals = 0
    for s in prange(nslabs):
        s_lo = (n0 * s) // nslabs
        s_hi = (n0 * (s + 1)) // nslabs
        w0 = np.empty(K, np.int64)
        f0 = np.empty(K, np.float64)
        for oi in range(order.shape[0]):
            j = order[oi]
            W0 = width[j, 0]
            a0 = lo[j, 0] % n0
            if a0 + W0 > n0:
                continue  # wraps the leading axis; sequential epilogue handles it
            t_begin = s_lo - a0 if s_lo > a0 else 0
            row_end = a0 + W0 if a0 + W0 < s_hi else s_hi
            t_end = row_end - a0
            if t_begin >= t_end:
                continue
            _dim_factors(mode, code, coords, lo, width, j, 0, n0, m, b, psi, lut, lut_steps, w0, f0)
            if mode == MODE_DIRECT:
                evals += width[j, 0]
            fj = fvals[j]
            for t0 in range(t_begin, t_end):
                gflat[a0 + t0] += fj * f0[t0]
    return evals


@njit(cache=True, parallel=True)
def spread_slab_2d(fvals, order, gflat, n0, n1, coords, lo, width, mode, psi, lut, lut_steps, code, m, b, nslabs):
    K = 2 * m + 1
    evals = 0
    for s in prange(nslabs):
        s_lo = (n0 * s) // nslabs
        s_hi = (n0 * (s + 1)) // nslabs
        w0 = np.empty(K, np.int64)
        f0 = np.empty(K, np.float64)
        w1 = np.empty(K, np.int64)
        f1 = np.empty(K, np.float64)
        for oi in range(order.shape[0]):
            j = order[oi]
            W0 = width[j, 0]
            a0 = lo[j, 0] % n0
            if a0 + W0 > n0:
                continue
            t_begin = s_lo - a0 if s_lo > a0 else 0
            row_end = a0 + W0 if a0 + W0 < s_hi else s_hi
            t_end = row_end - a0
            if t_begin >= t_end:
                continue
            _dim_factors(mode, code, coords, lo, width, j, 0, n0, m, b, psi, lut, lut_steps, w0, f0)
            if mode == MODE_DIRECT:
                evals += width[j, 0]
            _dim_factors(mode, code, coords, lo, width, j, 1, n1, m, b, psi, lut, lut_steps, w1, f1)
            if mode == MODE_DIRECT:
                evals += width[j, 1]
            fj = fvals[j]
            for t0 in range(t_begin, t_end):
                base = (a0 + t0) * n1
                p0 = f0[t0]
                for t1 in range(width[j, 1]):
                    gflat[base + w1[t1]] += fj * (p0 * f1[t1])
    return evals


@njit(cache=True, parallel=True)
def spread_slab_3d(fvals, order, gflat, n0, n1, n2, coords, lo, width, mode, psi, lut, lut_steps, code, m, b, nslabs):
    K = 2 * m + 1
    evals = 0
    for s in prange(nslabs):
        s_lo = (n0 * s) // nslabs
        s_hi = (n0 * (s + 1)) // nslabs
        w0 = np.empty(K, np.int64)
        f0 = np.empty(K, np.float64)
        w1 = np.empty(K, np.int64)
        f1 = np.empty(K, np.float64)
        w2 = np.empty(K, np.int64)
        f2 = np.empty(K, np.float64)
        for oi in range(order.shape[0]):
            j = order[oi]
            W0 = width[j, 0]
            a0 = lo[j, 0] % n0
            if a0 + W0 > n0:
                continue
            t_begin = s_lo - a0 if s_lo > a0 else 0
            row_end = a0 + W0 if a0 + W0 < s_hi else s_hi
            t_end = row_end - a0
            if t_begin >= t_end:
                continue
            _dim_factors(mode, code, coords, lo, width, j, 0, n0, m, b, psi, lut, lut_steps, w0, f0)
            if mode == MODE_DIRECT:
                evals += width[j, 0]
            _dim_factors(mode, code, coords, lo, width, j, 1, n1, m, b, psi, lut, lut_steps, w1, f1)
            if mode == MODE_DIRECT:
                evals += width[j, 1]
            _dim_factors(mode, code, coords, lo, width, j, 2, n2, m, b, psi, lut, lut_steps, w2, f2)
            if mode == MODE_DIRECT:
                evals += width[j, 2]
            fj = fvals[j]
            for t0 in range(t_begin, t_end):
                base0 = (a0 + t0) * n1
                p0 = f0[t0]
                for t1 in range(width[j, 1]):
                    base1 = (base0 + w1[t1]) * n2
                    p01 = p0 * f1[t1]
                    for t2 in range(width[j, 2]):
                        gflat[base1 + w2[t2]] += fj * (p01 * f2[t2])
    return evals


@njit(cache=True, parallel=True)
def spread_full_slab(fvals, order, gflat, row_stride, n0, vals, idx, counts, nslabs):
    """Slab-parallel spread from stored products; ownership tested per cell row."""
    for s in prange(nslabs):
        s_lo = (n0 * s) // nslabs
        s_hi = (n0 * (s + 1)) // nslabs
        for oi in range(order.shape[0]):
            j = order[oi]
            fj = fvals[j]
            for p in range(counts[j]):
                row = idx[j, p] // row_stride
                if s_lo <= row < s_hi:
                    gflat[idx[j, p]] += fj * vals[j, p]
