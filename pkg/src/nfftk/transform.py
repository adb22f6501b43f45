"""Forward and adjoint transforms plus their exact quadratic-cost references.

Forward (``trafo``): deconvolve the coefficients by the window transform,
zero-pad onto the oversampled grid, run an unnormalized FFT with negative
exponent sign, then gather per node over the window support.  The
``1/|I_n|`` normalization lives entirely in the deconvolution step.

Adjoint (``adjoint``): spread samples onto the grid, run the
positive-sign FFT, then apply the same deconvolution on the output side.
Gathering and spreading use identical real window factors, so the two
transforms form an exact adjoint pair up to rounding.

``ndft`` / ``ndft_adjoint`` evaluate the defining sums exactly (chunked
phase-matrix contractions, no window machinery) and serve as oracles.
"""

import numpy as np

from . import kernels
from .errors import PlanStateError, ShapeError
from .fft import fft_nd
from .parallel import get_threads
from .plan import NFFT_OMP_BLOCKWISE_ADJOINT

_CHUNK_ELEMS = 1 << 22  # cap on intermediate oracle tensors (complex128)


def _as_vector(arr, length, what):
    out = np.asarray(arr)
    if out.shape == (length,):
        pass
    elif out.ndim >= 1 and out.size == length:
        out = out.reshape(length)
    else:
        raise ShapeError(f"{what} must have {length} entries, got shape {out.shape}")
    return np.ascontiguousarray(out, dtype=np.complex128)


def _freq_slots(plan):
    """Per-dimension array slots of the centered frequencies inside the n-grid."""
    return [np.arange(-Ni // 2, Ni // 2, dtype=np.int64) % ni for Ni, ni in zip(plan.N, plan.n)]


def _deconvolve_factors(plan):
    """Per-dimension window transform values over k = -N_i/2 .. N_i/2 - 1."""
    tables = plan.tables
    out = []
    for i in range(plan.d):
        if tables is not None and tables.phi_hut is not None:
            col = tables.phi_hut[i][: plan.N[i]]
        else:
            col = plan.window.phi_hat_table(i, kmax=plan.N[i] // 2)[: plan.N[i]]
        out.append(col)
    return out


def _apply_deconvolution(plan, grid_values):
    """Divide an N-shaped tensor by |I_n| and the tensor-product window transform."""
    out = grid_values / plan.grid_size
    for i, col in enumerate(_deconvolve_factors(plan)):
        shape = (1,) * i + (plan.N[i],) + (1,) * (plan.d - 1 - i)
        out = out / col.reshape(shape)
    return out


def _kernel_args(plan):
    """Mode selection and table plumbing shared by gather and spread."""
    t = plan.tables
    dummy_psi = np.zeros((1, 1, 1))
    dummy_lut = np.zeros((1, 2))
    dummy_steps = np.zeros(1)
    if t.psi is not None:
        mode = kernels.MODE_TENSOR
        psi, lut, steps = t.psi, dummy_lut, dummy_steps
    elif t.lut is not None:
        mode = kernels.MODE_LUT
        psi, lut, steps = dummy_psi, t.lut, t.lut_steps
    else:
        mode = kernels.MODE_DIRECT
        psi, lut, steps = dummy_psi, dummy_lut, dummy_steps
    bvec = np.asarray(plan.window.b, dtype=np.float64)
    return mode, psi, lut, steps, plan.window.code, plan.m, bvec


def _require_ready(plan):
    if plan.x is None:
        raise PlanStateError("plan has no nodes; call set_nodes() first")
    if not plan.ready:
        raise PlanStateError("plan not precomputed; call precompute() first")


def trafo(plan, fhat):
    """Fast forward transform: sample the trigonometric polynomial at the nodes."""
    _require_ready(plan)
    fhat = _as_vector(fhat, plan.num_freqs, "fhat")
    ghat = np.zeros(plan.n, dtype=np.complex128)
    ghat[np.ix_(*_freq_slots(plan))] = _apply_deconvolution(plan, fhat.reshape(plan.N))
    g = fft_nd(ghat, -1).ravel()
    out = np.empty(plan.M, dtype=np.complex128)
    t = plan.tables
    if t.psi_full_vals is not None:
        kernels.gather_full(g, t.psi_full_vals, t.psi_full_idx, t.psi_full_counts, out)
        evals = 0
    else:
        mode, psi, lut, steps, code, m, bvec = _kernel_args(plan)
        args = (g, *(np.int64(v) for v in plan.n), plan.x, plan._lo, plan._width,
                mode, psi, lut, steps, code, m, bvec, out)
        if plan.d == 1:
            evals = kernels.gather_1d(*args)
        elif plan.d == 2:
            evals = kernels.gather_2d(*args)
        elif plan.d == 3:
            evals = kernels.gather_3d(*args)
        else:
            raise ShapeError(f"fast transforms support d <= 3, got d={plan.d}")
    plan.window_evals_last = int(evals)
    plan.window_evals_total += int(evals)
    return out


def adjoint(plan, f):
    """Fast adjoint transform: accumulate samples into spectral coefficients."""
    _require_ready(plan)
    f = _as_vector(f, plan.M, "f")
    g = np.zeros(plan.grid_size, dtype=np.complex128)
    t = plan.tables
    order = t.node_order if t.node_order is not None else np.arange(plan.M, dtype=np.int64)
    nthreads = get_threads()
    blockwise = nthreads > 1 and bool(plan.f1 & NFFT_OMP_BLOCKWISE_ADJOINT)
    evals = 0
    if t.psi_full_vals is not None:
        if blockwise:
            row_stride = plan.grid_size // plan.n[0]
            kernels.spread_full_slab(
                f, order, g, row_stride, plan.n[0],
                t.psi_full_vals, t.psi_full_idx, t.psi_full_counts, nthreads,
            )
        else:
            natural = np.arange(plan.M, dtype=np.int64)
            kernels.spread_full_seq(f, natural, g, t.psi_full_vals, t.psi_full_idx, t.psi_full_counts)
    else:
        mode, psi, lut, steps, code, m, bvec = _kernel_args(plan)
        nvals = tuple(np.int64(v) for v in plan.n)
        if blockwise:
            args = (f, order, g, *nvals, plan.x, plan._lo, plan._width,
                    mode, psi, lut, steps, code, m, bvec, nthreads)
            if plan.d == 1:
                evals += kernels.spread_slab_1d(*args)
            elif plan.d == 2:
                evals += kernels.spread_slab_2d(*args)
            elif plan.d == 3:
                evals += kernels.spread_slab_3d(*args)
            else:
                raise ShapeError(f"fast transforms support d <= 3, got d={plan.d}")
            # nodes whose leading-axis rows wrap around the grid boundary
            a0 = plan._lo[:, 0] % plan.n[0]
            wraps = order[(a0[order] + plan._width[order, 0]) > plan.n[0]]
            seq_order = wraps
        else:
            seq_order = np.arange(plan.M, dtype=np.int64)
        if seq_order.shape[0]:
            args = (f, seq_order, g, *nvals, plan.x, plan._lo, plan._width,
                    mode, psi, lut, steps, code, m, bvec)
            if plan.d == 1:
                evals += kernels.spread_seq_1d(*args)
            elif plan.d == 2:
                evals += kernels.spread_seq_2d(*args)
            elif plan.d == 3:
                evals += kernels.spread_seq_3d(*args)
            else:
                raise ShapeError(f"fast transforms support d <= 3, got d={plan.d}")
    plan.window_evals_last = int(evals)
    plan.window_evals_total += int(evals)
    ghat = fft_nd(g.reshape(plan.n), +1)
    packed = ghat[np.ix_(*_freq_slots(plan))]
    return _apply_deconvolution(plan, packed).ravel()


def _phase(k, x, sign):
    return np.exp(sign * 2j * np.pi * np.outer(k, x))


def _node_chunk(plan):
    lead = max(1, plan.num_freqs // plan.N[-1])
    return int(max(16, min(plan.M, _CHUNK_ELEMS // lead)))


def ndft(plan, fhat):
    """Exact forward sums, O(M |I_N|); reference oracle for :func:`trafo`."""
    if plan.x is None:
        raise PlanStateError("plan has no nodes; call set_nodes() first")
    fhat = _as_vector(fhat, plan.num_freqs, "fhat")
    grid = fhat.reshape(plan.N)
    kvecs = [np.arange(-Ni // 2, Ni // 2) for Ni in plan.N]
    out = np.empty(plan.M, dtype=np.complex128)
    step = _node_chunk(plan)
    for start in range(0, plan.M, step):
        xc = plan.x[start : start + step]
        acc = np.tensordot(grid, _phase(kvecs[-1], xc[:, -1], -1), axes=([plan.d - 1], [0]))
        for i in range(plan.d - 2, -1, -1):
            acc = np.einsum("...kc,kc->...c", acc, _phase(kvecs[i], xc[:, i], -1))
        out[start : start + step] = acc
    return out


def ndft_adjoint(plan, f):
    """Exact adjoint sums, O(M |I_N|); reference oracle for :func:`adjoint`."""
    if plan.x is None:
        raise PlanStateError("plan has no nodes; call set_nodes() first")
    f = _as_vector(f, plan.M, "f")
    kvecs = [np.arange(-Ni // 2, Ni // 2) for Ni in plan.N]
    out = np.zeros(plan.N, dtype=np.complex128)
    step = _node_chunk(plan)
    for start in range(0, plan.M, step):
        xc = plan.x[start : start + step]
        fc = f[start : start + step]
        if plan.d == 1:
            out += _phase(kvecs[0], xc[:, 0], +1) @ fc
        elif plan.d == 2:
            e0 = _phase(kvecs[0], xc[:, 0], +1)
            e1 = _phase(kvecs[1], xc[:, 1], +1)
            out += (e0 * fc) @ e1.T
        elif plan.d == 3:
            e0 = _phase(kvecs[0], xc[:, 0], +1)
            e1 = _phase(kvecs[1], xc[:, 1], +1)
            e2 = _phase(kvecs[2], xc[:, 2], +1)
            kr = np.einsum("ac,bc->abc", e0, e1).reshape(plan.N[0] * plan.N[1], -1)
            out += ((kr * fc) @ e2.T).reshape(plan.N)
        else:
            mats = [_phase(kvecs[i], xc[:, i], +1) for i in range(plan.d)]
            letters = "abcdefgh"[: plan.d]
            spec = ",".join(f"{c}j" for c in letters) + ",j->" + letters
            out += np.einsum(spec, *mats, fc)
    return out.ravel()
