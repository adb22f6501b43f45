"""Plan lifecycle: parameter defaults, flag words, node storage, precompute tables.

A :class:`Plan` bundles problem sizes (bandlimits ``N``, node count ``M``),
algorithm parameters (oversampled grid ``n``, window cutoff ``m``), two flag
words, the window model, and any precomputed tables.  Flags in ``f1`` select
which tables :meth:`Plan.precompute` builds; ``f2`` mirrors the FFT-planner
flag word of C libraries and is accepted but ignored (this package owns its
FFT and has no planner).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    CutoffError,
    InvalidFlagError,
    NfftError,
    NodeRangeError,
    OversamplingError,
    PlanStateError,
    ShapeError,
    UnsupportedFlagError,
)
from .indexing import node_ranges, validate_bandlimit
from .window import WindowModel

# Transform flag word f1, bit-assigned in documentation order.
PRE_PHI_HUT = 1 << 0
FG_PSI = 1 << 1
PRE_LIN_PSI = 1 << 2
PRE_FG_PSI = 1 << 3
PRE_PSI = 1 << 4
PRE_FULL_PSI = 1 << 5
MALLOC_X = 1 << 6
MALLOC_F_HAT = 1 << 7
MALLOC_F = 1 << 8
FFT_OUT_OF_PLACE = 1 << 9
FFTW_INIT = 1 << 10
NFFT_SORT_NODES = 1 << 11
NFFT_OMP_BLOCKWISE_ADJOINT = 1 << 12

# Memory-management and FFT-planner bits: accepted for interface
# compatibility, no behaviour attached (buffers are managed by the runtime).
_NOOP_F1 = MALLOC_X | MALLOC_F_HAT | MALLOC_F | FFT_OUT_OF_PLACE | FFTW_INIT
# Fast Gaussian gridding is not provided.
_UNSUPPORTED_F1 = FG_PSI | PRE_FG_PSI
_KNOWN_F1 = (
    PRE_PHI_HUT
    | PRE_LIN_PSI
    | PRE_PSI
    | PRE_FULL_PSI
    | NFFT_SORT_NODES
    | NFFT_OMP_BLOCKWISE_ADJOINT
    | _NOOP_F1
    | _UNSUPPORTED_F1
)

# FFT-planner flag word f2 (accepted and ignored wholesale).
FFTW_MEASURE = 0
FFTW_DESTROY_INPUT = 1 << 0
FFTW_UNALIGNED = 1 << 1
FFTW_CONSERVE_MEMORY = 1 << 2
FFTW_EXHAUSTIVE = 1 << 3
FFTW_PRESERVE_INPUT = 1 << 4
FFTW_PATIENT = 1 << 5
FFTW_ESTIMATE = 1 << 6
FFTW_WISDOM_ONLY = 1 << 21

DEFAULT_CUTOFF = 8
DEFAULT_F2 = FFTW_ESTIMATE | FFTW_DESTROY_INPUT
LUT_SIZE = 1 << 14  # samples per dimension for PRE_LIN_PSI


def default_f1(d):
    """Default transform flags: precomputed window tables plus node sorting;
    multivariate plans also enable the blockwise parallel adjoint."""
    flags = PRE_PHI_HUT | PRE_PSI | NFFT_SORT_NODES | _NOOP_F1
    if d > 1:
        flags |= NFFT_OMP_BLOCKWISE_ADJOINT
    return flags


def default_n(N):
    """Default oversampled grid: next power of two strictly above, doubled.

    Componentwise ``2 ** (ceil(log2 N_i) + 1)``.
    """
    N = validate_bandlimit(N)
    return tuple(1 << ((v - 1).bit_length() + 1) for v in N)


def validate_f1(f1):
    f1 = int(f1)
    if f1 < 0 or f1 != f1 & 0xFFFFFFFF:
        raise InvalidFlagError(f"f1 must be an unsigned 32-bit word, got {f1}")
    unknown = f1 & ~_KNOWN_F1
    if unknown:
        raise InvalidFlagError(f"unknown f1 bits: {hex(unknown)}")
    if f1 & _UNSUPPORTED_F1:
        raise UnsupportedFlagError(
            "fast Gaussian gridding flags (FG_PSI, PRE_FG_PSI) are not provided"
        )
    return f1


@dataclass
class PrecomputeTables:
    """Tables selected by the plan's f1 word; only requested entries are set."""

    phi_hut: list | None = None          # per-dim arrays over k = -N_i/2 .. N_i/2
    psi: np.ndarray | None = None        # (M, d, 2m+1) tensor factors
    psi_full_vals: np.ndarray | None = None   # (M, (2m+1)^d) products
    psi_full_idx: np.ndarray | None = None    # matching flat grid cells
    psi_full_counts: np.ndarray | None = None
    lut: np.ndarray | None = None        # (d, LUT_SIZE+1) window samples
    lut_steps: np.ndarray | None = None  # samples per unit offset, per dim
    node_order: np.ndarray | None = None
    window_evals: int = 0                # evaluations spent building the tables


class Plan:
    """Reusable transform plan.

    ``Plan(N, M)`` applies the documented defaults (``n = default_n(N)``,
    ``m = 8``, standard flags).  The advanced form
    ``Plan(N, M, n, m, f1, f2)`` pins everything; trailing parameters may be
    omitted and default individually.

    After construction, assign nodes (``plan.x = coords`` or
    :meth:`set_nodes`), call :meth:`precompute`, then run :meth:`trafo` /
    :meth:`adjoint` any number of times.  A precomputed plan is immutable
    and may be shared by concurrent transform calls.
    """

    def __init__(self, N, M, n=None, m=None, f1=None, f2=None, window="kaiserbessel"):
        self.N = validate_bandlimit(N)
        self.d = len(self.N)
        self.M = int(M)
        if self.M < 1:
            raise NfftError(f"node count must be >= 1, got {M}")
        if n is None:
            self.n = default_n(self.N)
            if m is None:
                # Defaults must always yield a valid plan: for tiny bandlimits
                # the doubled power-of-two grid cannot host the default cutoff
                # (2m+1 <= min n_i), so widen those dimensions further.
                widened = []
                for v in self.n:
                    while v < 2 * DEFAULT_CUTOFF + 2:
                        v *= 2
                    widened.append(v)
                self.n = tuple(widened)
        else:
            try:
                self.n = tuple(int(v) for v in n)
            except TypeError:
                self.n = (int(n),)
            if len(self.n) != self.d:
                raise ShapeError(f"n has {len(self.n)} dims, N has {self.d}")
            for ni, Ni in zip(self.n, self.N):
                if ni % 2 != 0:
                    raise OversamplingError(f"FFT lengths must be even, got {ni}")
                if ni <= Ni:
                    raise OversamplingError(f"need n_i > N_i, got n={self.n} for N={self.N}")
        if m is None:
            # Clamp the default cutoff when an explicit grid is too small for it.
            self.m = min(DEFAULT_CUTOFF, (min(self.n) - 1) // 2)
        else:
            self.m = int(m)
        if self.m < 1:
            raise CutoffError(f"cutoff must be >= 1, got {self.m}")
        if 2 * self.m + 1 > min(self.n):
            raise CutoffError(f"cutoff {self.m} needs 2m+1 <= min(n) = {min(self.n)}")
        self.f1 = default_f1(self.d) if f1 is None else validate_f1(f1)
        self.f2 = DEFAULT_F2 if f2 is None else int(f2) & 0xFFFFFFFF
        self.window = WindowModel.make(window, self.N, self.n, self.m)
        self._x = None
        self._lo = None
        self._width = None
        self._node_order = None
        self._tables = None
        self.window_evals_last = 0
        self.window_evals_total = 0

    # -- sizes ---------------------------------------------------------

    @property
    def num_freqs(self):
        """|I_N|: number of spectral coefficients."""
        return math.prod(self.N)

    @property
    def grid_size(self):
        """|I_n|: number of oversampled grid points."""
        return math.prod(self.n)

    # -- nodes ---------------------------------------------------------

    @property
    def x(self):
        return self._x

    @x.setter
    def x(self, coords):
        self.set_nodes(coords)

    def set_nodes(self, coords):
        """Store the node set; strict range check, no folding.

        Invalidates previously built window tables.  When NFFT_SORT_NODES is
        set, also computes the grid-cell sort permutation used by the
        blockwise adjoint.
        """
        coords = np.asarray(coords, dtype=np.float64)
        if coords.shape != (self.M, self.d):
            raise ShapeError(f"nodes must have shape {(self.M, self.d)}, got {coords.shape}")
        if np.any(coords < -0.5) or np.any(coords >= 0.5):
            bad = np.argwhere((coords < -0.5) | (coords >= 0.5))[0]
            raise NodeRangeError(
                f"node {bad[0]} coordinate {coords[tuple(bad)]} outside [-1/2, 1/2)"
            )
        self._x = np.ascontiguousarray(coords)
        self._lo, self._width = node_ranges(self._x, self.n, self.m)
        self._tables = None
        if self.f1 & NFFT_SORT_NODES:
            cells = np.floor(self._x * np.asarray(self.n)).astype(np.int64)
            keys = tuple(cells[:, i] for i in reversed(range(self.d)))
            self._node_order = np.lexsort(keys).astype(np.int64)
        else:
            self._node_order = None

    @property
    def node_order(self):
        return self._node_order

    # -- precompute ----------------------------------------------------

    @property
    def tables(self):
        return self._tables

    @property
    def ready(self):
        return self._tables is not None

    def precompute(self):
        """Build the tables requested by f1.  Requires nodes."""
        if self._x is None:
            raise PlanStateError("set nodes before precompute()")
        t = PrecomputeTables()
        evals = 0
        if self.f1 & PRE_PHI_HUT:
            t.phi_hut = [self.window.phi_hat_table(i, kmax=self.N[i] // 2) for i in range(self.d)]
        nvec = np.asarray(self.n, dtype=np.int64)
        bvec = np.asarray(self.window.b, dtype=np.float64)
        need_psi = bool(self.f1 & (PRE_PSI | PRE_FULL_PSI))
        psi = None
        if need_psi:
            psi = np.zeros((self.M, self.d, 2 * self.m + 1))
            evals += int(
                kernels.build_psi_tensor(
                    self._x, self._lo, self._width, nvec, self.window.code, self.m, bvec, psi
                )
            )
        if self.f1 & PRE_FULL_PSI:
            pmax = (2 * self.m + 1) ** self.d
            vals = np.zeros((self.M, pmax))
            idx = np.zeros((self.M, pmax), dtype=np.int64)
            if self.d == 1:
                kernels.build_psi_full_1d(psi, self._lo, self._width, self.n[0], vals, idx)
            elif self.d == 2:
                kernels.build_psi_full_2d(psi, self._lo, self._width, *self.n, vals, idx)
            elif self.d == 3:
                kernels.build_psi_full_3d(psi, self._lo, self._width, *self.n, vals, idx)
            else:
                raise NfftError(f"full window tables support d <= 3, got d={self.d}")
            t.psi_full_vals = vals
            t.psi_full_idx = idx
            t.psi_full_counts = np.prod(self._width, axis=1).astype(np.int64)
        if self.f1 & PRE_PSI:
            t.psi = psi
        if self.f1 & PRE_LIN_PSI:
            lut = np.empty((self.d, LUT_SIZE + 1))
            steps = np.empty(self.d)
            for i in range(self.d):
                lut[i] = kernels.build_lut(
                    self.window.code, float(self.n[i]), self.m, self.window.b[i], LUT_SIZE
                )
                steps[i] = LUT_SIZE / (self.m / self.n[i])
                evals += LUT_SIZE + 1
            t.lut = lut
            t.lut_steps = steps
        t.node_order = self._node_order
        t.window_evals = evals
        self._tables = t
        return t

    # -- transforms (implemented in nfftk.transform) --------------------

    def trafo(self, fhat):
        from . import transform

        return transform.trafo(self, fhat)

    def adjoint(self, f):
        from . import transform

        return transform.adjoint(self, f)

    def ndft(self, fhat):
        from . import transform

        return transform.ndft(self, fhat)

    def ndft_adjoint(self, f):
        from . import transform

        return transform.ndft_adjoint(self, f)

    def __repr__(self):
        return (
            f"Plan(N={self.N}, M={self.M}, n={self.n}, m={self.m}, "
            f"f1={hex(self.f1)}, f2={hex(self.f2)}, window={self.window.kind!r})"
        )
