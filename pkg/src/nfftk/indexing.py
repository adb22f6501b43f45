"""Frequency index boxes, their linearization, and per-node gather ranges.

The frequency box for a bandlimit vector ``N`` is the set of integer
multi-indices ``k`` with ``-N_i/2 <= k_i <= N_i/2 - 1``.  Linear storage
order is lexicographic with the *last* dimension varying fastest
(row-major), matching the flat layout of spectral vectors everywhere in
this package.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import InvalidBandlimitError, NfftError, NodeRangeError, ShapeError


def validate_bandlimit(N):
    """Return ``N`` as a tuple of ints after checking every entry is even and >= 2."""
    try:
        N = tuple(int(v) for v in N)
    except TypeError:
        N = (int(N),)
    if len(N) == 0:
        raise InvalidBandlimitError("bandlimit vector is empty")
    for v in N:
        if v < 2 or v % 2 != 0:
            raise InvalidBandlimitError(f"bandlimit entries must be even and >= 2, got {v}")
    return N


def index_set(N):
    """All multi-indices of the frequency box for bandlimits ``N``.

    Returns an ``(prod(N), d)`` int64 array in row-major order
    (last dimension fastest).
    """
    N = validate_bandlimit(N)
    axes = [np.arange(-v // 2, v // 2, dtype=np.int64) for v in N]
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1)


def linear_index(k, N):
    """Position of multi-index ``k`` in the order produced by :func:`index_set`."""
    N = validate_bandlimit(N)
    k = tuple(int(v) for v in np.atleast_1d(np.asarray(k)))
    if len(k) != len(N):
        raise ShapeError(f"index has {len(k)} dims, bandlimit has {len(N)}")
    idx = 0
    for ki, Ni in zip(k, N):
        if not -Ni // 2 <= ki <= Ni // 2 - 1:
            raise NfftError(f"index {k} outside the frequency box for N={N}")
        idx = idx * Ni + (ki + Ni // 2)
    return idx


def multi_index(i, N):
    """Inverse of :func:`linear_index`."""
    N = validate_bandlimit(N)
    total = math.prod(N)
    i = int(i)
    if not 0 <= i < total:
        raise NfftError(f"linear index {i} outside [0, {total})")
    out = []
    for Ni in reversed(N):
        out.append(i % Ni - Ni // 2)
        i //= Ni
    return tuple(reversed(out))


@dataclass(frozen=True)
class GatherRange:
    """Inclusive per-dimension bounds on the grid offsets a node touches.

    The raw bounds may leave ``[0, n_i)``; grid access reduces them modulo
    ``n_i`` (the window is 1-periodic).  Width per dimension is always
    ``2m`` or ``2m + 1``.
    """

    lo: tuple
    hi: tuple

    def width(self, i):
        return self.hi[i] - self.lo[i] + 1

    def cells(self, i, n_i):
        """Wrapped grid cells for dimension ``i``."""
        return np.arange(self.lo[i], self.hi[i] + 1, dtype=np.int64) % n_i


def gather_range(x, n, m):
    """Grid offsets whose window translate covers node ``x``.

    ``lo_i = ceil(n_i x_i - m)``, ``hi_i = floor(n_i x_i + m)``.
    """
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    n = np.atleast_1d(np.asarray(n, dtype=np.int64))
    if x.shape != n.shape:
        raise ShapeError(f"node has {x.shape[0]} dims, grid has {n.shape[0]}")
    m = int(m)
    if m < 1:
        raise NfftError(f"cutoff must be >= 1, got {m}")
    if 2 * m + 1 > int(n.min()):
        raise NfftError(f"cutoff {m} too large: 2m+1 must not exceed min(n)={n.min()}")
    if np.any(x < -0.5) or np.any(x >= 0.5):
        raise NodeRangeError(f"node coordinate outside [-1/2, 1/2): {x}")
    y = n * x
    lo = np.ceil(y - m).astype(np.int64)
    hi = np.floor(y + m).astype(np.int64)
    return GatherRange(lo=tuple(int(v) for v in lo), hi=tuple(int(v) for v in hi))


def node_ranges(coords, n, m):
    """Vectorized gather bounds for a whole node set.

    Returns ``(lo, width)`` int64 arrays of shape ``(M, d)``.
    """
    coords = np.asarray(coords, dtype=np.float64)
    n = np.asarray(n, dtype=np.int64)
    y = coords * n
    lo = np.ceil(y - m).astype(np.int64)
    width = np.floor(y + m).astype(np.int64) - lo + 1
    return lo, width


def transposed_members(ell, coords, n, m):
    """Node indices whose gather range covers grid offset ``ell`` (periodically).

    Reference-only counterpart of :func:`gather_range`; the fast adjoint
    never materializes this set.
    """
    ell = np.atleast_1d(np.asarray(ell, dtype=np.int64))
    coords = np.asarray(coords, dtype=np.float64)
    if coords.ndim != 2 or coords.shape[1] != ell.shape[0]:
        raise ShapeError("coords must be (M, d) matching ell")
    n = np.atleast_1d(np.asarray(n, dtype=np.int64))
    for e, ni in zip(ell, n):
        if not -ni // 2 <= e <= ni // 2 - 1:
            raise NfftError(f"offset {tuple(ell)} outside the grid box for n={tuple(n)}")
    lo, width = node_ranges(coords, n, int(m))
    # ell is in the range iff (ell - lo) mod n < width, per dimension
    hit = ((ell[None, :] - lo) % n[None, :]) < width
    return np.nonzero(hit.all(axis=1))[0].astype(np.int64)
