"""Flat, handle-based call surface backing the shared-library ABI.

Every function takes plain integers and flat float64 buffers (complex data
interleaved re/im) and returns 0 on success or a negative code:

* ``ERR_HANDLE`` (-1): unknown or destroyed handle
* ``ERR_SHAPE`` (-2): buffer length mismatch (plan state unchanged)
* ``ERR_DOMAIN`` (-3): parameter/domain violations (node range, oversampling,
  cutoff, flags, missing nodes)
* ``ERR_INTERNAL`` (-9): anything unexpected

Handles are opaque positive integers into a registry, never addresses, so
use-after-destroy fails cleanly.  ``trafo`` writes into the handle-owned
sample buffer and ``adjoint`` into the coefficient buffer; ``get_f`` /
``get_fhat`` expose those buffers as views without copying, valid until
``destroy``.  A handle must not be used from two threads at once (callers'
contract; the registry itself is locked).

:mod:`nfftk.abi` exports this surface from a real shared library with the
symbol prefix ``nfftk_``.
"""

import threading

import numpy as np

from .errors import (
    CutoffError,
    InvalidBandlimitError,
    InvalidFlagError,
    NfftError,
    NodeRangeError,
    OversamplingError,
    PlanStateError,
    ShapeError,
)
from .plan import Plan

ERR_HANDLE = -1
ERR_SHAPE = -2
ERR_DOMAIN = -3
ERR_INTERNAL = -9

_DOMAIN_ERRORS = (
    InvalidBandlimitError,
    OversamplingError,
    CutoffError,
    InvalidFlagError,
    NodeRangeError,
    PlanStateError,
)

_lock = threading.Lock()
_registry = {}
_next_handle = 1
_live_buffers = 0  # instrumented allocation counter (leak checks)


class _Entry:
    __slots__ = ("plan", "fhat", "f", "err_code", "err_msg")

    def __init__(self, plan):
        self.plan = plan
        self.fhat = np.zeros(plan.num_freqs, dtype=np.complex128)
        self.f = np.zeros(plan.M, dtype=np.complex128)
        self.err_code = 0
        self.err_msg = ""


def _code_for(exc):
    if isinstance(exc, ShapeError):
        return ERR_SHAPE
    if isinstance(exc, _DOMAIN_ERRORS):
        return ERR_DOMAIN
    return ERR_INTERNAL


def _store_error(entry, exc):
    entry.err_code = _code_for(exc)
    entry.err_msg = str(exc)
    return entry.err_code


def _get(handle):
    return _registry.get(int(handle))


def _register(plan):
    global _next_handle, _live_buffers
    entry = _Entry(plan)
    with _lock:
        handle = _next_handle
        _next_handle += 1
        _registry[handle] = entry
        _live_buffers += 2  # fhat + f
    return handle


def create(N, d, M):
    """New plan with default parameters; returns a handle > 0 or a negative code."""
    try:
        N = [int(v) for v in np.asarray(N).ravel()[: int(d)]]
        if len(N) != int(d):
            return ERR_SHAPE
        return _register(Plan(tuple(N), int(M)))
    except NfftError as exc:
        return _code_for(exc)
    except Exception:
        return ERR_INTERNAL


def create_advanced(N, d, M, n, m, f1, f2):
    """New plan with explicit grid, cutoff and flag words."""
    try:
        d = int(d)
        N = [int(v) for v in np.asarray(N).ravel()[:d]]
        n = [int(v) for v in np.asarray(n).ravel()[:d]]
        if len(N) != d or len(n) != d:
            return ERR_SHAPE
        return _register(Plan(tuple(N), int(M), n=tuple(n), m=int(m), f1=int(f1), f2=int(f2)))
    except NfftError as exc:
        return _code_for(exc)
    except Exception:
        return ERR_INTERNAL


def set_x(handle, values, length):
    """Copy M*d node coordinates into the plan and run its precomputation."""
    entry = _get(handle)
    if entry is None:
        return ERR_HANDLE
    plan = entry.plan
    try:
        values = np.asarray(values, dtype=np.float64).ravel()
        if int(length) != plan.M * plan.d or values.shape[0] != plan.M * plan.d:
            raise ShapeError(
                f"need {plan.M * plan.d} coordinates ({plan.M} nodes x {plan.d}), got {length}"
            )
        plan.set_nodes(values.reshape(plan.M, plan.d))
        plan.precompute()
        entry.err_code = 0
        return 0
    except NfftError as exc:
        return _store_error(entry, exc)
    except Exception as exc:  # pragma: no cover
        return _store_error(entry, NfftError(str(exc)))


def _set_complex(entry, target, values, length, what):
    try:
        values = np.asarray(values, dtype=np.float64).ravel()
        if int(length) != 2 * target.shape[0] or values.shape[0] != 2 * target.shape[0]:
            raise ShapeError(f"{what} needs {2 * target.shape[0]} interleaved doubles, got {length}")
        target[:] = values.view(np.complex128)
        entry.err_code = 0
        return 0
    except NfftError as exc:
        return _store_error(entry, exc)
    except Exception as exc:  # pragma: no cover
        return _store_error(entry, NfftError(str(exc)))


def set_fhat(handle, values, length):
    """Copy |I_N| complex coefficients (interleaved) into the plan buffer."""
    entry = _get(handle)
    if entry is None:
        return ERR_HANDLE
    return _set_complex(entry, entry.fhat, values, length, "fhat")


def set_f(handle, values, length):
    """Copy M complex samples (interleaved) into the plan buffer."""
    entry = _get(handle)
    if entry is None:
        return ERR_HANDLE
    return _set_complex(entry, entry.f, values, length, "f")


def trafo(handle):
    """Forward transform of the stored coefficients into the sample buffer."""
    entry = _get(handle)
    if entry is None:
        return ERR_HANDLE
    try:
        entry.f[:] = entry.plan.trafo(entry.fhat)
        entry.err_code = 0
        return 0
    except NfftError as exc:
        return _store_error(entry, exc)
    except Exception as exc:  # pragma: no cover
        return _store_error(entry, NfftError(str(exc)))


def adjoint(handle):
    """Adjoint transform of the stored samples into the coefficient buffer."""
    entry = _get(handle)
    if entry is None:
        return ERR_HANDLE
    try:
        entry.fhat[:] = entry.plan.adjoint(entry.f)
        entry.err_code = 0
        return 0
    except NfftError as exc:
        return _store_error(entry, exc)
    except Exception as exc:  # pragma: no cover
        return _store_error(entry, NfftError(str(exc)))


def get_f(handle):
    """Library-owned sample buffer (complex128 view), or None for a bad handle."""
    entry = _get(handle)
    return None if entry is None else entry.f


def get_fhat(handle):
    """Library-owned coefficient buffer (complex128 view), or None for a bad handle."""
    entry = _get(handle)
    return None if entry is None else entry.fhat


def last_error(handle):
    """(code, message) of the most recent failure on this handle."""
    entry = _get(handle)
    if entry is None:
        return (ERR_HANDLE, "invalid handle")
    return (entry.err_code, entry.err_msg if entry.err_code else "")


def destroy(handle):
    """Release the plan and its buffers; further calls on the handle fail."""
    global _live_buffers
    with _lock:
        entry = _registry.pop(int(handle), None)
        if entry is None:
            return ERR_HANDLE
        _live_buffers -= 2
    return 0


def live_handles():
    return len(_registry)


def live_buffers():
    return _live_buffers
