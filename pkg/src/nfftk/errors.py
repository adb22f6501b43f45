"""Exception hierarchy shared by all nfftk modules."""


class NfftError(Exception):
    """Base class for all nfftk errors."""


class InvalidBandlimitError(NfftError):
    """A bandlimit entry is odd or not positive."""


class OversamplingError(NfftError):
    """An FFT length does not exceed the matching bandlimit."""


class CutoffError(NfftError):
    """Window cutoff too large for the oversampled grid (needs 2m+1 <= min n_i)."""


class InvalidFlagError(NfftError):
    """Flag word contains bits outside the documented set."""


class UnsupportedFlagError(InvalidFlagError):
    """Flag is recognized but its behaviour is not provided by this library."""


class NodeRangeError(NfftError):
    """A node coordinate lies outside [-1/2, 1/2)."""


class ShapeError(NfftError):
    """An array argument has the wrong shape or length."""


class PlanStateError(NfftError):
    """Operation requires plan state (nodes, tables) that is not present."""


class WindowDegenerateError(NfftError):
    """Window transform is zero or negative where the deconvolution divides by it."""


class UndefinedMetricError(NfftError):
    """Error metric denominator is zero."""


class OracleFailureError(NfftError):
    """Reference quadrature did not converge to the requested accuracy."""
