"""nfftk: self-contained nonequispaced fast Fourier transforms for d = 1, 2, 3.

Evaluates trigonometric polynomials at arbitrary nodes on the torus
(forward transform) and the conjugate-transposed accumulation (adjoint),
via window deconvolution, an oversampled FFT, and truncated-window
gathering.  Ships a benchmark CLI (``nfftk``) and a flat C ABI
(:mod:`nfftk.cabi`, :mod:`nfftk.abi`).
"""

from . import parallel  # noqa: F401  (must run first: configures the kernel thread pool)

from .errors import (  # noqa: F401
    CutoffError,
    InvalidBandlimitError,
    InvalidFlagError,
    NfftError,
    NodeRangeError,
    OracleFailureError,
    OversamplingError,
    PlanStateError,
    ShapeError,
    UndefinedMetricError,
    UnsupportedFlagError,
    WindowDegenerateError,
)
from .indexing import GatherRange, gather_range, index_set, linear_index, multi_index, transposed_members  # noqa: F401
from .window import WindowModel, phi_hat_oracle  # noqa: F401
from .fft import dft_ref, fft_1d, fft_nd  # noqa: F401
from .plan import (  # noqa: F401
    DEFAULT_CUTOFF,
    FFT_OUT_OF_PLACE,
    FFTW_DESTROY_INPUT,
    FFTW_ESTIMATE,
    FFTW_INIT,
    FG_PSI,
    MALLOC_F,
    MALLOC_F_HAT,
    MALLOC_X,
    NFFT_OMP_BLOCKWISE_ADJOINT,
    NFFT_SORT_NODES,
    PRE_FG_PSI,
    PRE_FULL_PSI,
    PRE_LIN_PSI,
    PRE_PHI_HUT,
    PRE_PSI,
    Plan,
    PrecomputeTables,
    default_f1,
    default_n,
)
from .transform import adjoint, ndft, ndft_adjoint, trafo  # noqa: F401
from .metrics import (  # noqa: F401
    ErrorReport,
    TimingReport,
    cost_estimate,
    error_e2,
    error_einf,
    error_report,
    time_mean10,
    time_plan,
)
from .parallel import get_threads, set_threads  # noqa: F401

__version__ = "0.1.0"
