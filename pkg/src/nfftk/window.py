"""Window functions for gridding: spatial form, Fourier transform, truncation.

Two windows are provided, selected by name:

``"kaiserbessel"``
    phi(x) = sinh(b sqrt(m^2 - n^2 x^2)) / (pi sqrt(m^2 - n^2 x^2)) on the
    core |x| <= m/n (continued with the matching sin form outside), with
    shape b = pi (2 - 1/sigma).  Its transform is
    phi_hat(k) = I0(m sqrt(b^2 - (2 pi k / n)^2)) / n, positive for all
    |k| <= n/2 whenever sigma > 1.

``"gaussian"``
    phi(x) = exp(-(n x)^2 / b) / sqrt(pi b) with b = 2 sigma m / ((2 sigma - 1) pi)
    and phi_hat(k) = exp(-b (pi k / n)^2) / n.

Both closed forms are gated by :func:`phi_hat_oracle`, an adaptive-quadrature
evaluation of the defining integral, rather than trusted blindly.  The
truncated window ``psi`` equals ``phi`` on |x| <= m/n and vanishes outside;
the gather/spread loops only ever evaluate inside that support.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from numba import njit
from scipy.integrate import quad

from .errors import NfftError, OracleFailureError, ShapeError, WindowDegenerateError

KAISER_BESSEL = 0
GAUSSIAN = 1

_KIND_BY_NAME = {"kaiserbessel": KAISER_BESSEL, "gaussian": GAUSSIAN}


@njit(cache=True)
def bessel_i0(x):
    """Modified Bessel function I0 by power series, term ratio cutoff 1e-16.

    Adequate for arguments up to a few hundred (cutoffs m <= 16).
    """
    s = 1.0
    t = 1.0
    q = 0.25 * x * x
    j = 0
    while True:
        j += 1
        t *= q / (j * j)
        s += t
        if t < 1e-16 * s:
            return s


@njit(cache=True)
def window_factor(code, t, n_i, m, b_i):
    """Scalar window value at offset ``t`` for one dimension.

    Shared by the table builders and the on-the-fly gridding kernels so
    every evaluation path produces bit-identical factors.
    """
    if code == KAISER_BESSEL:
        u = m * m - (n_i * t) * (n_i * t)
        if u > 0.0:
            z = math.sqrt(u)
            return math.sinh(b_i * z) / (math.pi * z)
        if u < 0.0:
            z = math.sqrt(-u)
            return math.sin(b_i * z) / (math.pi * z)
        return b_i / math.pi
    return math.exp(-(n_i * t) * (n_i * t) / b_i) / math.sqrt(math.pi * b_i)


@dataclass(frozen=True)
class WindowModel:
    """Window kind plus per-dimension shape parameters.

    ``sigma_i = n_i / N_i`` must exceed 1 in every dimension and the
    half-support ``m / n_i`` must stay below 1/2 so the 1-periodized
    truncated window has a single contributing shift on its support.
    """

    kind: str
    code: int
    n: tuple
    sigma: tuple
    m: int
    b: tuple = field(default=())

    @classmethod
    def make(cls, kind, N, n, m):
        code = _KIND_BY_NAME.get(str(kind).lower())
        if code is None:
            raise NfftError(f"unknown window {kind!r}; use 'kaiserbessel' or 'gaussian'")
        N = tuple(int(v) for v in N)
        n = tuple(int(v) for v in n)
        m = int(m)
        if len(N) != len(n):
            raise ShapeError("bandlimit and grid vectors differ in length")
        sigma = tuple(ni / Ni for ni, Ni in zip(n, N))
        for s in sigma:
            if s <= 1.0:
                raise NfftError(f"oversampling factor must exceed 1, got sigma={s}")
        for ni in n:
            if m / ni >= 0.5:
                raise NfftError(f"window support m/n={m}/{ni} must be below 1/2")
        if code == KAISER_BESSEL:
            b = tuple(math.pi * (2.0 - 1.0 / s) for s in sigma)
        else:
            b = tuple(2.0 * s * m / ((2.0 * s - 1.0) * math.pi) for s in sigma)
        return cls(kind=str(kind).lower(), code=code, n=n, sigma=sigma, m=m, b=b)

    @property
    def d(self):
        return len(self.n)

    def _dim(self, i):
        if not 0 <= i < self.d:
            raise ShapeError(f"dimension index {i} outside [0, {self.d})")
        return i

    def phi(self, t, i=0):
        """Untruncated window value(s) at offset ``t`` in dimension ``i``."""
        i = self._dim(i)
        t = np.asarray(t, dtype=np.float64)
        if t.ndim == 0:
            return window_factor(self.code, float(t), float(self.n[i]), float(self.m), self.b[i])
        flat = t.ravel()
        out = np.empty(flat.shape[0])
        for j in range(flat.shape[0]):
            out[j] = window_factor(self.code, flat[j], float(self.n[i]), float(self.m), self.b[i])
        return out.reshape(t.shape)

    def psi(self, t, i=0):
        """Truncated window: ``phi`` on |t| <= m/n_i, zero outside."""
        i = self._dim(i)
        t = np.asarray(t, dtype=np.float64)
        support = np.abs(t) <= self.m / self.n[i]
        return np.where(support, self.phi(t, i), 0.0)

    def phi_hat(self, k, i=0):
        """Fourier coefficient of the periodized window at integer frequency ``k``.

        Requires |k| <= n_i/2.  Raises WindowDegenerateError if the value is
        not strictly positive (would blow up the deconvolution).
        """
        i = self._dim(i)
        k = int(k)
        n_i = self.n[i]
        if abs(k) > n_i // 2:
            raise NfftError(f"|k|={abs(k)} exceeds n/2={n_i // 2}")
        if self.code == KAISER_BESSEL:
            arg = self.b[i] ** 2 - (2.0 * math.pi * k / n_i) ** 2
            if arg < 0.0:
                raise WindowDegenerateError(
                    f"kaiserbessel transform vanishes at k={k} (n={n_i}, b={self.b[i]:.4g})"
                )
            val = bessel_i0(self.m * math.sqrt(arg)) / n_i
        else:
            val = math.exp(-self.b[i] * (math.pi * k / n_i) ** 2) / n_i
        if not val > 0.0:
            raise WindowDegenerateError(f"window transform not positive at k={k}: {val}")
        return val

    def phi_hat_table(self, i=0, kmax=None):
        """Array of ``phi_hat`` over k = -kmax..kmax (defaults to n_i/2)."""
        i = self._dim(i)
        if kmax is None:
            kmax = self.n[i] // 2
        return np.array([self.phi_hat(k, i) for k in range(-kmax, kmax + 1)])

    def ck(self, k):
        """Tensor-product Fourier coefficient over all dimensions."""
        k = np.atleast_1d(np.asarray(k, dtype=np.int64))
        if k.shape[0] != self.d:
            raise ShapeError(f"multi-index has {k.shape[0]} dims, window has {self.d}")
        out = 1.0
        for i in range(self.d):
            out *= self.phi_hat(int(k[i]), i)
        return out


def _kb_tail_integral(c, m, b):
    """Tail of the kaiserbessel transform integral beyond the core support.

    After substituting u = sqrt(n^2 x^2 - m^2) the tail becomes
    (2 / (n pi)) * int_0^inf sin(b u) cos(c sqrt(u^2 + m^2)) / sqrt(u^2 + m^2) du
    with c = 2 pi k / n; the prefactor is applied by the caller.  QUADPACK's
    oscillatory rule handles most cases; mpmath's zero-bracketing rule is the
    fallback when its error estimate is too coarse.
    """

    def g(u):
        return np.cos(c * np.sqrt(u * u + m * m)) / np.sqrt(u * u + m * m)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = quad(g, 0.0, np.inf, weight="sin", wvar=b, epsabs=1e-14, limit=400, full_output=True)
    val, err = res[0], res[1]
    if err > 1e-12 or len(res) > 3:  # oversized estimate or QUADPACK warning message
        import mpmath as mp

        with mp.workdps(22):
            f = lambda u: mp.sin(b * u) * mp.cos(c * mp.sqrt(u * u + m * m)) / mp.sqrt(u * u + m * m)
            try:
                val = float(mp.quadosc(f, [0, mp.inf], zeros=lambda j: j * mp.pi / b))
            except Exception as exc:  # pragma: no cover - mpmath failure is exceptional
                raise OracleFailureError(f"oscillatory tail quadrature failed: {exc}") from exc
    return val


def phi_hat_oracle(w, k, i=0):
    """Quadrature evaluation of the window transform integral; test-only oracle.

    Integrates phi(x) cos(2 pi k x) over the real line (the window is even,
    so the sine part vanishes).  Independent of the closed forms in
    :meth:`WindowModel.phi_hat` apart from sharing the spatial evaluator.
    """
    i = w._dim(i)
    k = int(k)
    n_i = float(w.n[i])
    if abs(k) > w.n[i] // 2:
        raise NfftError(f"|k|={abs(k)} exceeds n/2={w.n[i] // 2}")
    m = float(w.m)
    b = w.b[i]

    if w.code == GAUSSIAN:
        # integrand below 1e-18 once (n x)^2 / b >= 42
        half_width = math.sqrt(42.0 * b) / n_i
        val, err = quad(
            lambda x: w.phi(x, i) * np.cos(2.0 * np.pi * k * x),
            0.0,
            half_width,
            epsabs=1e-15,
            epsrel=1e-14,
            limit=400,
        )
        if err > 1e-12:
            raise OracleFailureError(f"gaussian quadrature error {err:.2e} too large at k={k}")
        return 2.0 * val

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        core, core_err = quad(
            lambda x: w.phi(x, i) * np.cos(2.0 * np.pi * k * x),
            0.0,
            m / n_i,
            epsabs=1e-15,
            epsrel=1e-14,
            limit=400,
        )
    # the core can be huge (the window is unnormalized); gate on relative error
    scale = max(1.0, abs(core))
    if core_err > 1e-10 * scale:
        raise OracleFailureError(f"core quadrature error {core_err:.2e} too large at k={k}")
    tail = _kb_tail_integral(2.0 * math.pi * k / n_i, m, b)
    return 2.0 * core + 2.0 * tail / (n_i * math.pi)
