"""Hot numeric kernels: hypergeometric series, log-gamma, Hermite recurrences,
and the vertical-contour density integral.

Every kernel is plain scalar-loop Python that numba can compile.  By default
the loops are jitted with ``@njit(cache=True)``; setting the environment
variable ``SUSYOSC_DISABLE_NUMBA=1`` (before import) selects the uncompiled
pure-Python path instead.  ``benchmarks/bench_kernels.py`` compares the two.
"""

import cmath
import math
import os

import numpy as np

NUMBA_DISABLED = os.environ.get("SUSYOSC_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")

if NUMBA_DISABLED:
    USING_NUMBA = False
else:
    try:
        from numba import njit as _njit

        USING_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USING_NUMBA = False

if USING_NUMBA:
    def _jit(func):
        return _njit(cache=True)(func)
else:
    def _jit(func):
        return func


# Relative series tolerance and hard iteration cap shared by all series.
SERIES_TOL = 1e-15
SERIES_MAX_TERMS = 10_000

# Rescale threshold for log-space summation of wide-range positive series.
_RESCALE = 1e280
_LOG_RESCALE = math.log(_RESCALE)

# Lanczos approximation, g = 7, 9 coefficients (double-precision set).
_LANCZOS_C0 = 0.99999999999980993
_LANCZOS = np.array(
    [
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ]
)
_LOG_SQRT_2PI = 0.9189385332046727417803297
_PI = math.pi
_LOG_PI = math.log(math.pi)


@_jit
def hyp1f1_value(a, b, z):
    """Maclaurin series of 1F1(a, b, z).  Returns (value, terms, converged)."""
    term = 1.0
    total = 1.0
    k = 0
    while k < SERIES_MAX_TERMS:
        term *= (a + k) / (b + k) * z / (k + 1.0)
        total += term
        k += 1
        if abs(term) < SERIES_TOL * abs(total):
            return total, k, True
    return total, k, False


@_jit
def hyp1f1_log(a, b, z):
    """log(1F1(a, b, z)) for a, b > 0 and z >= 0 (positive-term series).

    The running sum is rescaled whenever it crosses 1e280, so arguments up
    to z ~ 900 (grid points |x| ~ 30) stay in range.
    Returns (log_value, terms, converged).
    """
    term = 1.0
    total = 1.0
    log_scale = 0.0
    k = 0
    while k < SERIES_MAX_TERMS:
        term *= (a + k) / (b + k) * z / (k + 1.0)
        total += term
        k += 1
        if term < SERIES_TOL * total:
            return math.log(total) + log_scale, k, True
        if total > _RESCALE:
            total /= _RESCALE
            term /= _RESCALE
            log_scale += _LOG_RESCALE
    return math.log(total) + log_scale, k, False


@_jit
def hyp0f2_value(b1, b2, z):
    """Series of 0F2(b1, b2; z) for complex z (entire function).

    Returns (value, terms, converged).
    """
    term = complex(1.0, 0.0)
    total = complex(1.0, 0.0)
    k = 0
    while k < SERIES_MAX_TERMS:
        term *= z / ((b1 + k) * (b2 + k) * (k + 1.0))
        total += term
        k += 1
        if abs(term) < SERIES_TOL * abs(total):
            return total, k, True
    return total, k, False


@_jit
def hyp0f2_real_array(b1, b2, zs):
    """0F2 at an array of real arguments.  Returns (values, all_converged)."""
    out = np.empty(zs.shape[0])
    ok = True
    for i in range(zs.shape[0]):
        val, _, conv = hyp0f2_value(b1, b2, complex(zs[i], 0.0))
        out[i] = val.real
        ok = ok and conv
    return out, ok


@_jit
def seed_log_series(eps, xs, with_deriv):
    """Log-scaled 1F1 data for the oscillator seed at each grid point.

    Returns (l1, l2, l1d, l2d, converged) where l1/l2 are the logs of the
    two seed series at z = x^2 and l1d/l2d the logs of the shifted-parameter
    series entering the derivative (filled with zeros if with_deriv is
    False).
    """
    n = xs.shape[0]
    l1 = np.empty(n)
    l2 = np.empty(n)
    l1d = np.zeros(n)
    l2d = np.zeros(n)
    a1 = 0.25 * (1.0 - 2.0 * eps)
    a2 = 0.25 * (3.0 - 2.0 * eps)
    ok = True
    for i in range(n):
        z = xs[i] * xs[i]
        v, _, c = hyp1f1_log(a1, 0.5, z)
        l1[i] = v
        ok = ok and c
        v, _, c = hyp1f1_log(a2, 1.5, z)
        l2[i] = v
        ok = ok and c
        if with_deriv:
            v, _, c = hyp1f1_log(a1 + 1.0, 1.5, z)
            l1d[i] = v
            ok = ok and c
            v, _, c = hyp1f1_log(a2 + 1.0, 2.5, z)
            l2d[i] = v
            ok = ok and c
    return l1, l2, l1d, l2d, ok


@_jit
def hermite_array(n, xs):
    """Physicists' Hermite polynomial H_n on an array, by the three-term
    recurrence H_{k+1} = 2x H_k - 2k H_{k-1}."""
    m = xs.shape[0]
    out = np.empty(m)
    for i in range(m):
        x = xs[i]
        hkm1 = 1.0
        if n == 0:
            out[i] = hkm1
            continue
        hk = 2.0 * x
        for k in range(1, n):
            hkp1 = 2.0 * x * hk - 2.0 * k * hkm1
            hkm1 = hk
            hk = hkp1
        out[i] = hk
    return out


@_jit
def _lanczos_loggamma(z):
    # valid for Re z >= 0.5
    zm1 = z - 1.0
    acc = complex(_LANCZOS_C0, 0.0)
    for i in range(8):
        acc += _LANCZOS[i] / (zm1 + (i + 1.0))
    t = zm1 + 7.5
    return _LOG_SQRT_2PI + (zm1 + 0.5) * cmath.log(t) - t + cmath.log(acc)


@_jit
def loggamma(z):
    """log Gamma(z) (Lanczos g = 7); reflection for Re z < 1/2.

    The imaginary part is not reduced to the principal branch, which is
    irrelevant here because results are only ever exponentiated.
    """
    if z.real >= 0.5:
        return _lanczos_loggamma(z)
    return _LOG_PI - cmath.log(cmath.sin(_PI * z)) - _lanczos_loggamma(1.0 - z)


@_jit
def mellin_density(xs, eps, cs, nodes, weights, tail_rel, max_panels):
    """Un-normalized inverse-Mellin density at each x > 0.

    Evaluates (1/pi) * Re  integral_0^T  G(c + i t) x^{-c-it} dt  with
    G(s) = Gamma(s) Gamma(s - 1/2 - eps) Gamma(s + 1/2 - eps), using unit
    Gauss-Legendre panels along the contour.  Each |Gamma(c+it)| factor
    decays like exp(-pi |t| / 2), so the integrand drops below tail_rel of
    its running peak within a handful of panels; integration stops there.
    Returns (values, all_converged).  The caller divides by
    Gamma(1/2 - eps) Gamma(3/2 - eps).
    """
    n = xs.shape[0]
    m = nodes.shape[0]
    out = np.empty(n)
    ok = True
    for i in range(n):
        lx = math.log(xs[i])
        c = cs[i]
        total = 0.0
        peak = 0.0
        converged = False
        for k in range(max_panels):
            panel = 0.0
            panel_peak = 0.0
            for j in range(m):
                t = k + 0.5 * (nodes[j] + 1.0)
                s = complex(c, t)
                lg = (
                    loggamma(s)
                    + loggamma(s - 0.5 - eps)
                    + loggamma(s + 0.5 - eps)
                    - s * lx
                )
                v = cmath.exp(lg).real
                panel += weights[j] * v
                av = abs(v)
                if av > panel_peak:
                    panel_peak = av
            total += 0.5 * panel
            if panel_peak > peak:
                peak = panel_peak
            if panel_peak < tail_rel * peak:
                converged = True
                break
        out[i] = total / _PI
        ok = ok and converged
    return out, ok
