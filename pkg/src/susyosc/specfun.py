"""Special-function layer: Gamma, Pochhammer, confluent and generalized
hypergeometric series, Hermite polynomials.

All functions are pure and carry no global state.  Series evaluations
report their term count and convergence through :class:`SeriesResult`;
tolerances live in :mod:`susyosc._kernels` (relative tolerance 1e-15,
iteration cap 10000).
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConvergenceError, GammaPoleError, ParameterPoleError

SERIES_TOL = _kernels.SERIES_TOL
SERIES_MAX_TERMS = _kernels.SERIES_MAX_TERMS

# Distance below which an argument counts as sitting on a nonpositive integer.
_POLE_TOL = 1e-12


@dataclass(frozen=True)
class SeriesResult:
    """Value of a truncated series plus how it got there."""

    value: complex
    terms_used: int
    converged: bool


def _check_gamma_pole(z: complex, what: str) -> None:
    nearest = round(z.real)
    if nearest <= 0 and abs(z - nearest) < _POLE_TOL:
        raise GammaPoleError(f"{what} = {z} is within {_POLE_TOL} of the pole at {nearest}")


def log_gamma(z):
    """log Gamma(z) via the Lanczos kernel (complex output)."""
    zc = complex(z)
    _check_gamma_pole(zc, "log_gamma argument")
    return _kernels.loggamma(zc)


def gamma(z):
    """Gamma(z) for complex z off the nonpositive integers.

    Lanczos approximation (g = 7, 9 coefficients), reflection formula for
    Re z < 1/2; good to ~13 significant digits for |z| <= 50.
    """
    zc = complex(z)
    _check_gamma_pole(zc, "gamma argument")
    value = np.exp(_kernels.loggamma(zc))
    if isinstance(z, complex):
        return complex(value)
    return float(value.real)


def pochhammer(z, n: int):
    """Rising factorial (z)_n as the finite product z (z+1) ... (z+n-1).

    Finite products make Gamma poles harmless; (z)_0 = 1.
    """
    if n < 0:
        raise ValueError(f"pochhammer order must be nonnegative, got {n}")
    out = complex(1.0)
    for k in range(n):
        out *= z + k
    if isinstance(z, complex):
        return out
    return out.real


def _check_series_params(what: str, *params: float) -> None:
    for p in params:
        nearest = round(p)
        if nearest <= 0 and abs(p - nearest) < _POLE_TOL:
            raise ParameterPoleError(
                f"{what} denominator parameter {p} sits on the pole at {nearest}"
            )


def kummer_1f1(a: float, b: float, z: float) -> SeriesResult:
    """Confluent hypergeometric 1F1(a, b, z) by direct summation.

    In-scope calls have a, b > 0 and z >= 0, where every term is positive
    and the summation is cancellation-free.
    """
    _check_series_params("1F1", b)
    value, terms, converged = _kernels.hyp1f1_value(float(a), float(b), float(z))
    if not converged:
        raise ConvergenceError(f"1F1({a}, {b}, {z}) did not converge in {terms} terms")
    return SeriesResult(value, terms, converged)


def kummer_1f1_deriv(a: float, b: float, z: float) -> SeriesResult:
    """d/dz 1F1(a, b, z) = (a/b) 1F1(a+1, b+1, z)."""
    _check_series_params("1F1 derivative", b, b + 1.0)
    value, terms, converged = _kernels.hyp1f1_value(float(a) + 1.0, float(b) + 1.0, float(z))
    if not converged:
        raise ConvergenceError(f"1F1'({a}, {b}, {z}) did not converge in {terms} terms")
    return SeriesResult(a / b * value, terms, converged)


def log_scaled_1f1(a: float, b: float, z: float) -> float:
    """log(1F1(a, b, z)) for a, b > 0, z >= 0, stable out to z ~ 900.

    1F1 itself grows like e^z and overflows near z ~ 700; callers that need
    e^{-z/2} 1F1 products subtract in log space instead.
    """
    if z < 0.0:
        raise ValueError(f"log_scaled_1f1 requires z >= 0, got {z}")
    _check_series_params("1F1", b)
    value, terms, converged = _kernels.hyp1f1_log(float(a), float(b), float(z))
    if not converged:
        raise ConvergenceError(f"log 1F1({a}, {b}, {z}) did not converge in {terms} terms")
    return value


def hyp_0f2(b1: float, b2: float, z) -> SeriesResult:
    """Generalized hypergeometric 0F2(b1, b2; z), entire in z (real or complex)."""
    _check_series_params("0F2", b1, b2)
    value, terms, converged = _kernels.hyp0f2_value(float(b1), float(b2), complex(z))
    if not converged:
        raise ConvergenceError(f"0F2({b1}, {b2}; {z}) did not converge in {terms} terms")
    if isinstance(z, complex):
        return SeriesResult(value, terms, converged)
    return SeriesResult(value.real, terms, converged)


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x) for scalar or array x."""
    if n < 0:
        raise ValueError(f"Hermite degree must be nonnegative, got {n}")
    xs = np.asarray(x, dtype=float)
    values = _kernels.hermite_array(n, np.atleast_1d(xs).ravel())
    if xs.ndim == 0:
        return float(values[0])
    return values.reshape(xs.shape)
