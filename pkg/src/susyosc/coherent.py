"""Eigenstates of the lowering operator B and their resolution-of-unity
measure.

A state |mu> = sum_n c_n mu^n |n> over the excited sector solves
B |mu> = mu |mu> when the coefficients obey

    c_{n+1} = c_n / sqrt((n + 1/2 - eps)(n + 1)(n + 3/2 - eps)),

i.e. c_n / c_0 = [n! (1/2 - eps)_n (3/2 - eps)_n]^{-1/2}, with
c_0^{-2} = 0F2(1/2 - eps, 3/2 - eps; |mu|^2).  The isolated eps-state never
enters the expansion.

Completeness over the excited sector holds with the rotation-invariant
measure  d(phi) dx sigma(x) / (2 pi c_0^2(sqrt x)) in the polar
parametrization mu = sqrt(x) e^{i phi}, where sigma is fixed by its power
moments

    int_0^inf sigma(x) x^n dx
        = Gamma(n+1) Gamma(n + 1/2 - eps) Gamma(n + 3/2 - eps)
          / [Gamma(1/2 - eps) Gamma(3/2 - eps)]

and recovered numerically here by inverse Mellin transformation along a
vertical contour right of all Gamma poles.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import _kernels
from .algebra import ladder_coefficient
from .errors import ConvergenceError, DomainError
from .specfun import hyp_0f2, pochhammer

# State truncation: stop once |c_N mu^N|^2 drops below this fraction of the
# accumulated norm, which keeps the first dropped coefficient below 1e-14.
TRUNCATION_REL = 1e-28
MAX_COEFFS = 500

# Contour quadrature: unit Gauss-Legendre panels, stopping where the
# integrand falls below CONTOUR_TAIL_REL of its running peak.
CONTOUR_NODES = 24
CONTOUR_TAIL_REL = 1e-18
CONTOUR_MAX_PANELS = 120

# Moment quadrature: decade segments are added until a segment contributes
# less than this fraction of the accumulated integral.
MOMENT_TAIL_REL = 1e-12
MOMENT_X_CAP = 1e12

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(CONTOUR_NODES)


def _check_epsilon(epsilon: float) -> float:
    eps = float(epsilon)
    if eps >= 0.5:
        raise DomainError(f"epsilon must satisfy epsilon < 0.5, got {eps}")
    return eps


@dataclass(frozen=True)
class CoherentState:
    """Truncated lowering-operator eigenstate with label mu."""

    mu: complex
    epsilon: float
    coeffs: np.ndarray  # c_0 c_n/c_0 mu^n over the excited sector, n = 0..N
    c0: float
    trunc_tail: float  # magnitude of the first dropped coefficient

    @property
    def n_trunc(self) -> int:
        return len(self.coeffs) - 1

    def fock_vector(self, dim: int) -> np.ndarray:
        """Embed into the [eps-state, 0..dim-1] basis; the eps-state entry
        is structurally zero."""
        if dim < len(self.coeffs):
            raise ValueError(f"dim = {dim} cannot hold {len(self.coeffs)} coefficients")
        out = np.zeros(dim + 1, dtype=complex)
        out[1 : len(self.coeffs) + 1] = self.coeffs
        return out


def coherent_coeffs(epsilon: float, n_max: int) -> np.ndarray:
    """c_n / c_0 for n = 0..n_max via the ladder recurrence."""
    eps = _check_epsilon(epsilon)
    out = np.empty(n_max + 1)
    out[0] = 1.0
    for n in range(n_max):
        out[n + 1] = out[n] / ladder_coefficient(eps, n)
    return out


def coherent_coeffs_closed_form(epsilon: float, n_max: int) -> np.ndarray:
    """c_n / c_0 = [n! (1/2 - eps)_n (3/2 - eps)_n]^{-1/2}; independent
    Pochhammer route used to cross-check the recurrence."""
    eps = _check_epsilon(epsilon)
    out = np.empty(n_max + 1)
    for n in range(n_max + 1):
        out[n] = 1.0 / math.sqrt(
            math.factorial(n) * pochhammer(0.5 - eps, n) * pochhammer(1.5 - eps, n)
        )
    return out


def normalization_c0(epsilon: float, mu: complex) -> float:
    """c_0(mu) = 0F2(1/2 - eps, 3/2 - eps; |mu|^2)^{-1/2}."""
    eps = _check_epsilon(epsilon)
    z = abs(complex(mu)) ** 2
    return 1.0 / math.sqrt(hyp_0f2(0.5 - eps, 1.5 - eps, z).value)


def build_coherent_state(epsilon: float, mu: complex, n_max: int | None = None) -> CoherentState:
    """Assemble a normalized eigenstate of B, truncating automatically where
    |c_n mu^n|^2 falls below 1e-28 of the running norm (or at n_max if
    given, raising if the tail is still too large there)."""
    eps = _check_epsilon(epsilon)
    mu = complex(mu)
    cap = MAX_COEFFS if n_max is None else int(n_max)
    ratios = coherent_coeffs(eps, cap + 1)
    terms_sq = (ratios * np.abs(mu) ** np.arange(cap + 2)) ** 2

    running = 0.0
    n_trunc = None
    for n in range(cap + 1):
        running += terms_sq[n]
        if n > 0 and terms_sq[n] < TRUNCATION_REL * running:
            n_trunc = n
            break
    if n_trunc is None:
        raise ConvergenceError(
            f"coefficients not yet negligible at n = {cap}: relative tail "
            f"{terms_sq[cap] / running:.3g} > {TRUNCATION_REL}"
        )
    c0 = normalization_c0(eps, mu)
    coeffs = c0 * ratios[: n_trunc + 1] * mu ** np.arange(n_trunc + 1)
    tail = c0 * ratios[n_trunc + 1] * abs(mu) ** (n_trunc + 1)
    return CoherentState(mu=mu, epsilon=eps, coeffs=coeffs, c0=c0, trunc_tail=float(tail))


def overlap(s1: CoherentState, s2: CoherentState) -> complex:
    """<mu|nu> = c_0(mu) c_0(nu) 0F2(1/2 - eps, 3/2 - eps; conj(mu) nu)."""
    if s1.epsilon != s2.epsilon:
        raise DomainError(
            f"overlap requires matching epsilon, got {s1.epsilon} and {s2.epsilon}"
        )
    eps = s1.epsilon
    arg = np.conj(s1.mu) * s2.mu
    return s1.c0 * s2.c0 * complex(hyp_0f2(0.5 - eps, 1.5 - eps, complex(arg)).value)


def _contour_abscissae(epsilon: float, xs: np.ndarray, contour_abscissa: float | None):
    """Abscissa(e) for the vertical contour.  Poles sit at s = -k, at
    s = 1/2 + eps - k, and at s = -1/2 + eps - k (k = 0, 1, ...), so any
    c > max(0, 1/2 + eps) is admissible and all choices agree by Cauchy's
    theorem.  The automatic choice max(1, x^(1/3)) tracks the saddle of the
    integrand: with a fixed abscissa the true value sigma(x) ~ e^{-3 x^(1/3)}
    would drown in cancellation noise for x beyond ~1e3."""
    rightmost_pole = max(0.0, 0.5 + epsilon)
    if contour_abscissa is None:
        return np.maximum(1.0, np.cbrt(xs))
    c = float(contour_abscissa)
    if c <= rightmost_pole:
        raise DomainError(
            f"contour abscissa {c} is not right of the Gamma pole at {rightmost_pole:.10g}"
        )
    return np.full_like(xs, c)


def measure_density(epsilon: float, x, contour_abscissa: float | None = None):
    """Radial measure density sigma(x) for x > 0 by numerical inverse Mellin
    transformation of the moment sequence.

    Accepts a scalar or array; contour_abscissa fixes the vertical line
    (useful for contour-independence checks), default is automatic.
    """
    eps = _check_epsilon(epsilon)
    xs = np.asarray(x, dtype=float)
    scalar = xs.ndim == 0
    xs = np.atleast_1d(xs)
    if np.any(xs <= 0.0):
        raise DomainError("measure_density requires x > 0")
    cs = _contour_abscissae(eps, xs, contour_abscissa)
    raw, ok = _kernels.mellin_density(
        xs, eps, cs, _GL_NODES, _GL_WEIGHTS, CONTOUR_TAIL_REL, CONTOUR_MAX_PANELS
    )
    if not ok:
        raise ConvergenceError(
            f"contour tail still above {CONTOUR_TAIL_REL:g} of peak after "
            f"{CONTOUR_MAX_PANELS} panels"
        )
    norm = math.exp(math.lgamma(0.5 - eps) + math.lgamma(1.5 - eps))
    out = raw / norm
    if scalar:
        return float(out[0])
    return out


@dataclass(frozen=True)
class MeasureDensity:
    """Callable handle for sigma(x) at fixed epsilon and contour choice."""

    epsilon: float
    contour_abscissa: float | None = None

    def __call__(self, x):
        return measure_density(self.epsilon, x, self.contour_abscissa)


def moment_target(epsilon: float, n: int) -> float:
    """Closed-form n-th moment Gamma(n+1) (1/2-eps)_n (3/2-eps)_n."""
    eps = _check_epsilon(epsilon)
    return math.factorial(n) * pochhammer(0.5 - eps, n) * pochhammer(1.5 - eps, n)


def measure_moment(epsilon: float, n: int) -> float:
    """int_0^inf sigma(x) x^n dx by adaptive quadrature: QAGS on (0, 1]
    (sigma has an integrable x^{-1/2-eps} endpoint singularity for
    eps > -1/2), then decade segments grown until the tail is negligible."""
    eps = _check_epsilon(epsilon)
    density = MeasureDensity(eps)

    def integrand(x):
        return density(x) * x**n

    total, _ = quad(integrand, 0.0, 1.0, epsabs=1e-13, epsrel=1e-10, limit=400)
    lo = 1.0
    while lo < MOMENT_X_CAP:
        hi = 10.0 * lo
        part, _ = quad(integrand, lo, hi, epsabs=1e-13, epsrel=1e-10, limit=400)
        total += part
        if abs(part) < MOMENT_TAIL_REL * abs(total):
            return total
        lo = hi
    raise ConvergenceError(
        f"moment n = {n} tail still significant at x = {MOMENT_X_CAP:g}"
    )


def radial_density(epsilon: float, x):
    """f(x) = sigma(x) 0F2(1/2 - eps, 3/2 - eps; x), the rotation-averaged
    weight over the label plane as a function of x = |mu|^2."""
    eps = _check_epsilon(epsilon)
    xs = np.asarray(x, dtype=float)
    scalar = xs.ndim == 0
    xs = np.atleast_1d(xs)
    sig = measure_density(eps, xs)
    f02, ok = _kernels.hyp0f2_real_array(0.5 - eps, 1.5 - eps, xs)
    if not ok:
        raise ConvergenceError("0F2 series did not converge in radial_density")
    out = sig * f02
    if scalar:
        return float(out[0])
    return out


def resolution_of_unity_check(epsilon: float, dim: int) -> np.ndarray:
    """Deviation of int dmeasure |mu><mu| from 1 - (eps-state projector) on
    the truncated basis [eps-state, 0..dim-1].

    The angular integration kills every off-diagonal term exactly and the
    c_0 factors cancel against the measure, so the only nontrivial entries
    are the excited diagonals r_n^2 * moment_n - 1 with
    r_n = c_n / c_0; the eps-state row and column vanish structurally.
    """
    eps = _check_epsilon(epsilon)
    ratios = coherent_coeffs(eps, dim)
    out = np.zeros((dim + 1, dim + 1))
    for n in range(dim):
        out[n + 1, n + 1] = ratios[n] ** 2 * measure_moment(eps, n) - 1.0
    return out
