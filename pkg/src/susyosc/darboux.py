"""Seed solution, partner potential, and eigenfunctions of the deformed
oscillator family.

The family is labelled by (epsilon, beta) with the first seed coefficient
normalized to one.  The seed

    u(x) = e^{-x^2/2} [ 1F1((1-2 eps)/4, 1/2, x^2)
                        + beta x 1F1((3-2 eps)/4, 3/2, x^2) ]

solves -u''/2 + x^2 u / 2 = eps u and is nodeless on the real line iff
eps < 1/2 and, for real beta, |beta| < beta_critical(eps).  Complex beta
(nonzero imaginary part) is accepted for potential/eigenfunction evaluation
and gives a complex potential with the same real spectrum.

Everything is dimensionless: x in units of sqrt(hbar / m omega), energies
in units of hbar omega.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .errors import (
    BetaOutOfRange,
    ConvergenceError,
    DomainError,
    EpsilonTooLarge,
    GridError,
)
from .specfun import gamma

# Conditioning guard: beta_critical collapses like Gamma(1/4 - eps/2)^-1 as
# eps -> 1/2, so the family degenerates; override with allow_near_half.
EPSILON_SOFT_MAX = 0.499

# Boundary magnitude (relative to max) above which grid normalization is
# considered unreliable.
BOUNDARY_DECAY = 1e-8

# Coarsest spacing accepted by the finite-difference operator applications.
MAX_OPERATOR_SPACING = 0.01

_SQRT2 = math.sqrt(2.0)
_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class PartnerParams:
    """One member of the two-parameter family: (epsilon, beta), alpha = 1."""

    epsilon: float
    beta: complex = 0.0
    complex_family: bool = False


@dataclass(frozen=True)
class GridSpec:
    x_min: float
    x_max: float
    n_points: int

    def points(self) -> np.ndarray:
        if self.n_points < 6:
            raise GridError(f"grid needs at least 6 points, got {self.n_points}")
        if not self.x_max > self.x_min:
            raise GridError(f"empty grid [{self.x_min}, {self.x_max}]")
        return np.linspace(self.x_min, self.x_max, self.n_points)

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)


DEFAULT_GRID = GridSpec(-12.0, 12.0, 4801)


@dataclass
class WavefunctionGrid:
    """A wavefunction sampled on a uniform grid."""

    x: np.ndarray
    values: np.ndarray
    label: str

    @property
    def h(self) -> float:
        return float(self.x[1] - self.x[0])

    def norm_sq(self) -> float:
        return float(np.trapezoid(np.abs(self.values) ** 2, dx=self.h))

    def inner(self, other: "WavefunctionGrid") -> complex:
        return complex(np.trapezoid(np.conj(self.values) * other.values, dx=self.h))

    def boundary_decayed(self, threshold: float = BOUNDARY_DECAY) -> bool:
        peak = float(np.max(np.abs(self.values)))
        edge = max(abs(self.values[0]), abs(self.values[-1]))
        return edge < threshold * peak


def first_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order first derivative: 5-point centered stencil, one-sided at
    the four edge points."""
    f = np.asarray(values)
    if f.shape[0] < 5:
        raise GridError("first_derivative needs at least 5 points")
    out = np.empty_like(f)
    out[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h)
    out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h)
    out[-2] = (3.0 * f[-1] + 10.0 * f[-2] - 18.0 * f[-3] + 6.0 * f[-4] - f[-5]) / (12.0 * h)
    out[-1] = (25.0 * f[-1] - 48.0 * f[-2] + 36.0 * f[-3] - 16.0 * f[-4] + 3.0 * f[-5]) / (12.0 * h)
    return out


def second_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order second derivative with one-sided edge stencils."""
    f = np.asarray(values)
    if f.shape[0] < 6:
        raise GridError("second_derivative needs at least 6 points")
    h2 = 12.0 * h * h
    out = np.empty_like(f)
    out[2:-2] = (-f[:-4] + 16.0 * f[1:-3] - 30.0 * f[2:-2] + 16.0 * f[3:-1] - f[4:]) / h2
    out[0] = (45.0 * f[0] - 154.0 * f[1] + 214.0 * f[2] - 156.0 * f[3] + 61.0 * f[4] - 10.0 * f[5]) / h2
    out[1] = (10.0 * f[0] - 15.0 * f[1] - 4.0 * f[2] + 14.0 * f[3] - 6.0 * f[4] + f[5]) / h2
    out[-2] = (10.0 * f[-1] - 15.0 * f[-2] - 4.0 * f[-3] + 14.0 * f[-4] - 6.0 * f[-5] + f[-6]) / h2
    out[-1] = (45.0 * f[-1] - 154.0 * f[-2] + 214.0 * f[-3] - 156.0 * f[-4] + 61.0 * f[-5] - 10.0 * f[-6]) / h2
    return out


def energy_level(n: int) -> float:
    """Excited-sector energy E_n = n + 1/2 (shared with the plain oscillator)."""
    return n + 0.5


def beta_critical(epsilon: float) -> float:
    """Nodeless bound for real beta:
    beta_c(eps) = 2 Gamma(3/4 - eps/2) / Gamma(1/4 - eps/2), for eps < 1/2."""
    if epsilon >= 0.5:
        raise EpsilonTooLarge(
            f"beta_critical requires epsilon < 0.5, got {epsilon} "
            "(Gamma(1/4 - eps/2) hits its pole and the nodeless condition fails)"
        )
    return 2.0 * gamma(0.75 - 0.5 * epsilon) / gamma(0.25 - 0.5 * epsilon)


def validate_params(params: PartnerParams, *, allow_near_half: bool = False) -> PartnerParams:
    """Check the (epsilon, beta) domain and annotate the complex-family flag.

    Raises EpsilonTooLarge for eps >= 1/2 (or eps > 0.499 without the
    override) and BetaOutOfRange for real beta with |beta| >= beta_c(eps).
    """
    eps = float(params.epsilon)
    beta = complex(params.beta)
    if eps >= 0.5:
        raise EpsilonTooLarge(f"epsilon must satisfy epsilon < 0.5, got {eps}")
    if eps > EPSILON_SOFT_MAX and not allow_near_half:
        raise EpsilonTooLarge(
            f"epsilon = {eps} exceeds the conditioning guard {EPSILON_SOFT_MAX}; "
            "pass allow_near_half=True to override"
        )
    if beta.imag == 0.0:
        bound = beta_critical(eps)
        if abs(beta.real) >= bound:
            raise BetaOutOfRange(
                f"|beta| >= beta_c(epsilon) = {bound:.10g} (beta = {beta.real}, epsilon = {eps})"
            )
        return replace(params, epsilon=eps, beta=beta, complex_family=False)
    return replace(params, epsilon=eps, beta=beta, complex_family=True)


def _as_points(x):
    xs = np.asarray(x, dtype=float)
    scalar = xs.ndim == 0
    return np.atleast_1d(xs), scalar


class SeedSolution:
    """Evaluator for the nodeless seed u(x) and its derivative.

    All 1F1 factors are handled in log space, so u, u' and every derived
    quantity stay finite for |x| <= 30 even though 1F1(.., x^2) itself would
    overflow near |x| ~ 27.
    """

    def __init__(self, params: PartnerParams, *, allow_near_half: bool = False):
        self.params = validate_params(params, allow_near_half=allow_near_half)

    @property
    def epsilon(self) -> float:
        return self.params.epsilon

    @property
    def beta(self):
        if self.params.complex_family:
            return self.params.beta
        return self.params.beta.real

    def _scaled(self, xs: np.ndarray, with_deriv: bool = True):
        """Return (u_s, up_s, log_scale) with u = u_s e^{log_scale} and
        u' = up_s e^{log_scale}; up_s is None when with_deriv is False."""
        eps = self.epsilon
        beta = self.beta
        l1, l2, l1d, l2d, ok = _kernels.seed_log_series(eps, xs, with_deriv)
        if not ok:
            raise ConvergenceError("seed 1F1 series did not converge")
        m = np.maximum(l1, l2)
        e1 = np.exp(l1 - m)
        e2 = np.exp(l2 - m)
        u_s = e1 + beta * xs * e2
        log_scale = m - 0.5 * xs * xs
        if not with_deriv:
            return u_s, None, log_scale
        a1 = 0.25 * (1.0 - 2.0 * eps)
        a2 = 0.25 * (3.0 - 2.0 * eps)
        e1d = np.exp(l1d - m)
        e2d = np.exp(l2d - m)
        # chain rule through e^{-x^2/2}, the x prefactor, and the x^2 argument
        up_s = (
            -xs * u_s
            + 2.0 * xs * (a1 / 0.5) * e1d
            + beta * e2
            + 2.0 * beta * xs * xs * (a2 / 1.5) * e2d
        )
        return u_s, up_s, log_scale

    def u_and_deriv(self, x):
        """(u(x), u'(x)); overflows only beyond |x| ~ 30.6 where e^{x^2/2}
        leaves double range."""
        xs, scalar = _as_points(x)
        u_s, up_s, ls = self._scaled(xs)
        scale = np.exp(ls)
        u = u_s * scale
        up = up_s * scale
        if scalar:
            return u[0], up[0]
        return u, up

    def phi(self, x):
        """SUSY potential u'(x)/u(x), computed from the scaled parts so the
        ratio never materializes e^{x^2/2} magnitudes."""
        xs, scalar = _as_points(x)
        u_s, up_s, _ = self._scaled(xs)
        if np.any(np.abs(u_s) < 1e-300 * np.maximum(1.0, np.abs(up_s))):
            raise DomainError(
                "u(x) vanishes to working precision; parameters escape the nodeless domain"
            )
        out = up_s / u_s
        if scalar:
            return out[0]
        return out

    def potential(self, x):
        """Partner potential V_-(x) = (u'/u)^2 - x^2/2 + 2 eps."""
        xs, scalar = _as_points(x)
        phi = self.phi(xs)
        out = phi * phi - 0.5 * xs * xs + 2.0 * self.epsilon
        if scalar:
            return out[0]
        return out


def seed_u(seed: SeedSolution, x):
    return seed.u_and_deriv(x)


def susy_phi(seed: SeedSolution, x):
    return seed.phi(x)


def partner_potential(seed: SeedSolution, x):
    return seed.potential(x)


def ground_state(seed: SeedSolution, grid: GridSpec = DEFAULT_GRID) -> WavefunctionGrid:
    """Extra bound state at energy eps: N / u(x), normalized by trapezoidal
    quadrature on the grid.  Real beta only (the complex family has no
    normalizability statement)."""
    if seed.params.complex_family:
        raise DomainError("ground_state requires real beta")
    xs = grid.points()
    u_s, _, ls = seed._scaled(xs, with_deriv=False)
    values = np.exp(-ls) / u_s
    state = WavefunctionGrid(xs, values, "phi_minus_eps")
    if not state.boundary_decayed():
        raise GridError(
            f"grid [{grid.x_min}, {grid.x_max}] too small: boundary magnitude "
            f"exceeds {BOUNDARY_DECAY:g} of the peak, normalization unreliable"
        )
    state.values = values / math.sqrt(state.norm_sq())
    return state


def excited_state(seed: SeedSolution, n: int, grid: GridSpec = DEFAULT_GRID) -> WavefunctionGrid:
    """Closed-form eigenfunction at E_n = n + 1/2:

        e^{-x^2/2} [H_{n+1}(x) + (u'/u - x) H_n(x)]
        ------------------------------------------- .
        [sqrt(pi) 2^{n+1} n! (n + 1/2 - eps)]^{1/2}

    The printed normalization constant is used as-is (no grid
    re-normalization); unit norm is a test target, not an input.
    """
    if n < 0:
        raise ValueError(f"excited level must be nonnegative, got {n}")
    xs = grid.points()
    phi = seed.phi(xs)
    hn = _kernels.hermite_array(n, xs)
    hn1 = _kernels.hermite_array(n + 1, xs)
    norm = 1.0 / math.sqrt(_SQRT_PI * 2.0 ** (n + 1) * math.factorial(n) * (n + 0.5 - seed.epsilon))
    values = norm * np.exp(-0.5 * xs * xs) * (hn1 + (phi - xs) * hn)
    return WavefunctionGrid(xs, values, f"phi_minus_{n}")


def oscillator_state(n: int, grid: GridSpec = DEFAULT_GRID) -> WavefunctionGrid:
    """Plain oscillator eigenstate (sqrt(pi) 2^n n!)^{-1/2} H_n(x) e^{-x^2/2}."""
    if n < 0:
        raise ValueError(f"oscillator level must be nonnegative, got {n}")
    xs = grid.points()
    hn = _kernels.hermite_array(n, xs)
    norm = 1.0 / math.sqrt(_SQRT_PI * 2.0**n * math.factorial(n))
    return WavefunctionGrid(xs, norm * hn * np.exp(-0.5 * xs * xs), f"phi_plus_{n}")


def _check_operator_grid(psi: WavefunctionGrid) -> float:
    h = psi.h
    if h > MAX_OPERATOR_SPACING:
        raise GridError(
            f"grid spacing {h:.4g} too coarse for operator application "
            f"(need h <= {MAX_OPERATOR_SPACING})"
        )
    return h


def apply_a_op(seed: SeedSolution, psi: WavefunctionGrid, dagger: bool = False) -> WavefunctionGrid:
    """Apply A = (d/dx + u'/u)/sqrt(2), or its adjoint for dagger=True, via
    fourth-order finite differences on the grid."""
    h = _check_operator_grid(psi)
    deriv = first_derivative(psi.values, h)
    phi = seed.phi(psi.x)
    sign = -1.0 if dagger else 1.0
    values = (sign * deriv + phi * psi.values) / _SQRT2
    tag = "Adag" if dagger else "A"
    return WavefunctionGrid(psi.x, values, f"{tag}({psi.label})")


def apply_oscillator_op(psi: WavefunctionGrid, dagger: bool = False) -> WavefunctionGrid:
    """Apply the oscillator ladder operator a = (d/dx + x)/sqrt(2) or its
    adjoint."""
    h = _check_operator_grid(psi)
    deriv = first_derivative(psi.values, h)
    sign = -1.0 if dagger else 1.0
    values = (sign * deriv + psi.x * psi.values) / _SQRT2
    tag = "adag" if dagger else "a"
    return WavefunctionGrid(psi.x, values, f"{tag}({psi.label})")


def hamiltonian_residual(
    psi: WavefunctionGrid, potential_values: np.ndarray, energy: float
) -> float:
    """Max-norm of (-psi''/2 + V psi - E psi) relative to max |psi|."""
    h = psi.h
    resid = -0.5 * second_derivative(psi.values, h) + (potential_values - energy) * psi.values
    return float(np.max(np.abs(resid)) / np.max(np.abs(psi.values)))
