"""Exception types shared across the package.

Two families: parameter-domain violations (map to CLI exit code 2) and
numerical-convergence failures (exit code 3).
"""


class DomainError(ValueError):
    """A parameter lies outside the validity domain of the requested quantity."""


class EpsilonTooLarge(DomainError):
    """Factorization energy at or above the oscillator ground-state energy 1/2."""


class BetaOutOfRange(DomainError):
    """Real seed coefficient beta at or beyond the nodeless bound beta_c(epsilon)."""


class GammaPoleError(DomainError):
    """Gamma evaluated within machine tolerance of a nonpositive integer."""


class ParameterPoleError(DomainError):
    """Hypergeometric series with a nonpositive-integer denominator parameter."""


class GridError(DomainError):
    """Grid too small for reliable normalization, or too coarse for stencils."""


class ConvergenceError(RuntimeError):
    """A series, contour integral, or quadrature failed to reach tolerance."""
