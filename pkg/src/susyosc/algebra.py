"""Ladder operators of the partner Hamiltonian on a truncated level basis.

The basis is ordered [extra state at energy eps, n = 0, 1, ..., dim-1].
B lowers within the excited sector with

    B |n+1> = sqrt((n + 1/2 - eps)(n + 1)(n + 3/2 - eps)) |n>,

annihilates |0>, and both B and its adjoint annihilate the eps-state, which
therefore sits in a structurally decoupled row/column rather than being
dropped.  Together with H the pair closes a quadratic algebra,

    [H, B] = -B,  [H, Bdag] = Bdag,  [B, Bdag] = 3 H^2 - 4 eps H + eps^2,

whose Casimir B Bdag - psi(H) vanishes identically on this representation
for the cubic psi(H) = (H - eps)(H + 1/2)(H + 1 - eps).
"""

import math
from dataclasses import dataclass

import numpy as np

from .darboux import (
    DEFAULT_GRID,
    GridSpec,
    SeedSolution,
    apply_a_op,
    apply_oscillator_op,
    excited_state,
)
from .errors import DomainError


@dataclass(frozen=True)
class FockRep:
    """Truncated matrices of H, B, Bdag over [eps-state, 0 .. dim-1]."""

    epsilon: float
    dim: int
    h_minus: np.ndarray
    b: np.ndarray
    b_dagger: np.ndarray

    @property
    def basis_labels(self) -> list[str]:
        return ["eps"] + [str(n) for n in range(self.dim)]

    def interior(self, matrix: np.ndarray) -> np.ndarray:
        """Sub-block excluding the top basis state, where truncation corrupts
        [B, Bdag] and B Bdag."""
        return matrix[: self.dim, : self.dim]


def ladder_coefficient(epsilon: float, n: int) -> float:
    """Matrix element linking levels n+1 -> n."""
    return math.sqrt((n + 0.5 - epsilon) * (n + 1.0) * (n + 1.5 - epsilon))


def structure_polynomial(epsilon: float, h):
    """psi(h) = (h - eps)(h + 1/2)(h + 1 - eps), elementwise on arrays."""
    h = np.asarray(h, dtype=float)
    out = (h - epsilon) * (h + 0.5) * (h + 1.0 - epsilon)
    if out.ndim == 0:
        return float(out)
    return out


def build_fock_rep(epsilon: float, dim: int) -> FockRep:
    """Closed-form truncated representation with dim excited levels."""
    if epsilon >= 0.5:
        raise DomainError(f"epsilon must satisfy epsilon < 0.5, got {epsilon}")
    if dim < 2:
        raise DomainError(f"need at least 2 excited levels, got dim = {dim}")
    size = dim + 1
    h = np.zeros((size, size))
    h[0, 0] = epsilon
    for n in range(dim):
        h[n + 1, n + 1] = n + 0.5
    b = np.zeros((size, size))
    for n in range(dim - 1):
        b[n + 1, n + 2] = ladder_coefficient(epsilon, n)
    return FockRep(epsilon=epsilon, dim=dim, h_minus=h, b=b, b_dagger=b.T.copy())


def oscillator_ladder(dim: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Plain oscillator baseline: a, adag, H_+ matrices on dim levels."""
    a = np.zeros((dim, dim))
    for n in range(dim - 1):
        a[n, n + 1] = math.sqrt(n + 1.0)
    h = np.diag(np.arange(dim) + 0.5)
    return a, a.T.copy(), h


def _scaled_max(rep: FockRep, delta: np.ndarray, rhs: np.ndarray) -> float:
    """Max-norm of an identity residual on the interior block, scaled by the
    magnitude of the identity's right-hand side there.

    The matrix entries grow like dim^3, so an unscaled residual would sit at
    a few ulp of ~dim^3 no matter how exact the structure is; scaling keeps
    "zero up to the floating-point floor" meaningful at every dim.
    """
    scale = max(1.0, float(np.max(np.abs(rep.interior(rhs)))))
    return float(np.max(np.abs(rep.interior(delta)))) / scale


def commutator_check(rep: FockRep) -> dict[str, float]:
    """Scaled max-norm residuals of the three defining commutators on the
    interior block (truncation corrupts the last row/column of [B, Bdag]).

    H is diagonal with unit level spacing, so [H, B] is formed elementwise
    as (h_m - h_n) B_mn and the linear relations come out exactly zero.
    """
    if rep.dim < 3:
        raise DomainError("commutator_check needs dim >= 3")
    b, bd = rep.b, rep.b_dagger
    eps = rep.epsilon
    d = np.diagonal(rep.h_minus)
    gaps = d[:, None] - d[None, :]
    r_hb = gaps * b + b
    r_hbd = gaps * bd - bd
    quad = np.diag(3.0 * d * d - 4.0 * eps * d + eps * eps)
    r_bbd = b @ bd - bd @ b - quad
    return {
        "h_b": _scaled_max(rep, r_hb, b),
        "h_b_dagger": _scaled_max(rep, r_hbd, bd),
        "b_b_dagger": _scaled_max(rep, r_bbd, quad),
    }


def casimir_check(rep: FockRep) -> dict[str, float]:
    """Scaled residuals of B Bdag = psi(H), Bdag B = psi(H - 1), and of the
    Casimir C = B Bdag - psi(H) on the interior block."""
    h, b, bd = rep.h_minus, rep.b, rep.b_dagger
    diag = np.diagonal(h)
    psi_h = np.diag(structure_polynomial(rep.epsilon, diag))
    psi_h_shift = np.diag(structure_polynomial(rep.epsilon, diag - 1.0))
    r_bbd = b @ bd - psi_h
    r_bdb = bd @ b - psi_h_shift
    return {
        "bb_dagger_vs_psi": _scaled_max(rep, r_bbd, psi_h),
        "bdagger_b_vs_psi_shifted": _scaled_max(rep, r_bdb, psi_h_shift),
        "casimir": _scaled_max(rep, r_bbd, psi_h),
    }


def build_b_via_susy(
    seed: SeedSolution, dim: int, grid: GridSpec = DEFAULT_GRID
) -> np.ndarray:
    """Excited-sector B matrix from position space: sandwich the chained
    operator Adag a A between closed-form eigenfunctions by trapezoidal
    quadrature.  Independent of the closed-form matrix elements; agreement
    (and beta-independence) is a test target."""
    if seed.params.complex_family:
        raise DomainError("build_b_via_susy requires real beta")
    if grid.spacing > 0.005 + 1e-12:
        raise DomainError(
            f"grid spacing {grid.spacing:.4g} too coarse for three chained "
            "first-order operators (need h <= 0.005)"
        )
    states = [excited_state(seed, n, grid) for n in range(dim)]
    h = states[0].h
    out = np.zeros((dim, dim))
    for n in range(dim):
        chained = apply_a_op(seed, states[n])
        chained = apply_oscillator_op(chained)
        chained = apply_a_op(seed, chained, dagger=True)
        for m in range(dim):
            out[m, n] = np.trapezoid(states[m].values * chained.values, dx=h)
    return out
