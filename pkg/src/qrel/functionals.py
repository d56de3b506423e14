"""Scalar functionals of the field pair and their variational derivatives.

Conventions
-----------
* ``fisher_information`` returns F = 2 * integral |grad sqrt(rho)|^2.
* ``delta_x2`` defaults to the self-consistent convention
  1 / (4 * integral |grad sqrt(rho)|^2), which makes the dilatation
  transformation law an identity and saturates the minimal-Gaussian
  product at hbar^2/4.  The historical factor-2 reading is available as
  ``convention="paper-literal"`` purely for documenting the discrepancy.
* Gradients of the phase field use centered differences; amplitude
  fields (rho, sqrt(rho), psi) use spectral calculus.  Phase fields are
  generally not periodic on the box, and the density weight suppresses
  the wrap cells, so this split keeps every functional accurate for the
  localized test family (including dilated and small-hbar states).

The derivative rules returned by :func:`variational_derivative` are the
closed forms evaluated with the same discrete operators that the
functional evaluations use, so the finite-difference oracle in the
bracket engine reproduces them to its own noise floor.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStateError
from .states import (RHO_FLOOR, HydroState, WaveField, check_nodeless_interior,
                     from_wave, phase_gradient)

CONVENTIONS = ("consistent", "paper-literal")


class FunctionalTag(enum.Enum):
    """Identity of a functional with evaluation and derivative rules."""

    H_CL = "h_cl"
    H_Q = "h_q"
    K_Q = "k_q"
    S_GEN = "s_gen"
    FISHER = "fisher"
    DELTA_X2 = "delta_x2"
    DELTA_P2_CL = "delta_p2_cl"
    DELTA_P2_Q = "delta_p2_q"
    SIGMA_X2 = "sigma_x2"
    P_TRANSLATION = "p_translation"


@dataclass(frozen=True)
class UncertaintyPair:
    """The (delta_x2, delta_p2) pair transformed by the relativity group."""

    dx2: float
    dp2: float

    def __post_init__(self):
        if not self.dx2 > 0:
            raise DegenerateStateError(f"dx2 must be positive, got {self.dx2!r}")

    @property
    def product(self) -> float:
        return self.dx2 * self.dp2


def _check_convention(convention: str):
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")


# ---------------------------------------------------------------------------
# building blocks


def fisher_integral(state: HydroState) -> float:
    """integral |grad sqrt(rho)|^2 (the quantum term of every functional)."""
    grads = state.grid.gradient(state.sqrt_rho)
    return state.grid.quadrature(sum(g**2 for g in grads))


def sqrt_density_curvature(state: HydroState) -> np.ndarray:
    """Field laplacian(sqrt rho)/sqrt(rho), regularized below RHO_FLOOR.

    Raises a degenerate-state error for densities with interior nodes,
    where the ratio is meaningless on the support itself.
    """
    check_nodeless_interior(state.rho)
    u = state.sqrt_rho
    return state.grid.laplacian(u) / np.maximum(u, np.sqrt(RHO_FLOOR))


def kinetic_integral(state: HydroState) -> float:
    """integral rho |grad s|^2 (raw second moment of the momentum field)."""
    grads = phase_gradient(state)
    return state.grid.quadrature(state.rho * sum(g**2 for g in grads))


# ---------------------------------------------------------------------------
# scalar functionals on HydroState


def fisher_information(state: HydroState) -> float:
    """Fisher information F = 2 * integral |grad sqrt(rho)|^2."""
    return 2.0 * fisher_integral(state)


def delta_x2(state: HydroState, convention: str = "consistent") -> float:
    """Fisher dispersion of the position distribution.

    Raises a degenerate-state error when the Fisher integral vanishes
    (e.g. for the uniform density, whose dispersion is undefined on the
    periodic box).
    """
    _check_convention(convention)
    integral = fisher_integral(state)
    if integral <= 1e-12:
        raise DegenerateStateError("Fisher integral vanishes; delta_x2 undefined for this state")
    factor = 4.0 if convention == "consistent" else 2.0
    return 1.0 / (factor * integral)


def sigma_x2(state: HydroState) -> float:
    """Position variance quadrature(rho |x - mean|^2), summed over axes."""
    total = 0.0
    for xc in state.grid.coords:
        mean = state.grid.quadrature(state.rho * xc)
        total += state.grid.quadrature(state.rho * (xc - mean) ** 2)
    return total


def delta_p2_cl(state: HydroState) -> float:
    """Classical momentum dispersion quadrature(rho |grad s|^2)."""
    return kinetic_integral(state)


def delta_p2_q(state: HydroState) -> float:
    """Momentum dispersion with the Fisher term restoring the group law."""
    return kinetic_integral(state) + state.hbar**2 * fisher_integral(state)


def h_cl(state: HydroState) -> float:
    """Classical Hamiltonian functional, kinetic energy of the ensemble."""
    return kinetic_integral(state) / (2.0 * state.mass)


def h_q(state: HydroState) -> float:
    """Quantum Hamiltonian: classical part plus the Fisher term."""
    return (kinetic_integral(state) + state.hbar**2 * fisher_integral(state)) / (2.0 * state.mass)


def k_q(state: HydroState) -> float:
    """Companion generator: classical part minus the Fisher term."""
    return (kinetic_integral(state) - state.hbar**2 * fisher_integral(state)) / (2.0 * state.mass)


def s_gen(state: HydroState) -> float:
    """Dilatation generator quadrature(rho * s)."""
    return state.grid.quadrature(state.rho * state.s)


def p_translation(state: HydroState) -> float:
    """Translation generator quadrature(rho * grad s), first axis."""
    return state.grid.quadrature(state.rho * phase_gradient(state)[0])


def uncertainty_pair(state: HydroState, convention: str = "consistent") -> UncertaintyPair:
    return UncertaintyPair(dx2=delta_x2(state, convention), dp2=delta_p2_q(state))


_EVALUATORS = {
    FunctionalTag.H_CL: h_cl,
    FunctionalTag.H_Q: h_q,
    FunctionalTag.K_Q: k_q,
    FunctionalTag.S_GEN: s_gen,
    FunctionalTag.FISHER: fisher_information,
    FunctionalTag.SIGMA_X2: sigma_x2,
    FunctionalTag.DELTA_P2_CL: delta_p2_cl,
    FunctionalTag.DELTA_P2_Q: delta_p2_q,
    FunctionalTag.P_TRANSLATION: p_translation,
}


def evaluate(tag: FunctionalTag, state: HydroState, convention: str = "consistent") -> float:
    """Evaluate the tagged functional on ``state``."""
    if tag is FunctionalTag.DELTA_X2:
        return delta_x2(state, convention)
    return _EVALUATORS[tag](state)


# ---------------------------------------------------------------------------
# variational derivatives (closed forms, discretely consistent)


def _ds_divergence(state: HydroState) -> np.ndarray:
    # div(rho * grad s) with the same centered-difference operators the
    # evaluations use, so summation by parts holds exactly.
    grads = phase_gradient(state)
    return state.grid.fd_divergence([state.rho * g for g in grads])


def _grad_s_squared(state: HydroState) -> np.ndarray:
    grads = phase_gradient(state)
    return sum(g**2 for g in grads)


def variational_derivative(tag: FunctionalTag, state: HydroState, component: str,
                           convention: str = "consistent") -> np.ndarray:
    """Closed-form functional derivative field delta(tag)/delta(component).

    ``component`` is ``"rho"`` or ``"s"``.  Derivatives with respect to rho
    are the unconstrained ones; restricting to normalized densities leaves
    them defined only up to an additive constant, which comparisons must
    mod out (the bracket engine's oracle does).
    """
    if component not in ("rho", "s"):
        raise ValueError(f"component must be 'rho' or 's', got {component!r}")
    m, hb = state.mass, state.hbar
    zero = np.zeros(state.grid.shape)

    if tag is FunctionalTag.S_GEN:
        return state.s.copy() if component == "rho" else state.rho.copy()

    if tag is FunctionalTag.FISHER:
        return -2.0 * sqrt_density_curvature(state) if component == "rho" else zero

    if tag is FunctionalTag.DELTA_X2:
        if component == "s":
            return zero
        _check_convention(convention)
        integral = fisher_integral(state)
        if integral <= 1e-12:
            raise DegenerateStateError("Fisher integral vanishes; delta_x2 derivative undefined")
        factor = 4.0 if convention == "consistent" else 2.0
        return sqrt_density_curvature(state) / (factor * integral**2)

    if tag is FunctionalTag.SIGMA_X2:
        if component == "s":
            return zero
        out = np.zeros(state.grid.shape)
        for xc in state.grid.coords:
            mean = state.grid.quadrature(state.rho * xc)
            out += xc**2 - 2.0 * mean * xc
        return out

    if tag is FunctionalTag.P_TRANSLATION:
        if component == "rho":
            return phase_gradient(state)[0]
        return -state.grid.fd_gradient(state.rho)[0]

    if tag is FunctionalTag.DELTA_P2_CL:
        if component == "rho":
            return _grad_s_squared(state)
        return -2.0 * _ds_divergence(state)

    if tag is FunctionalTag.DELTA_P2_Q:
        if component == "rho":
            return _grad_s_squared(state) - hb**2 * sqrt_density_curvature(state)
        return -2.0 * _ds_divergence(state)

    if tag in (FunctionalTag.H_CL, FunctionalTag.H_Q, FunctionalTag.K_Q):
        if component == "s":
            return -_ds_divergence(state) / m
        base = _grad_s_squared(state) / (2.0 * m)
        if tag is FunctionalTag.H_CL:
            return base
        sign = -1.0 if tag is FunctionalTag.H_Q else 1.0
        return base + sign * (hb**2 / (2.0 * m)) * sqrt_density_curvature(state)

    raise ValueError(f"no derivative rule for {tag!r}")


# ---------------------------------------------------------------------------
# wave-field routes
#
# Trajectory observables are computed directly from psi: the spectral
# momentum integral hbar^2 |grad psi|^2 is conserved exactly by the free
# propagator, which keeps the conservation columns of trajectory records
# at the rounding floor.


def wave_fisher_integral(w: WaveField) -> float:
    u = np.abs(w.psi)
    grads = w.grid.gradient(u)
    return w.grid.quadrature(sum(g**2 for g in grads))


def wave_delta_p2_q(w: WaveField) -> float:
    grads = w.grid.gradient(w.psi)
    return w.hbar**2 * w.grid.quadrature(sum(np.abs(g) ** 2 for g in grads))


def wave_h_q(w: WaveField) -> float:
    return wave_delta_p2_q(w) / (2.0 * w.mass)


def wave_k_q(w: WaveField) -> float:
    return wave_h_q(w) - w.hbar**2 * wave_fisher_integral(w) / w.mass


def wave_h_cl(w: WaveField) -> float:
    return wave_h_q(w) - w.hbar**2 * wave_fisher_integral(w) / (2.0 * w.mass)


def wave_delta_x2(w: WaveField, convention: str = "consistent") -> float:
    _check_convention(convention)
    integral = wave_fisher_integral(w)
    if integral <= 1e-12:
        raise DegenerateStateError("Fisher integral vanishes; delta_x2 undefined for this field")
    return 1.0 / ((4.0 if convention == "consistent" else 2.0) * integral)


def wave_sigma_x2(w: WaveField) -> float:
    rho = w.rho
    total = 0.0
    for xc in w.grid.coords:
        mean = w.grid.quadrature(rho * xc)
        total += w.grid.quadrature(rho * (xc - mean) ** 2)
    return total


def wave_s_gen(w: WaveField) -> float:
    state = from_wave(w)
    return w.grid.quadrature(state.rho * state.s)


def wave_p_translation(w: WaveField) -> float:
    g = w.grid.gradient(w.psi)[0]
    return w.hbar * w.grid.quadrature(np.imag(np.conj(w.psi) * g))
