"""Independent oracles for the dynamics tests.

The Gaussian family rho = N(x0, sigma2), s = b x^2/2 + p0 x + c is closed
under both flows; substituting it into the continuity and (sign-flipped)
Hamilton-Jacobi equations gives ordinary differential equations for the
parameters:

    d(sigma2)/dtheta = 2 b sigma2 / m
    db/dtheta        = -b^2/m + sign * hbar^2 / (4 m sigma2^2)
    dc/dtheta        = -sign * hbar^2 / (4 m sigma2)

with sign = +1 for the Schroedinger flow in t and -1 for the companion
flow in tau.  These ODEs are integrated with a high-order adaptive
stepper at tolerance 1e-12 and never touch the PDE integrators they
check.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp


@dataclass(frozen=True)
class GaussianOdeState:
    """Gaussian-family parameters along a flow."""

    sigma2: float
    b: float
    c: float = 0.0


def _flow_sign(flow: str) -> float:
    if flow == "t":
        return 1.0
    if flow == "tau":
        return -1.0
    raise ValueError(f"flow must be 't' or 'tau', got {flow!r}")


def gaussian_ode_rhs(theta, y, flow: str, hbar: float = 1.0, mass: float = 1.0):
    sigma2, b, _ = y
    sign = _flow_sign(flow)
    return [
        2.0 * b * sigma2 / mass,
        -b * b / mass + sign * hbar**2 / (4.0 * mass * sigma2**2),
        -sign * hbar**2 / (4.0 * mass * sigma2),
    ]


def integrate_gaussian_ode(initial: GaussianOdeState, flow: str, times,
                           hbar: float = 1.0, mass: float = 1.0):
    """Parameter trajectories at ``times`` (tolerance-1e-12 integration)."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    span = (0.0, float(times[-1])) if times[-1] > 0 else (0.0, 0.0)
    if span[1] == 0.0:
        y = np.tile([[initial.sigma2], [initial.b], [initial.c]], (1, len(times)))
        return times, y
    sol = solve_ivp(gaussian_ode_rhs, span, [initial.sigma2, initial.b, initial.c],
                    t_eval=times, args=(flow, hbar, mass),
                    method="DOP853", rtol=1e-12, atol=1e-12)
    if not sol.success:
        raise RuntimeError(f"Gaussian ODE oracle failed: {sol.message}")
    return sol.t, sol.y


def gaussian_observables(sigma2: float, b: float, c: float = 0.0,
                         hbar: float = 1.0, mass: float = 1.0, p0: float = 0.0) -> dict:
    """Closed-form functional values on the Gaussian family."""
    fisher_int = 1.0 / (4.0 * sigma2)
    kin = b * b * sigma2 + p0 * p0
    return {
        "sigma_x2": sigma2,
        "delta_x2": sigma2,
        "fisher": 2.0 * fisher_int,
        "delta_p2_cl": kin,
        "delta_p2_q": kin + hbar**2 * fisher_int,
        "h_cl": kin / (2.0 * mass),
        "h_q": (kin + hbar**2 * fisher_int) / (2.0 * mass),
        "k_q": (kin - hbar**2 * fisher_int) / (2.0 * mass),
        "s_gen": 0.5 * b * sigma2 + c,
    }


def free_packet_sigma_x2(t: float, sigma2_0: float, hbar: float = 1.0, mass: float = 1.0) -> float:
    """Textbook spreading law for a free minimal packet."""
    return sigma2_0 + (hbar * t / (2.0 * mass * np.sqrt(sigma2_0))) ** 2
