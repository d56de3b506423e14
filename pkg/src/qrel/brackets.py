"""Functional Poisson bracket and its finite-difference oracle.

The bracket of two tagged functionals is

    {A, B} = integral [ dA/drho * dB/ds - dB/drho * dA/ds ]

evaluated with the closed-form derivative fields.  An independent oracle
recovers any derivative field by bumping single grid samples and
re-evaluating the functional itself, never touching the closed forms.

Oracle conditioning
-------------------
Bumps in the phase component act on the samples directly; every tagged
functional is at most quadratic in s, so centered quotients are exact up
to rounding.  Bumps in the density act on the square-root samples with
the exact chain rule d/drho = (d/du) / (2u), u = sqrt(rho): a direct
density bump cannot stay positive and resolve the derivative at
rho ~ 1e-10 in double precision, while the square-root bump keeps the
quadratic functionals exact for any bump size below u.  The direct bump
is retained as ``bump="direct"`` for moderate densities.

Derivatives with respect to rho are unconstrained; restricted to
normalized densities they carry an additive-constant gauge, so field
comparisons subtract the density-weighted mean of both sides.  Bracket
values always use the raw fields (subtracting constants is not harmless
when one argument is the dilatation generator, whose ds-derivative is
rho itself).
"""

from dataclasses import dataclass

import numpy as np

from .errors import OraclePrecisionError
from .functionals import FunctionalTag, delta_p2_q, delta_x2, evaluate, variational_derivative
from .group import dilate
from .states import HydroState

#: Comparison region default: below this density the oracle quotient is
#: noise-dominated and the derivative fields carry no weight.
ORACLE_RHO_CUTOFF = 1e-12


@dataclass(frozen=True)
class BracketResult:
    """Bracket value with the method that produced it and an error estimate."""

    value: float
    method: str
    estimated_error: float


@dataclass(frozen=True)
class GeneratorCheck:
    """Both sides of the infinitesimal dilatation identity and their residual."""

    bracket_closed_form: float
    rate_finite_difference: float
    residual: float
    dalpha: float


def bracket_of_fields(grid, da_rho, da_s, db_rho, db_s) -> float:
    """integral [da_rho * db_s - db_rho * da_s]; antisymmetric by construction."""
    return grid.quadrature(da_rho * db_s - db_rho * da_s)


def subtract_rho_mean(field: np.ndarray, state: HydroState, where: np.ndarray = None) -> np.ndarray:
    """Remove the additive-constant gauge of a d/drho field.

    With ``where`` the density weight is restricted to the comparison
    region, so a masked oracle field and an unmasked closed form receive
    the same gauge constant.
    """
    if where is None:
        return field - state.grid.quadrature(state.rho * field)
    weight = state.rho * where
    mean = state.grid.quadrature(weight * field) / state.grid.quadrature(weight)
    return field - mean


def poisson_bracket(a: FunctionalTag, b: FunctionalTag, state: HydroState,
                    method: str = "closed-form", convention: str = "consistent",
                    epsilon: float = 1e-5) -> BracketResult:
    """Evaluate {a, b} on ``state``.

    ``method="closed-form"`` uses the derivative rules; the error estimate
    is a rounding-level bound from the integrand magnitude.
    ``method="finite-difference-oracle"`` rebuilds all four derivative
    fields with the bump oracle; its estimate comes from bump refinement.
    """
    if method == "closed-form":
        da_rho = variational_derivative(a, state, "rho", convention)
        da_s = variational_derivative(a, state, "s", convention)
        db_rho = variational_derivative(b, state, "rho", convention)
        db_s = variational_derivative(b, state, "s", convention)
        value = bracket_of_fields(state.grid, da_rho, da_s, db_rho, db_s)
        scale = state.grid.quadrature(np.abs(da_rho * db_s) + np.abs(db_rho * da_s))
        return BracketResult(value=value, method=method, estimated_error=1e-14 * max(scale, 1.0))
    if method == "finite-difference-oracle":
        fields = {}
        err = 0.0
        for tag, comp in ((a, "rho"), (a, "s"), (b, "rho"), (b, "s")):
            field, est = fd_functional_derivative(tag, state, comp, epsilon=epsilon,
                                                  convention=convention, return_error=True)
            fields[(tag, comp)] = field
            err = max(err, est)
        value = bracket_of_fields(state.grid, fields[(a, "rho")], fields[(a, "s")],
                                  fields[(b, "rho")], fields[(b, "s")])
        return BracketResult(value=value, method=method, estimated_error=err)
    raise ValueError(f"unknown bracket method {method!r}")


# ---------------------------------------------------------------------------
# finite-difference oracle


# The sweeps evaluate the functional in extended precision: the quotient
# resolves changes of order eps * cell_volume * d/drho in a value of order
# one, and double-precision rounding alone would cap the accuracy near the
# low-density edge of the comparison region.

def _fd_sweep_s(func, state, eps, mask):
    grid = state.grid
    cell = grid.cell_volume
    out = np.zeros(grid.shape)
    rho = state.rho.astype(np.longdouble)
    s_flat = state.s.astype(np.longdouble).ravel()
    eps = np.longdouble(eps)
    for idx in np.flatnonzero(mask.ravel()):
        bumped = s_flat.copy()
        bumped[idx] += eps
        plus = func(HydroState(grid, rho, bumped.reshape(grid.shape), state.hbar, state.mass))
        bumped[idx] -= 2.0 * eps
        minus = func(HydroState(grid, rho, bumped.reshape(grid.shape), state.hbar, state.mass))
        out.ravel()[idx] = (plus - minus) / (2.0 * eps * cell)
    return out


def _fd_sweep_rho_sqrt(func, state, eps, mask):
    grid = state.grid
    cell = grid.cell_volume
    out = np.zeros(grid.shape)
    s_field = state.s.astype(np.longdouble)
    u_flat = state.sqrt_rho.astype(np.longdouble).ravel()
    for idx in np.flatnonzero(mask.ravel()):
        # bump below the local amplitude so sqrt(rho) keeps its sign
        e = min(np.longdouble(eps), 0.5 * u_flat[idx])
        if e <= 0.0:
            continue
        bumped = u_flat.copy()
        bumped[idx] += e
        plus = func(HydroState(grid, (bumped**2).reshape(grid.shape), s_field, state.hbar, state.mass))
        bumped[idx] -= 2.0 * e
        minus = func(HydroState(grid, (bumped**2).reshape(grid.shape), s_field, state.hbar, state.mass))
        out.ravel()[idx] = (plus - minus) / (2.0 * e * cell) / (2.0 * u_flat[idx])
    return out


def _fd_sweep_rho_direct(func, state, eps, mask):
    grid = state.grid
    cell = grid.cell_volume
    out = np.zeros(grid.shape)
    s_field = state.s.astype(np.longdouble)
    rho_flat = state.rho.astype(np.longdouble).ravel()
    low = rho_flat[mask.ravel()]
    if low.size and float(low.min()) <= 4.0 * eps:
        raise OraclePrecisionError(
            f"direct density bump epsilon={eps:g} would exhaust rho (min {low.min():.3e} on the "
            "comparison region); use a smaller epsilon or the sqrt bump"
        )
    eps = np.longdouble(eps)
    for idx in np.flatnonzero(mask.ravel()):
        bumped = rho_flat.copy()
        bumped[idx] += eps
        plus = func(HydroState(grid, bumped.reshape(grid.shape), s_field, state.hbar, state.mass))
        bumped[idx] -= 2.0 * eps
        minus = func(HydroState(grid, bumped.reshape(grid.shape), s_field, state.hbar, state.mass))
        out.ravel()[idx] = (plus - minus) / (2.0 * eps * cell)
    return out


def fd_functional_derivative(tag, state: HydroState, component: str = "rho",
                             epsilon: float = 1e-5, bump: str = "sqrt",
                             where: np.ndarray = None, convention: str = "consistent",
                             return_error: bool = False, stabilize: bool = False):
    """Oracle derivative field of ``tag`` (or any callable of a state).

    Centered quotients of single-sample bumps normalized by the cell
    volume.  Points outside ``where`` (default: rho > 1e-12) are returned
    as zero.  With ``stabilize=True`` the bump is refined until successive
    estimates agree, per the auto-tuning policy; the tagged functionals are
    at most quadratic in the bumped variables, so the first refinement is
    normally already at the noise floor.
    """
    func = tag if callable(tag) else (lambda st: evaluate(tag, st, convention))
    if where is None:
        where = state.rho > ORACLE_RHO_CUTOFF
    if component == "s":
        sweep = lambda eps: _fd_sweep_s(func, state, eps, where)
    elif component == "rho" and bump == "sqrt":
        sweep = lambda eps: _fd_sweep_rho_sqrt(func, state, eps, where)
    elif component == "rho" and bump == "direct":
        sweep = lambda eps: _fd_sweep_rho_direct(func, state, eps, where)
    else:
        raise ValueError(f"component must be 'rho' or 's' (bump 'sqrt' or 'direct'), got {component!r}/{bump!r}")

    field = sweep(epsilon)
    refined = sweep(0.5 * epsilon)
    scale = max(float(np.abs(refined).max()), 1e-30)
    est = float(np.abs(refined - field).max())
    iterations = 0
    while stabilize and est > 1e-9 * scale and iterations < 4:
        epsilon *= 0.5
        field, refined = refined, sweep(0.5 * epsilon)
        est = float(np.abs(refined - field).max())
        iterations += 1
    if return_error:
        return refined, est
    return refined


# ---------------------------------------------------------------------------
# derived checks


def generator_check(state: HydroState, dalpha: float = 1e-4,
                    convention: str = "consistent") -> GeneratorCheck:
    """Infinitesimal dilatation of the momentum dispersion vs its bracket.

    Compares the centered rate of delta_p2_q under dilatation with the
    closed-form bracket -delta_p2_q + hbar^2 / (2 delta_x2); the centered
    scheme converges at second order in ``dalpha``.
    """
    dp2 = delta_p2_q(state)
    dx2 = delta_x2(state, convention)
    closed = -dp2 + 0.5 * state.hbar**2 / dx2
    rate = (delta_p2_q(dilate(state, dalpha)) - delta_p2_q(dilate(state, -dalpha))) / (2.0 * dalpha)
    return GeneratorCheck(bracket_closed_form=closed, rate_finite_difference=rate,
                          residual=abs(rate - closed), dalpha=dalpha)


def jacobi_defect(state: HydroState, epsilon: float = 1e-6) -> tuple:
    """Spot check of the Jacobi identity on (S, H_q, K_q).

    Given the verified pair identities {S, H_q} = K_q and {S, K_q} = H_q,
    the cyclic sum collapses to {S, {H_q, K_q}}, which must vanish because
    {H_q, K_q} is invariant under the dilatation flow.  The inner bracket
    is a composite scalar, so its derivative fields come from the oracle.

    Returns (defect, inner_bracket_value).
    """
    inner = lambda st: poisson_bracket(FunctionalTag.H_Q, FunctionalTag.K_Q, st).value
    d_rho = fd_functional_derivative(inner, state, "rho", epsilon=epsilon)
    d_s = fd_functional_derivative(inner, state, "s", epsilon=epsilon)
    ds_rho = variational_derivative(FunctionalTag.S_GEN, state, "rho")
    ds_s = variational_derivative(FunctionalTag.S_GEN, state, "s")
    defect = bracket_of_fields(state.grid, ds_rho, ds_s, d_rho, d_s)
    return defect, inner(state)
