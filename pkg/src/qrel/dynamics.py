"""Dual-time dynamics: the linear flow in t and its nonlinear companion in tau.

The t-flow is free Schroedinger evolution, applied exactly in Fourier
space; every t-trajectory record is produced by a single propagator
application from the initial field, so conservation columns sit at the
rounding floor.

The tau-flow integrates

    i hbar d(psi)/dtau = -(hbar^2/2m) lap(psi) + (hbar^2/m) psi lap|psi|/|psi|

with Strang splitting: half kinetic step in Fourier space, full pointwise
phase rotation by the real potential W = (hbar^2/m) lap|psi|/|psi|
(recomputed each step, floored and clamped), half kinetic step.  W is
real, so the splitting conserves the norm by construction and is second
order in the step.

Stability regularization
------------------------
Linearizing the tau-equation about any smooth background gives frequencies
omega = +-i hbar k^2 / 2m: off-manifold perturbations at relative
wavenumber k grow like exp(hbar k^2 tau / 2m).  On a spectral grid this
amplifies roundoff at the highest modes catastrophically, even though the
smooth solution itself is benign.  The integrator therefore projects each
step onto the band |k - kbar| <= k_c actually occupied by the solution
(kbar and the momentum dispersion are measured spectrally;
k_c^2 = BAND_WIDTH_FACTOR * dk^2 keeps truncation at the 1e-14 level),
and it accrues a noise budget B = sum (hbar k_c^2 / 2m) dtau, the log of
the worst-case amplification inside the band.  Runs stop at
NOISE_BUDGET_MAX, calibrated so trajectory diagnostics stay well below
the 1e-5 acceptance tolerances; contracting packets also stop at the
resolution guard sigma_x2 > RESOLUTION_CELLS * spacing^2.  Both guards
mark the trajectory rather than silently degrading it.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ResolutionGuardError
from .functionals import (
    wave_delta_p2_q,
    wave_delta_x2,
    wave_h_q,
    wave_k_q,
    wave_s_gen,
    wave_sigma_x2,
)
from .states import (RHO_FLOOR, HydroState, WaveField, check_nodeless_interior,
                     phase_gradient, to_wave)

#: k_c^2 in units of the measured momentum dispersion; exp(-128/4) ~ 1e-14
#: of the spectral amplitude is discarded at the band edge.
BAND_WIDTH_FACTOR = 128.0

#: Maximum accrued noise budget before the stability guard trips.
#: Calibrated against the Gaussian battery: trajectory diagnostics stay
#: below ~5e-8 at B = 20, and first cross 5e-6 near B ~ 25.
NOISE_BUDGET_MAX = 20.0

#: Clamp for the self-consistent potential, with a diagnostic counter.
W_MAX = 1e6

#: Resolution guard: sigma_x2 must stay above this many squared cells.
RESOLUTION_CELLS = 25.0


@dataclass(frozen=True)
class TrajectoryRecord:
    """One observed point of a flow, as written to trajectory tables."""

    step: int
    time: float
    h_q: float
    k_q: float
    s_gen: float
    delta_x2: float
    delta_p2_q: float
    norm: float
    continuity_residual: float


@dataclass
class Trajectory:
    """Records plus guard/clamp diagnostics for one run."""

    flow: str
    step: float
    records: list
    requested_steps: int
    guard_tripped: bool = False
    guard_reason: str = ""
    clamp_events: int = 0

    @property
    def last_valid_step(self) -> int:
        return self.records[-1].step if self.records else -1

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records])


def _kinetic_phase(grid, hbar, mass, dt):
    return np.exp(-0.5j * hbar * grid.k_squared * dt / mass)


def evolve_t(w: WaveField, dt: float) -> WaveField:
    """Exact free propagator: each mode times exp(-i hbar k^2 dt / 2m)."""
    if dt == 0.0:
        return w
    psi = np.fft.ifftn(_kinetic_phase(w.grid, w.hbar, w.mass, dt) * np.fft.fftn(w.psi))
    return WaveField(grid=w.grid, psi=psi, hbar=w.hbar, mass=w.mass)


def _spectral_band(grid, psi_hat):
    weights = np.abs(psi_hat) ** 2
    total = weights.sum()
    kbar = []
    dk2 = 0.0
    for ax in range(grid.dim):
        shape = [1] * grid.dim
        shape[ax] = grid.n
        k_ax = grid.wavenumbers.reshape(shape)
        mean = (k_ax * weights).sum() / total
        kbar.append(mean)
        dk2 += (((k_ax - mean) ** 2) * weights).sum() / total
    return kbar, dk2


class _TauMarcher:
    """Stateful stepper for the companion flow with guards and diagnostics."""

    def __init__(self, w: WaveField, dtau: float):
        self.grid = w.grid
        self.hbar = w.hbar
        self.mass = w.mass
        self.dtau = dtau
        self.psi = np.array(w.psi, dtype=complex)
        self.noise_budget = 0.0
        self.clamp_events = 0
        self.steps_done = 0
        self._guard_floor = RESOLUTION_CELLS * self.grid.spacing**2
        self._kc2_floor = 9.0 * (2.0 * math.pi / self.grid.length) ** 2

    def current(self) -> WaveField:
        return WaveField(grid=self.grid, psi=self.psi, hbar=self.hbar, mass=self.mass)

    def _check_guards(self):
        w = self.current()
        if wave_sigma_x2(w) <= self._guard_floor:
            raise ResolutionGuardError(
                f"resolution guard: sigma_x2 fell to {wave_sigma_x2(w):.3e} <= "
                f"{self._guard_floor:.3e} after {self.steps_done} steps",
                steps_completed=self.steps_done, wavefield=w)
        if self.noise_budget > NOISE_BUDGET_MAX:
            raise ResolutionGuardError(
                f"stability guard: noise budget {self.noise_budget:.1f} exceeded "
                f"{NOISE_BUDGET_MAX:g} after {self.steps_done} steps",
                steps_completed=self.steps_done, wavefield=w)
        check_nodeless_interior(w.rho)

    def step(self, direction: float = 1.0):
        """One Strang step of size direction*dtau, guards checked first."""
        self._check_guards()
        dt = direction * self.dtau
        psi_hat = np.fft.fftn(self.psi)
        kbar, dk2 = _spectral_band(self.grid, psi_hat)
        kc2 = max(BAND_WIDTH_FACTOR * dk2, self._kc2_floor)
        kc2 = min(kc2, (0.95 * math.pi / self.grid.spacing) ** 2)
        krel2 = np.zeros(self.grid.shape)
        for ax in range(self.grid.dim):
            shape = [1] * self.grid.dim
            shape[ax] = self.grid.n
            krel2 = krel2 + (self.grid.wavenumbers.reshape(shape) - kbar[ax]) ** 2
        mask = krel2 <= kc2
        half_kin = np.exp(-0.25j * self.hbar * self.grid.k_squared * dt / self.mass) * mask

        psi = np.fft.ifftn(psi_hat * half_kin)
        u = np.abs(psi)
        W = (self.hbar**2 / self.mass) * self.grid.laplacian(u) / np.maximum(u, math.sqrt(RHO_FLOOR))
        clipped = np.abs(W) > W_MAX
        if clipped.any():
            self.clamp_events += int(clipped.sum())
            W = np.clip(W, -W_MAX, W_MAX)
        psi = psi * np.exp(-1j * W * dt / self.hbar)
        self.psi = np.fft.ifftn(np.fft.fftn(psi) * half_kin)

        self.noise_budget += 0.5 * self.hbar * kc2 * self.dtau / self.mass
        self.steps_done += 1


def evolve_tau(w: WaveField, dtau: float, steps: int = 1) -> WaveField:
    """Integrate the companion flow for ``steps`` Strang steps of ``dtau``.

    Raises :class:`ResolutionGuardError` when a guard trips; the exception
    carries the completed step count and the last valid field.
    """
    if dtau == 0.0 or steps == 0:
        return w
    marcher = _TauMarcher(w, dtau)
    for _ in range(steps):
        marcher.step()
    return marcher.current()


# ---------------------------------------------------------------------------
# hydrodynamic form


def hydro_rhs(state: HydroState, flow: str) -> tuple:
    """Continuity and (quantum) Hamilton-Jacobi right-hand sides.

    Both flows share d(rho) = -div(rho grad s / m); the phase equation is
    d(s) = -|grad s|^2/2m + sign (hbar^2/2m) lap(sqrt rho)/sqrt(rho) with
    sign +1 for the t-flow and -1 for the tau-flow (the companion flow
    differs only by the sign of the quantum potential).
    """
    if flow not in ("t", "tau"):
        raise ValueError(f"flow must be 't' or 'tau', got {flow!r}")
    grads = phase_gradient(state)
    flux = [state.rho * g / state.mass for g in grads]
    drho = -sum(state.grid.gradient(f)[ax] for ax, f in enumerate(flux))
    u = state.sqrt_rho
    curvature = state.grid.laplacian(u) / np.maximum(u, math.sqrt(RHO_FLOOR))
    sign = 1.0 if flow == "t" else -1.0
    ds = -sum(g**2 for g in grads) / (2.0 * state.mass) \
        + sign * (state.hbar**2 / (2.0 * state.mass)) * curvature
    return drho, ds


# ---------------------------------------------------------------------------
# trajectories


def _flux_divergence(w: WaveField) -> np.ndarray:
    grads = w.grid.gradient(w.psi)
    flux = [w.hbar * np.imag(np.conj(w.psi) * g) / w.mass for g in grads]
    return sum(w.grid.gradient(f)[ax] for ax, f in enumerate(flux))


def _stencil_residual(rhos, j, w_center, dstep):
    """4th-order centered d(rho)/dtheta plus div(flux), max-normalized."""
    drho = (-rhos[j + 2] + 8.0 * rhos[j + 1] - 8.0 * rhos[j - 1] + rhos[j - 2]) / (12.0 * dstep)
    resid = drho + _flux_divergence(w_center)
    return float(np.abs(resid).max() / rhos[j].max())


def _tau_states(w0: WaveField, dtau: float, steps: int):
    """Fields at indices -2..K (+2 helper steps each side when possible)."""
    back = _TauMarcher(w0, dtau)
    before = []
    for _ in range(2):
        back.step(direction=-1.0)
        before.append(back.current())
    fields = [before[1], before[0], w0]
    marcher = _TauMarcher(w0, dtau)
    tripped = None
    for j in range(steps + 2):
        try:
            marcher.step()
        except ResolutionGuardError as err:
            tripped = (j, str(err))
            break
        fields.append(marcher.current())
    return fields, tripped, marcher.clamp_events


def run_trajectory(w0: WaveField, flow: str, step: float, steps: int,
                   convention: str = "consistent") -> Trajectory:
    """Integrate a flow and return per-step records.

    The runner integrates two helper steps beyond each end of the
    reporting window so every emitted record carries a 4th-order centered
    continuity residual.  If a tau-flow guard trips, the window shrinks to
    the certified part and the trajectory is marked.
    """
    if flow not in ("t", "tau"):
        raise ValueError(f"flow must be 't' or 'tau', got {flow!r}")
    if step <= 0:
        raise ValueError(f"step must be positive, got {step!r}")

    clamp_events = 0
    guard_reason = ""
    if flow == "t":
        fields = [evolve_t(w0, step * j) for j in range(-2, steps + 3)]
        last_record = steps
    else:
        fields, tripped, clamp_events = _tau_states(w0, step, steps)
        if tripped is not None:
            guard_reason = tripped[1]
            last_record = max(0, (len(fields) - 3) - 2)
        else:
            last_record = steps
        if len(fields) < 5:
            raise ResolutionGuardError(
                f"guard tripped before any record could be certified: {guard_reason}",
                steps_completed=len(fields) - 3, wavefield=fields[-1])

    rhos = [f.rho for f in fields]
    records = []
    for j in range(0, last_record + 1):
        w = fields[j + 2]
        records.append(TrajectoryRecord(
            step=j,
            time=j * step,
            h_q=wave_h_q(w),
            k_q=wave_k_q(w),
            s_gen=wave_s_gen(w),
            delta_x2=wave_delta_x2(w, convention),
            delta_p2_q=wave_delta_p2_q(w),
            norm=w.norm,
            continuity_residual=_stencil_residual(rhos, j + 2, w, step),
        ))
    return Trajectory(flow=flow, step=step, records=records, requested_steps=steps,
                      guard_tripped=bool(guard_reason), guard_reason=guard_reason,
                      clamp_events=clamp_events)


def continuity_residual(w: WaveField, flow: str, dstep: float = 1e-3) -> float:
    """Instantaneous continuity residual of a field under a flow.

    Evolves two steps each way and applies the trajectory stencil; for
    discrete solutions of either flow this measures the integrator's
    consistency with d(rho)/dtheta + div(rho grad s / m) = 0.
    """
    if flow == "t":
        fields = [evolve_t(w, dstep * j) for j in (-2, -1, 0, 1, 2)]
    else:
        fields, tripped, _ = _tau_states(w, dstep, 0)
        if tripped is not None:
            raise ResolutionGuardError(f"guard tripped while probing continuity: {tripped[1]}",
                                       steps_completed=0, wavefield=w)
    rhos = [f.rho for f in fields]
    return _stencil_residual(rhos, 2, fields[2], dstep)


def measured_rates(values, step: float) -> np.ndarray:
    """4th-order centered d/dtheta of a record column (interior points)."""
    v = np.asarray(values, dtype=float)
    return (-v[4:] + 8.0 * v[3:-1] - 8.0 * v[1:-3] + v[:-4]) / (12.0 * step)


# ---------------------------------------------------------------------------
# derived probes


def _as_wave(obj) -> WaveField:
    return obj if isinstance(obj, WaveField) else to_wave(obj)


def _flow_neighbors(w: WaveField, flow: str, dstep: float):
    if flow == "t":
        return evolve_t(w, -dstep), evolve_t(w, dstep)
    back = _TauMarcher(w, dstep)
    back.step(direction=-1.0)
    fwd = _TauMarcher(w, dstep)
    fwd.step()
    return back.current(), fwd.current()


def uncertainty_rates(state, flow: str, dstep: float = 1e-4) -> tuple:
    """Centered rates of (delta_x2, delta_p2_q) along a flow.

    One Richardson refinement of the centered difference (steps dstep and
    dstep/2) absorbs the leading truncation term.
    """
    w = _as_wave(state)

    def centered(d):
        minus, plus = _flow_neighbors(w, flow, d)
        ddx2 = (wave_delta_x2(plus) - wave_delta_x2(minus)) / (2.0 * d)
        ddp2 = (wave_delta_p2_q(plus) - wave_delta_p2_q(minus)) / (2.0 * d)
        return np.array([ddx2, ddp2])

    coarse = centered(dstep)
    fine = centered(0.5 * dstep)
    refined = (4.0 * fine - coarse) / 3.0
    return float(refined[0]), float(refined[1])


def cross_flow_defect(state, dstep: float = 2e-4) -> tuple:
    """d(k_q)/dt along the t-flow plus d(h_q)/dtau along the tau-flow.

    The holomorphy of the generator pair in the combined time plane makes
    the sum vanish; returns (dk_dt, dh_dtau, defect).
    """
    w = _as_wave(state)
    tm, tp = _flow_neighbors(w, "t", dstep)
    dk_dt = (wave_k_q(tp) - wave_k_q(tm)) / (2.0 * dstep)
    um, up = _flow_neighbors(w, "tau", dstep)
    dh_dtau = (wave_h_q(up) - wave_h_q(um)) / (2.0 * dstep)
    return dk_dt, dh_dtau, dk_dt + dh_dtau


def inner_product(w1: WaveField, w2: WaveField) -> complex:
    """quadrature(conj(psi1) psi2): the nonunitarity probe of the tau-flow."""
    return w1.grid.quadrature(np.conj(w1.psi) * w2.psi)
