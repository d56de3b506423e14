"""Field states: the canonical density/phase pair and the wave function.

A :class:`HydroState` carries the density ``rho`` and phase ``s`` samples
together with the constants hbar and mass; a :class:`WaveField` carries
``psi = sqrt(rho) * exp(i s / hbar)``.  Conversions preserve normalization
to machine precision.  Phase reconstruction from a wave field unwraps the
argument outward from the box center, since the phase of a localized
packet need not be periodic while ``psi`` itself decays.
"""

from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np

from .errors import ConfigurationError, DegenerateStateError
from .grid import Grid

#: Density regularizer used in every division by rho or |psi|^2.  Small
#: enough to perturb integrals far below test tolerances, large enough to
#: avoid NaN in negligible-density regions.
RHO_FLOOR = 1e-30

#: Localized states must decay below this amplitude at the box boundary.
TAIL_TOLERANCE = 1e-12


def _read_only(a: np.ndarray, kind: str) -> np.ndarray:
    # float64 by default; longdouble inputs keep their precision so the
    # bracket oracle can evaluate functionals above double rounding
    a = np.asarray(a)
    if kind == "real":
        dtype = np.longdouble if a.dtype == np.longdouble else np.float64
    else:
        dtype = np.clongdouble if a.dtype in (np.clongdouble, np.longdouble) else np.complex128
    out = np.array(a, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class HydroState:
    """Canonical field pair (rho, s) with units.

    Invariants: rho >= 0 everywhere and quadrature(rho) = 1 (constructors
    normalize to ~1e-15; construction rejects fields off by more than
    1e-4).  Instances are immutable and safe to share across threads.
    """

    grid: Grid
    rho: np.ndarray
    s: np.ndarray
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "rho", _read_only(self.grid.bind(self.rho), "real"))
        object.__setattr__(self, "s", _read_only(self.grid.bind(self.s), "real"))
        if not self.hbar > 0:
            raise ConfigurationError(f"hbar must be positive, got {self.hbar!r}")
        if not self.mass > 0:
            raise ConfigurationError(f"mass must be positive, got {self.mass!r}")
        if float(self.rho.min()) < 0.0:
            raise DegenerateStateError("rho has negative samples")
        # Loose safety net only: constructors normalize to ~1e-15, and the
        # bracket oracle's bumped states sit within ~1e-6 of unit mass.
        norm = self.grid.quadrature(self.rho)
        if abs(norm - 1.0) > 1e-4:
            raise DegenerateStateError(f"rho is not normalized: quadrature(rho) = {norm!r}")

    @cached_property
    def sqrt_rho(self) -> np.ndarray:
        u = np.sqrt(self.rho)
        u.setflags(write=False)
        return u

    @property
    def norm(self) -> float:
        return self.grid.quadrature(self.rho)

    def with_units(self, hbar=None, mass=None) -> "HydroState":
        return replace(self, hbar=self.hbar if hbar is None else hbar,
                       mass=self.mass if mass is None else mass)


@dataclass(frozen=True)
class WaveField:
    """Wave function psi with units; quadrature(|psi|^2) = 1."""

    grid: Grid
    psi: np.ndarray
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "psi", _read_only(self.grid.bind(self.psi), "complex"))
        if not self.hbar > 0:
            raise ConfigurationError(f"hbar must be positive, got {self.hbar!r}")
        if not self.mass > 0:
            raise ConfigurationError(f"mass must be positive, got {self.mass!r}")

    @cached_property
    def rho(self) -> np.ndarray:
        r = np.abs(self.psi) ** 2
        r.setflags(write=False)
        return r

    @property
    def norm(self) -> float:
        return self.grid.quadrature(self.rho)


@dataclass(frozen=True)
class GaussianParams:
    """Parameters of the Gaussian test-state family.

    The density is a normalized Gaussian of variance ``sigma2`` centered
    at ``x0`` (along the first axis); the phase is
    ``b*r^2/2 + p0*(x - x0) + c`` with r measured from the center.
    """

    sigma2: float = 1.0
    b: float = 0.0
    c: float = 0.0
    p0: float = 0.0
    x0: float = 0.0

    def __post_init__(self):
        if not self.sigma2 > 0:
            raise ConfigurationError(f"sigma2 must be positive, got {self.sigma2!r}")


def make_gaussian(params: GaussianParams, grid: Grid, hbar: float = 1.0, mass: float = 1.0) -> HydroState:
    """Build the Gaussian test state for ``params`` on ``grid``.

    Raises
    ------
    ConfigurationError
        If the packet amplitude at the box boundary exceeds 1e-12, which
        would break the periodicity assumptions of the spectral substrate.
    """
    offsets = [grid.coords[0] - params.x0] + [grid.coords[ax] for ax in range(1, grid.dim)]
    r2 = sum(o**2 for o in offsets)
    rho = np.exp(-r2 / (2.0 * params.sigma2))
    rho /= grid.quadrature(rho)
    amp = np.sqrt(rho)
    boundary = np.zeros(grid.shape, dtype=bool)
    for ax in range(grid.dim):
        sl = [slice(None)] * grid.dim
        sl[ax] = 0
        boundary[tuple(sl)] = True
    tail = float(amp[boundary].max())
    if tail > TAIL_TOLERANCE:
        raise ConfigurationError(
            f"packet tail {tail:.3e} exceeds {TAIL_TOLERANCE:g} at the box boundary "
            f"(sigma2={params.sigma2!r}, length={grid.length!r})"
        )
    s = 0.5 * params.b * r2 + params.p0 * offsets[0] + params.c
    return HydroState(grid=grid, rho=rho, s=s, hbar=hbar, mass=mass)


def make_double_gaussian(offset: float, sigma2: float, grid: Grid, hbar: float = 1.0, mass: float = 1.0) -> HydroState:
    """Symmetric two-bump density (equal-weight Gaussians at +-offset), s = 0."""
    x = grid.coords[0]
    r2m = (x + offset) ** 2 + sum(grid.coords[ax] ** 2 for ax in range(1, grid.dim))
    r2p = (x - offset) ** 2 + sum(grid.coords[ax] ** 2 for ax in range(1, grid.dim))
    rho = np.exp(-r2m / (2.0 * sigma2)) + np.exp(-r2p / (2.0 * sigma2))
    rho /= grid.quadrature(rho)
    return HydroState(grid=grid, rho=rho, s=np.zeros(grid.shape), hbar=hbar, mass=mass)


def to_wave(state: HydroState) -> WaveField:
    """Polar composition psi = sqrt(rho) * exp(i s / hbar)."""
    psi = state.sqrt_rho * np.exp(1j * state.s / state.hbar)
    return WaveField(grid=state.grid, psi=psi, hbar=state.hbar, mass=state.mass)


def _unwrap_from_center(angles: np.ndarray) -> np.ndarray:
    out = angles
    for ax in range(angles.ndim):
        out = np.unwrap(out, axis=ax)
    center = tuple(n // 2 for n in angles.shape)
    return out - out[center] + angles[center]


def from_wave(w: WaveField, strict: bool = False) -> HydroState:
    """Polar decomposition of a wave field.

    The phase is reconstructed by unwrapping arg(psi) outward from the box
    center, anchored so s(center) = hbar * arg psi(center).  Unwrap errors
    can only occur where |psi| is negligible, and are harmless there
    because every use of s carries a rho weight.

    With ``strict=True`` the nodeless precondition
    min|psi|^2 >= 1e-15 * max|psi|^2 is enforced.
    """
    rho = w.rho
    if strict and float(rho.min()) < 1e-15 * float(rho.max()):
        raise DegenerateStateError("wave field has (near-)nodes: strict polar decomposition refused")
    s = w.hbar * _unwrap_from_center(np.angle(w.psi))
    return HydroState(grid=w.grid, rho=rho, s=s, hbar=w.hbar, mass=w.mass)


def check_nodeless_interior(rho: np.ndarray):
    """Reject densities with (near-)nodes inside their support.

    Quantum-potential fields divide by sqrt(rho); exterior tails are
    harmless (every use carries a density weight) but an interior dip
    below 1e-15 of the peak makes those fields meaningless where they
    matter.  Only the 1-D case has a well-defined interior.
    """
    if rho.ndim != 1:
        return
    peak = float(rho.max())
    body = np.flatnonzero(rho > 1e-6 * peak)
    interior = rho[body[0]:body[-1] + 1]
    if float(interior.min()) < 1e-15 * peak:
        raise DegenerateStateError("density has an interior node; quantum-potential fields undefined")


def phase_gradient(obj) -> list:
    """Per-axis grad(s) for either state representation.

    For a :class:`HydroState` the phase samples are differentiated with
    centered differences (exact for the polynomial phases of the test
    family; the wrap cells carry negligible density).  For a
    :class:`WaveField` the gauge-invariant ratio
    hbar * Im(psi* grad psi) / |psi|^2 is used, zeroed below RHO_FLOOR.
    """
    if isinstance(obj, HydroState):
        return obj.grid.fd_gradient(obj.s)
    if isinstance(obj, WaveField):
        rho = obj.rho
        keep = rho > RHO_FLOOR
        denom = np.maximum(rho, RHO_FLOOR)
        out = []
        for g in obj.grid.gradient(obj.psi):
            comp = obj.hbar * np.imag(np.conj(obj.psi) * g) / denom
            out.append(np.where(keep, comp, 0.0))
        return out
    raise TypeError(f"expected HydroState or WaveField, got {type(obj).__name__}")
