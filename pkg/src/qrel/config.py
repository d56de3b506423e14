"""Scenario configuration: JSON schema, defaults, validation.

A scenario names the grid, the units, the initial state (Gaussian
parameters or a wave-sample ``.npy`` file), a flow with step and
duration, an alpha list for group sweeps, the suite selection and the
delta_x2 convention.  Validation errors name the offending field.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError
from .functionals import CONVENTIONS
from .grid import Grid
from .states import GaussianParams, HydroState, WaveField, make_gaussian, to_wave

SUITE_NAMES = ("group", "functionals", "brackets", "dynamics", "classical-limit")


@dataclass
class ScenarioConfig:
    grid_n: int = 512
    grid_length: float = 40.0
    grid_dim: int = 1
    hbar: float = 1.0
    mass: float = 1.0
    state_kind: str = "gaussian"
    state_params: GaussianParams = field(default_factory=GaussianParams)
    wave_path: str = ""
    flow: str = "tau"
    step: float = 1e-3
    duration: float = 0.5
    alphas: tuple = tuple(np.linspace(-3.0, 3.0, 13))
    suites: tuple = SUITE_NAMES
    convention: str = "consistent"

    def make_grid(self) -> Grid:
        return Grid(n=self.grid_n, length=self.grid_length, dim=self.grid_dim)

    def make_state(self, grid: Grid = None) -> HydroState:
        grid = grid or self.make_grid()
        if self.state_kind != "gaussian":
            raise ConfigurationError("state.kind: only 'gaussian' states convert to a HydroState directly")
        return make_gaussian(self.state_params, grid, hbar=self.hbar, mass=self.mass)

    def make_wave(self, grid: Grid = None) -> WaveField:
        grid = grid or self.make_grid()
        if self.state_kind == "gaussian":
            return to_wave(self.make_state(grid))
        try:
            psi = np.load(self.wave_path)
        except OSError as err:
            raise ConfigurationError(f"state.path: cannot read wave samples: {err}") from err
        if psi.shape != grid.shape:
            raise ConfigurationError(
                f"state.path: wave samples shape {psi.shape} does not match grid shape {grid.shape}")
        norm = grid.quadrature(np.abs(psi) ** 2)
        if not math.isfinite(norm) or abs(norm - 1.0) > 1e-6:
            raise ConfigurationError(f"state.path: wave samples not normalized (quadrature {norm!r})")
        return WaveField(grid=grid, psi=psi, hbar=self.hbar, mass=self.mass)

    @property
    def steps(self) -> int:
        return int(round(self.duration / self.step)) if self.duration > 0 else 0


def _expect(cond, message):
    if not cond:
        raise ConfigurationError(message)


def _positive(value, name):
    _expect(isinstance(value, (int, float)) and math.isfinite(value) and value > 0,
            f"{name} must be a positive finite number, got {value!r}")
    return float(value)


def config_from_dict(raw: dict) -> ScenarioConfig:
    """Build and validate a scenario from parsed JSON."""
    cfg = ScenarioConfig()
    _expect(isinstance(raw, dict), "config root must be a JSON object")

    grid = raw.get("grid", {})
    _expect(isinstance(grid, dict), "grid must be an object")
    n = grid.get("n", cfg.grid_n)
    _expect(isinstance(n, int) and n >= 16 and (n & (n - 1)) == 0,
            f"grid.n must be a power of two >= 16, got {n!r}")
    cfg.grid_n = n
    cfg.grid_length = _positive(grid.get("length", cfg.grid_length), "grid.length")
    dim = grid.get("dim", cfg.grid_dim)
    _expect(dim in (1, 2, 3), f"grid.dim must be 1, 2 or 3, got {dim!r}")
    cfg.grid_dim = dim

    units = raw.get("units", {})
    _expect(isinstance(units, dict), "units must be an object")
    cfg.hbar = _positive(units.get("hbar", cfg.hbar), "units.hbar")
    cfg.mass = _positive(units.get("mass", cfg.mass), "units.mass")

    state = raw.get("state", {})
    _expect(isinstance(state, dict), "state must be an object")
    kind = state.get("kind", "gaussian")
    _expect(kind in ("gaussian", "wave_file"), f"state.kind must be 'gaussian' or 'wave_file', got {kind!r}")
    cfg.state_kind = kind
    if kind == "gaussian":
        sigma2 = _positive(state.get("sigma2", 1.0), "state.sigma2")
        for key in state:
            _expect(key in ("kind", "sigma2", "b", "c", "p0", "x0"), f"state.{key} is not a known field")
        cfg.state_params = GaussianParams(
            sigma2=sigma2,
            b=float(state.get("b", 0.0)),
            c=float(state.get("c", 0.0)),
            p0=float(state.get("p0", 0.0)),
            x0=float(state.get("x0", 0.0)),
        )
    else:
        path = state.get("path", "")
        _expect(isinstance(path, str) and path, "state.path is required for wave_file states")
        cfg.wave_path = path

    flow = raw.get("flow", {})
    _expect(isinstance(flow, dict), "flow must be an object")
    kind = flow.get("kind", cfg.flow)
    _expect(kind in ("t", "tau"), f"flow.kind must be 't' or 'tau', got {kind!r}")
    cfg.flow = kind
    cfg.step = _positive(flow.get("step", cfg.step), "flow.step")
    duration = flow.get("duration", cfg.duration)
    _expect(isinstance(duration, (int, float)) and math.isfinite(duration) and duration >= 0,
            f"flow.duration must be a nonnegative finite number, got {duration!r}")
    cfg.duration = float(duration)

    alphas = raw.get("alphas", list(cfg.alphas))
    _expect(isinstance(alphas, list) and all(isinstance(a, (int, float)) for a in alphas),
            "alphas must be a list of numbers")
    cfg.alphas = tuple(float(a) for a in alphas)

    suites = raw.get("suites", list(cfg.suites))
    _expect(isinstance(suites, list) and suites, "suites must be a nonempty list")
    for name in suites:
        _expect(name in SUITE_NAMES, f"suites: unknown suite {name!r} (known: {', '.join(SUITE_NAMES)})")
    cfg.suites = tuple(suites)

    convention = raw.get("convention", cfg.convention)
    _expect(convention in CONVENTIONS, f"convention must be one of {CONVENTIONS}, got {convention!r}")
    cfg.convention = convention
    return cfg


def load_config(path: str = None) -> ScenarioConfig:
    """Load a scenario file, or the built-in defaults when no path is given."""
    if path is None:
        return ScenarioConfig()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as err:
        raise ConfigurationError(f"config: cannot read {path!r}: {err}") from err
    except json.JSONDecodeError as err:
        raise ConfigurationError(f"config: {path!r} is not valid JSON: {err}") from err
    return config_from_dict(raw)
