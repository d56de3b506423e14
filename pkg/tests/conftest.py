import numpy as np
import pytest

from qrel import GaussianParams, Grid, make_gaussian, to_wave


@pytest.fixture(scope="session")
def grid():
    """Desk-scale grid: 1-D, n=512, L=40."""
    return Grid(n=512, length=40.0)


@pytest.fixture(scope="session")
def minimal(grid):
    """Minimal-uncertainty Gaussian: sigma2=1, b=0, p0=0, hbar=m=1."""
    return make_gaussian(GaussianParams(sigma2=1.0), grid)


@pytest.fixture(scope="session")
def minimal_wave(minimal):
    return to_wave(minimal)


@pytest.fixture(scope="session")
def battery(grid):
    """The standard 18-state Gaussian test battery."""
    from qrel.suites import battery_states

    return battery_states(grid)


def gaussian_density(grid, sigma2, x0=0.0):
    x = grid.coords[0]
    rho = np.exp(-((x - x0) ** 2) / (2.0 * sigma2))
    return rho / grid.quadrature(rho)
