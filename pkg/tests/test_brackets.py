"""Bracket engine: identities, the bump oracle, generator and Jacobi checks."""

import numpy as np
import pytest

from qrel import (
    FunctionalTag,
    GaussianParams,
    OraclePrecisionError,
    delta_p2_q,
    delta_x2,
    fd_functional_derivative,
    generator_check,
    h_q,
    jacobi_defect,
    k_q,
    make_gaussian,
    poisson_bracket,
    variational_derivative,
)
from qrel.brackets import bracket_of_fields, subtract_rho_mean

T = FunctionalTag

ALL_TAGS = (T.S_GEN, T.H_CL, T.H_Q, T.K_Q, T.FISHER, T.DELTA_X2,
            T.DELTA_P2_CL, T.DELTA_P2_Q, T.SIGMA_X2, T.P_TRANSLATION)


@pytest.fixture(scope="module")
def chirped(grid):
    return make_gaussian(GaussianParams(sigma2=1.0, b=1.0), grid)


@pytest.fixture(scope="module")
def generic(grid):
    return make_gaussian(GaussianParams(sigma2=0.8, b=-1.0, p0=2.0), grid)


class TestBracketValues:
    def test_self_bracket_vanishes(self, generic):
        for tag in (T.H_Q, T.S_GEN, T.DELTA_P2_Q):
            assert poisson_bracket(tag, tag, generic).value == 0.0

    def test_antisymmetry_all_pairs(self, generic):
        for a in ALL_TAGS:
            for b in ALL_TAGS:
                fwd = poisson_bracket(a, b, generic).value
                rev = poisson_bracket(b, a, generic).value
                assert abs(fwd + rev) < 1e-12

    def test_dilatation_generates_companion(self, chirped):
        # {S, H_q} on the b=1 Gaussian equals k_q = 0.375
        res = poisson_bracket(T.S_GEN, T.H_Q, chirped)
        assert abs(res.value - 0.375) < 1e-8
        assert abs(res.value - k_q(chirped)) < 1e-8

    def test_companion_generates_hamiltonian(self, minimal):
        res = poisson_bracket(T.S_GEN, T.K_Q, minimal)
        assert abs(res.value - 0.125) < 1e-8
        assert abs(res.value - h_q(minimal)) < 1e-8

    def test_identities_on_battery(self, battery):
        for label, state in battery:
            sh = poisson_bracket(T.S_GEN, T.H_Q, state).value
            sk = poisson_bracket(T.S_GEN, T.K_Q, state).value
            assert abs(sh - k_q(state)) <= max(1e-8, 1e-6 * abs(k_q(state))), label
            assert abs(sk - h_q(state)) <= max(1e-8, 1e-6 * abs(h_q(state))), label

    def test_translations_commute_with_hamiltonian(self, battery):
        for label, state in battery:
            assert abs(poisson_bracket(T.P_TRANSLATION, T.H_Q, state).value) < 1e-8, label

    def test_bilinearity_of_the_field_bracket(self, generic):
        grid = generic.grid
        rng = np.random.default_rng(3)
        f = [rng.standard_normal(grid.shape) for _ in range(4)]
        g = [rng.standard_normal(grid.shape) for _ in range(4)]
        lhs = bracket_of_fields(grid, 2.5 * f[0] + g[0], 2.5 * f[1] + g[1], f[2], f[3])
        rhs = 2.5 * bracket_of_fields(grid, f[0], f[1], f[2], f[3]) \
            + bracket_of_fields(grid, g[0], g[1], f[2], f[3])
        assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(lhs))

    def test_closed_form_vs_oracle_value(self, generic):
        closed = poisson_bracket(T.S_GEN, T.H_Q, generic)
        oracle = poisson_bracket(T.S_GEN, T.H_Q, generic, method="finite-difference-oracle")
        assert abs(closed.value - oracle.value) <= max(1e-8, 1e-6 * abs(closed.value))
        assert oracle.method == "finite-difference-oracle"


class TestOracle:
    def test_linear_functional_recovers_density(self, chirped):
        field = fd_functional_derivative(T.S_GEN, chirped, "s")
        mask = chirped.rho > 1e-12
        assert np.abs((field - chirped.rho)[mask]).max() < 1e-8

    def test_classical_energy_zero_phase(self, minimal):
        field = fd_functional_derivative(T.H_CL, minimal, "rho")
        mask = minimal.rho > 1e-12
        assert np.abs(field[mask]).max() < 1e-8

    def test_quantum_potential_up_to_constant(self, minimal):
        x = minimal.grid.coords[0]
        expected = -0.5 * (x**2 / 4.0 - 0.5)
        mask = minimal.rho > 1e-10
        field = fd_functional_derivative(T.H_Q, minimal, "rho", where=mask)
        diff = (field - expected)[mask]
        assert np.abs(diff - diff.mean()).max() < 1e-6

    @pytest.mark.parametrize("tag", [T.S_GEN, T.H_Q, T.K_Q, T.DELTA_P2_Q])
    @pytest.mark.parametrize("component", ["rho", "s"])
    def test_matches_closed_forms(self, generic, tag, component):
        mask = generic.rho > 1e-10
        closed = variational_derivative(tag, generic, component)
        numeric = fd_functional_derivative(tag, generic, component, where=mask)
        if component == "rho":
            closed = subtract_rho_mean(closed, generic, where=mask)
            numeric = subtract_rho_mean(numeric, generic, where=mask)
        scale = max(np.abs(closed[mask]).max(), 1e-2)
        assert np.abs((closed - numeric)[mask]).max() < 1e-6 * scale

    def test_direct_bump_mode_on_moderate_densities(self, minimal):
        mask = minimal.rho > 1e-3
        closed = subtract_rho_mean(variational_derivative(T.H_Q, minimal, "rho"), minimal, where=mask)
        numeric = fd_functional_derivative(T.H_Q, minimal, "rho", epsilon=1e-7,
                                           bump="direct", where=mask)
        numeric = subtract_rho_mean(numeric, minimal, where=mask)
        scale = np.abs(closed[mask]).max()
        assert np.abs((closed - numeric)[mask]).max() < 1e-4 * scale

    def test_direct_bump_positivity_guard(self, minimal):
        with pytest.raises(OraclePrecisionError):
            fd_functional_derivative(T.H_Q, minimal, "rho", epsilon=1e-2, bump="direct",
                                     where=minimal.rho > 1e-10)

    def test_error_estimate_returned(self, minimal):
        field, est = fd_functional_derivative(T.H_Q, minimal, "s", return_error=True)
        assert est < 1e-8


class TestGeneratorCheck:
    def test_minimal_gaussian_closed_form(self, minimal):
        # bracket = -delta_p2_q + hbar^2/(2 delta_x2) = -0.25 + 0.5
        chk = generator_check(minimal, dalpha=1e-4)
        assert abs(chk.bracket_closed_form - 0.25) < 1e-10
        assert chk.residual / abs(chk.bracket_closed_form) < 1e-6

    def test_fixed_point_state(self, minimal):
        # delta_x2*delta_p2_q = hbar^2/4: bracket equals +delta_p2_q
        chk = generator_check(minimal)
        assert abs(chk.bracket_closed_form - delta_p2_q(minimal)) < 1e-10
        assert chk.residual < 1e-8

    def test_second_order_shrinkage(self, grid):
        # needs b^2 sigma^2 != hbar^2/(4 sigma^2), else the scheme is exact
        state = make_gaussian(GaussianParams(sigma2=0.5, b=2.0), grid)
        coarse = generator_check(state, dalpha=1e-3)
        fine = generator_check(state, dalpha=5e-4)
        assert coarse.residual / fine.residual == pytest.approx(4.0, abs=0.5)


class TestJacobi:
    def test_cyclic_sum_vanishes(self, chirped):
        defect, inner = jacobi_defect(chirped)
        assert abs(defect) < 1e-6 * max(1.0, abs(inner))

    def test_inner_bracket_nonzero_generally(self, generic):
        _, inner = jacobi_defect(generic)
        assert abs(inner) > 1e-3
