import math

import numpy as np
import pytest

from fro.analytic import (
    GreenFunction,
    analytic_solution,
    green,
    oscillation_solution,
    relaxation_solution,
)
from fro.expressions import parse_expression
from fro.solver import FroProblem, TimeGrid, solve_pece

from oracles import oracle_ml


def make(alpha=0.5, coeff=1.0, forcing=None, y0=0.0, yp0=0.0, step=0.1, duration=10.0):
    return FroProblem(alpha=alpha, relax_coeff=coeff, forcing=forcing,
                      y0=y0, y0_prime=yp0, step=step, duration=duration)


class TestGreen:
    def test_classical_exponential_kernel(self):
        gf = GreenFunction(alpha=1.0, relax_coeff=1.0)
        assert green(gf, 2.0) == pytest.approx(math.exp(-2.0), abs=1e-12)

    def test_zero_coefficient(self):
        gf = GreenFunction(alpha=1.0, relax_coeff=0.0)
        assert green(gf, 5.0) == pytest.approx(1.0, rel=1e-13)

    def test_half_order_value(self):
        # E_{1/2,1/2}(-1) = 1/sqrt(pi) - e erfc(1), frozen from the
        # brute-force series oracle
        gf = GreenFunction(alpha=0.5, relax_coeff=1.0)
        ref = float(oracle_ml(0.5, 0.5, -1.0))
        assert ref == pytest.approx(0.13660600739194928, abs=1e-13)
        assert green(gf, 1.0) == pytest.approx(ref, abs=1e-10)

    def test_domain_error(self):
        gf = GreenFunction(alpha=0.5, relax_coeff=1.0)
        with pytest.raises(ValueError):
            green(gf, 0.0)
        with pytest.raises(ValueError):
            green(gf, -1.0)

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            GreenFunction(alpha=2.5, relax_coeff=1.0)
        with pytest.raises(ValueError):
            GreenFunction(alpha=0.5, relax_coeff=-1.0)

    def test_array_input(self):
        gf = GreenFunction(alpha=1.0, relax_coeff=2.0)
        t = np.array([0.5, 1.0, 2.0])
        np.testing.assert_allclose(green(gf, t), np.exp(-2.0 * t), atol=1e-12)


class TestRelaxationSolution:
    def test_classical_exponential(self):
        p = make(alpha=1.0, y0=1.0, step=0.01, duration=5.0)
        traj = relaxation_solution(p)
        np.testing.assert_allclose(traj.values, np.exp(-traj.times), atol=1e-10)
        assert traj.method == "analytic"

    def test_zero_initial_zero_forcing(self):
        traj = relaxation_solution(make(alpha=0.5, y0=0.0))
        assert np.all(traj.values == 0.0)

    def test_half_order_endpoint(self):
        p = make(alpha=0.5, y0=1.0, step=0.01, duration=1.0)
        traj = relaxation_solution(p)
        assert traj.values[-1] == pytest.approx(0.4275835761558, abs=1e-10)

    def test_starts_at_y0(self):
        p = make(alpha=0.7, y0=2.5, step=0.1, duration=2.0)
        traj = relaxation_solution(p)
        assert traj.values[0] == pytest.approx(2.5, abs=1e-13)

    def test_constant_when_coeff_zero(self):
        p = make(alpha=0.6, coeff=0.0, y0=1.5, step=0.1, duration=3.0)
        traj = relaxation_solution(p)
        np.testing.assert_allclose(traj.values, 1.5, atol=1e-12)

    def test_regime_guard(self):
        with pytest.raises(ValueError):
            relaxation_solution(make(alpha=1.5))


class TestOscillationSolution:
    def test_cosine(self):
        p = make(alpha=2.0, y0=1.0, yp0=0.0, step=0.01, duration=10.0)
        traj = oscillation_solution(p)
        np.testing.assert_allclose(traj.values, np.cos(traj.times), atol=1e-10)

    def test_sine(self):
        p = make(alpha=2.0, y0=0.0, yp0=1.0, step=0.01, duration=10.0)
        traj = oscillation_solution(p)
        np.testing.assert_allclose(traj.values, np.sin(traj.times), atol=1e-10)

    def test_linear_when_coeff_zero(self):
        p = make(alpha=1.5, coeff=0.0, y0=2.0, yp0=0.5, step=0.1, duration=4.0)
        traj = oscillation_solution(p)
        np.testing.assert_allclose(traj.values, 2.0 + 0.5 * traj.times, atol=1e-12)

    def test_regime_guard(self):
        with pytest.raises(ValueError):
            oscillation_solution(make(alpha=0.9))

    def test_damped_oscillation_crosses_zero(self):
        p = make(alpha=1.8, y0=1.0, yp0=0.0, step=0.01, duration=10.0)
        traj = oscillation_solution(p)
        assert np.min(traj.values) < 0.0


class TestCrossValidation:
    def test_alpha_18_pece_agreement(self):
        p = make(alpha=1.8, coeff=1.0, y0=1.0, yp0=0.0, step=1 / 1024, duration=10.0)
        num = solve_pece(p)
        ana = oscillation_solution(p)
        assert np.max(np.abs(num.values - ana.values)) <= 5e-3

    @pytest.mark.parametrize("alpha", [0.3, 0.7, 1.0, 1.35, 1.9])
    def test_oracle_agreement_homogeneous(self, alpha):
        p = make(alpha=alpha, coeff=1.5, y0=2.0, yp0=-1.0, step=1 / 512, duration=3.0)
        num = solve_pece(p)
        ana = analytic_solution(p)
        assert np.max(np.abs(num.values - ana.values)) <= 5e-3

    def test_forced_relaxation_against_pece(self):
        # product-integration convolution vs the solver, forced problem
        p = make(alpha=0.8, coeff=1.0, forcing=parse_expression("sin(t)"),
                 y0=0.5, step=1 / 256, duration=4.0)
        num = solve_pece(p)
        ana = relaxation_solution(p)
        assert np.max(np.abs(num.values - ana.values)) <= 2e-3

    def test_forced_oscillation_against_pece(self):
        p = make(alpha=1.8, coeff=1.0, forcing=parse_expression("cos(t^2)*exp(-t)"),
                 y0=1.0, yp0=1.0, step=1 / 256, duration=4.0)
        num = solve_pece(p)
        ana = oscillation_solution(p)
        assert np.max(np.abs(num.values - ana.values)) <= 2e-3

    def test_convergence_toward_analytic(self):
        # PECE error against the analytic curve shrinks as h does
        p = make(alpha=0.6, coeff=1.0, y0=1.0, duration=2.0)
        errs = []
        for h in (1 / 64, 1 / 256):
            traj = solve_pece(p.with_step(h))
            ana = analytic_solution(p.with_step(h))
            errs.append(np.max(np.abs(traj.values - ana.values)))
        assert errs[1] < errs[0] / 3.0


class TestGridHandling:
    def test_explicit_grid(self):
        p = make(alpha=0.5, y0=1.0, step=0.1, duration=5.0)
        grid = TimeGrid.build(0.5, 4)
        traj = relaxation_solution(p, grid)
        assert traj.grid.n_points == 5
        assert traj.times[-1] == pytest.approx(2.0)
