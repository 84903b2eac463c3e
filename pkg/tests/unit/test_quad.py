"""Unit tests for the adaptive quadrature engine."""
import math

import numpy as np
import pytest

from rydberg.exceptions import DomainError
from rydberg.schemas.quadrature import IntegralResult, QuadratureConfig
from rydberg.services.quad import (
    TailModel,
    combine,
    gauss_nodes,
    integrate,
    integrate_tail,
    integrate_zero_split,
)


class TestGaussNodes:
    def test_exact_for_high_degree_polynomials(self):
        nodes, weights = gauss_nodes(5)
        assert np.sum(weights * nodes ** 8) == pytest.approx(2.0 / 9.0, rel=1e-14)
        assert np.sum(weights) == pytest.approx(2.0, rel=1e-15)

    def test_symmetric_and_read_only(self):
        nodes, weights = gauss_nodes(8)
        np.testing.assert_allclose(nodes, -nodes[::-1], atol=1e-16)
        assert not nodes.flags.writeable
        assert not weights.flags.writeable

    def test_single_point_rejected(self):
        with pytest.raises(DomainError):
            gauss_nodes(1)


class TestIntegrate:
    def test_smooth_integrand(self, cfg):
        result = integrate(np.sin, 0.0, math.pi, cfg)
        assert result.value == pytest.approx(2.0, abs=1e-12)
        assert result.converged
        assert result.abs_error_estimate <= cfg.tolerance(result.value)

    def test_endpoint_singularity(self):
        cfg = QuadratureConfig(rel_tol=1e-8)
        result = integrate(lambda x: x ** -0.5, 0.0, 1.0, cfg)
        assert result.value == pytest.approx(2.0, rel=1e-8)
        assert result.converged
        assert result.abs_error_estimate <= cfg.tolerance(result.value)

    def test_interior_cusp_at_breakpoint(self, cfg):
        result = integrate_zero_split(lambda x: np.sqrt(np.abs(x - 0.3)), [0.3], 0.0, 1.0, cfg)
        exact = (0.3 ** 1.5 + 0.7 ** 1.5) * 2.0 / 3.0
        assert result.value == pytest.approx(exact, rel=1e-10)
        assert result.converged

    def test_frozen_panels_stop_refinement(self):
        # 1/x is not integrable; the panel at 0 hits max_depth with an error above tolerance
        cfg = QuadratureConfig(max_depth=8, max_panels=20000)
        result = integrate(lambda x: 1.0 / x, 0.0, 1.0, cfg)
        assert not result.converged
        assert result.panels_used < 100

    @pytest.mark.parametrize("a,b", [(2.0, -3.0), (0.5, 0.25)])
    def test_linearity(self, cfg, a, b):
        f = lambda x: np.exp(-x) * np.cos(7 * x)  # noqa: E731
        g = lambda x: 1.0 / (1.0 + x * x)  # noqa: E731
        rf, rg = integrate(f, 0.0, 5.0, cfg), integrate(g, 0.0, 5.0, cfg)
        mixed = integrate(lambda x: a * f(x) + b * g(x), 0.0, 5.0, cfg)
        budget = abs(a) * rf.abs_error_estimate + abs(b) * rg.abs_error_estimate + mixed.abs_error_estimate
        assert abs(mixed.value - (a * rf.value + b * rg.value)) <= budget + 1e-14

    @pytest.mark.parametrize("c", [0.1, 1.7, 4.9])
    def test_interval_additivity(self, cfg, c):
        f = lambda x: np.sqrt(x) * np.exp(-x)  # noqa: E731
        whole = integrate(f, 0.0, 5.0, cfg)
        left, right = integrate(f, 0.0, c, cfg), integrate(f, c, 5.0, cfg)
        budget = whole.abs_error_estimate + left.abs_error_estimate + right.abs_error_estimate
        assert abs(whole.value - (left.value + right.value)) <= budget + 1e-14

    def test_panel_cap_reports_non_convergence(self):
        result = integrate(lambda x: x ** -0.5, 0.0, 1.0, QuadratureConfig(max_panels=5))
        assert not result.converged

    def test_reversed_limits_rejected(self):
        with pytest.raises(DomainError):
            integrate(np.sin, 1.0, 0.0)

    def test_bit_reproducible(self, cfg):
        first = integrate(lambda x: np.exp(-x) * np.cos(7 * x), 0.0, 5.0, cfg)
        second = integrate(lambda x: np.exp(-x) * np.cos(7 * x), 0.0, 5.0, cfg)
        assert first.value == second.value
        assert first.abs_error_estimate == second.abs_error_estimate

    def test_non_finite_values_not_converged(self):
        result = integrate(lambda x: np.full_like(x, np.nan), 0.0, 1.0, QuadratureConfig(max_panels=50))
        assert not result.converged
        assert math.isinf(result.abs_error_estimate)


class TestZeroSplit:
    def test_absolute_sine_over_many_periods(self, cfg):
        breakpoints = math.pi * np.arange(1, 10)
        result = integrate_zero_split(lambda x: np.abs(np.sin(x)), breakpoints, 0.0, 10 * math.pi, cfg)
        assert result.value == pytest.approx(20.0, rel=1e-12)
        assert result.converged

    def test_split_agrees_with_unsplit(self, fast_cfg):
        f = lambda x: np.abs(np.sin(3.0 * x)) ** 1.5  # noqa: E731
        zeros = math.pi / 3.0 * np.arange(1, 12)
        split = integrate_zero_split(f, zeros, 0.0, 4.0 * math.pi, fast_cfg)
        plain = integrate(f, 0.0, 4.0 * math.pi, fast_cfg)
        assert split.converged and plain.converged
        budget = split.abs_error_estimate + plain.abs_error_estimate
        assert abs(split.value - plain.value) <= budget

    def test_unsorted_breakpoints_rejected(self):
        with pytest.raises(DomainError):
            integrate_zero_split(np.sin, [2.0, 1.0], 0.0, 3.0)

    def test_breakpoints_outside_interval_rejected(self):
        with pytest.raises(DomainError):
            integrate_zero_split(np.sin, [0.0, 1.0], 0.0, 3.0)


class TestTail:
    def test_exponential_tail(self, cfg):
        result = integrate_tail(lambda x: np.exp(-x), 0.0, cfg)
        assert result.value == pytest.approx(1.0, rel=1e-12)
        assert result.converged

    def test_analytic_closure(self, cfg):
        model = TailModel(start=10.0, remainder=lambda t: 1.0 / t, relative_uncertainty=lambda t: 0.0)
        result = integrate_tail(lambda x: x ** -2.0, 1.0, cfg, tail_model=model)
        assert result.value == pytest.approx(1.0, rel=1e-12)

    def test_closure_waits_for_its_uncertainty(self, cfg):
        # closing at T costs 1/T², below 1e-10 only from T ≈ 1e5 on
        model = TailModel(start=10.0, remainder=lambda t: 1.0 / t, relative_uncertainty=lambda t: 1.0 / t)
        result = integrate_tail(lambda x: x ** -2.0, 1.0, cfg, tail_model=model)
        assert result.value == pytest.approx(1.0, rel=1e-12)
        assert result.converged
        assert result.abs_error_estimate <= cfg.tolerance(1.0)

    def test_pending_closure_kept_when_depth_runs_out(self):
        cfg = QuadratureConfig(max_depth=5)
        model = TailModel(start=10.0, remainder=lambda t: 1.0 / t, relative_uncertainty=lambda t: 1.0 / t)
        result = integrate_tail(lambda x: x ** -2.0, 1.0, cfg, tail_model=model)
        assert result.value == pytest.approx(1.0, rel=1e-12)
        assert not result.converged
        assert result.abs_error_estimate >= 1.0 / 64.0 ** 2

    def test_edges_snap_to_breakpoints(self, cfg):
        # each half period contributes e^{−kπ}(1 + e^{−π})/2
        exact = 0.5 * (1 + math.exp(-math.pi)) / (1 - math.exp(-math.pi))

        def zeros(lo, hi):
            k = np.arange(math.floor(lo / math.pi) + 1, math.ceil(hi / math.pi) + 1)
            return k * math.pi

        result = integrate_tail(lambda x: np.exp(-x) * np.abs(np.sin(x)), 0.0, cfg, breakpoints=zeros)
        assert result.value == pytest.approx(exact, rel=1e-11)

    def test_negative_start_rejected(self):
        with pytest.raises(DomainError):
            integrate_tail(np.exp, -1.0)


def test_combine_adds_values_and_errors():
    a = IntegralResult(value=1.0, abs_error_estimate=1e-12, panels_used=3, converged=True)
    b = IntegralResult(value=2.0, abs_error_estimate=2e-12, panels_used=4, converged=False)
    total = combine(a, b)
    assert total.value == 3.0
    assert total.abs_error_estimate == pytest.approx(3e-12)
    assert total.panels_used == 7
    assert not total.converged


def _abs_sin_3x(x):
    return np.abs(np.sin(3.0 * x))


# (integrand, a, b, breakpoints, exact); b = inf integrates a tail
ERROR_BATTERY = [
    (np.sin, 0.0, math.pi, (), 2.0),
    (lambda x: x ** -0.5, 0.0, 1.0, (), 2.0),
    (np.log, 0.0, 1.0, (), -1.0),
    (np.sqrt, 0.0, 1.0, (), 2.0 / 3.0),
    (lambda x: np.exp(-x) * np.cos(7 * x), 0.0, 5.0, (),
     (math.exp(-5.0) * (7 * math.sin(35.0) - math.cos(35.0)) + 1.0) / 50.0),
    (lambda x: 1.0 / (1.0 + 25.0 * x * x), -1.0, 1.0, (), 0.4 * math.atan(5.0)),
    (lambda x: 4.0 / (1.0 + x * x), 0.0, 1.0, (), math.pi),
    (np.exp, 0.0, 2.0, (), math.exp(2.0) - 1.0),
    (_abs_sin_3x, 0.0, 2.0 * math.pi, tuple(k * math.pi / 3.0 for k in range(1, 6)), 4.0),
    (lambda x: np.exp(-x * x), 0.0, math.inf, (), 0.5 * math.sqrt(math.pi)),
]


def test_error_estimates_are_honest():
    checked, honest = 0, 0
    for rel_tol in (1e-6, 1e-8, 1e-10):
        cfg = QuadratureConfig(rel_tol=rel_tol)
        for f, a, b, breakpoints, exact in ERROR_BATTERY:
            if math.isinf(b):
                result = integrate_tail(f, a, cfg)
            else:
                result = integrate_zero_split(f, breakpoints, a, b, cfg)
            assert result.converged
            true_error = abs(result.value - exact)
            checked += 1
            # rounding floor for estimates that vanish on smooth integrands
            honest += true_error <= 10.0 * result.abs_error_estimate + 1e-14 * max(1.0, abs(exact))
    assert honest >= 0.95 * checked
