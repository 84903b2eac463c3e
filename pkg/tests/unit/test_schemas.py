"""Unit tests for the pydantic models."""
import re

import pytest
from pydantic import ValidationError

from rydberg.exceptions import DomainError, QuantumNumberError
from rydberg.schemas.entropy import EntropyKind, EntropyResult, Method, RegimeTag
from rydberg.schemas.output import OutputRecord
from rydberg.schemas.quadrature import IntegralResult
from rydberg.schemas.state import LaguerreNormSpec, QuantumState, quantum_number_violation
from rydberg.schemas.sweep import SweepSpec


class TestQuantumState:
    @pytest.mark.parametrize("n,l,m,Z,message", [
        (0, 0, 0, 1.0, "n ≥ 1"),
        (2, 2, 0, 1.0, "l ≤ n−1"),
        (3, -1, 0, 1.0, "l ≥ 0"),
        (3, 1, 2, 1.0, "|m| ≤ l"),
        (3, 1, 0, 0.0, "Z > 0"),
    ])
    def test_constraints(self, n, l, m, Z, message):
        assert message in quantum_number_violation(n, l, m, Z)
        with pytest.raises(QuantumNumberError, match=re.escape(message)):
            QuantumState.build(n, l, m, Z)
        with pytest.raises(ValidationError):
            QuantumState(n=n, l=l, m=m, Z=Z)

    def test_derived_quantities(self):
        state = QuantumState(n=5, l=2, m=-1, Z=2.0)
        assert state.degree == 2
        assert state.alpha == 5
        assert state.radial_scale == pytest.approx(0.8)
        assert state.energy == pytest.approx(-0.08)
        assert state.with_charge(3.0).Z == 3.0


class TestLaguerreNormSpec:
    def test_hydrogenic_parameters(self):
        spec = LaguerreNormSpec.hydrogenic(QuantumState(n=6, l=1), 2.5)
        assert (spec.degree, spec.alpha, spec.p, spec.beta) == (4, 3.0, 2.5, -0.5)

    @pytest.mark.parametrize("args", [(-1, 1.0, 1.0, 0.0), (1, -1.0, 1.0, 0.0), (1, 1.0, 0.0, 0.0), (1, 0.0, 1.0, -1.0)])
    def test_invalid(self, args):
        with pytest.raises(DomainError):
            LaguerreNormSpec.build(*args)


class TestEntropyResult:
    def test_shannon_has_no_order(self):
        with pytest.raises(ValidationError):
            EntropyResult(value=1.0, kind=EntropyKind.SHANNON, p=2.0, method=Method.EXACT)

    def test_renyi_order_one_rejected(self):
        with pytest.raises(ValidationError):
            EntropyResult(value=1.0, kind=EntropyKind.RENYI, p=1.0, method=Method.EXACT)

    def test_record_marks_non_convergence(self):
        result = EntropyResult(value=1.0, kind=EntropyKind.RENYI, p=2.0, method=Method.ASYMPTOTIC,
                               regime=RegimeTag.BESSEL, note="dominant term", converged=False)
        record = OutputRecord.from_result(QuantumState(n=9, l=0), result)
        assert record.note == "dominant term; not converged"
        assert record.regime == "bessel"


def test_integral_result_helpers():
    result = IntegralResult(value=-2.0, abs_error_estimate=1e-10, panels_used=3, converged=True)
    assert result.relative_error == pytest.approx(5e-11)
    scaled = result.scaled(-3.0)
    assert scaled.value == 6.0
    assert scaled.abs_error_estimate == pytest.approx(3e-10)
    assert IntegralResult(value=0.0, abs_error_estimate=0.0, panels_used=1, converged=True).relative_error == 0.0


def test_sweep_points_order():
    spec = SweepSpec(n=[2, 3], l=[0, 1], p=[0.5, 2.0])
    assert [(s.n, s.l, p) for s, p in spec.points()] == [
        (2, 0, 0.5), (2, 0, 2.0), (2, 1, 0.5), (2, 1, 2.0),
        (3, 0, 0.5), (3, 0, 2.0), (3, 1, 0.5), (3, 1, 2.0),
    ]
    assert spec.grid_hash() == SweepSpec(n=[2, 3], l=[0, 1], p=[0.5, 2.0]).grid_hash()


def test_shannon_sweep_ignores_order_axis():
    spec = SweepSpec(n=[2, 3], p=[0.5, 2.0, 3.0], kind=EntropyKind.SHANNON)
    assert [(s.n, p) for s, p in spec.points()] == [(2, None), (3, None)]
