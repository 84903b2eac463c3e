"""Unit tests for the sweep spec parser."""
import pytest

from rydberg.exceptions import SpecFileError
from rydberg.schemas.entropy import EntropyKind
from rydberg.schemas.quadrature import QuadratureConfig
from rydberg.schemas.sweep import MethodSelector
from rydberg.services.sweep_spec_parser import load_sweep_spec, parse_grid, parse_sweep_spec

SPEC = """\
# convergence of the p = 3/4 entropy
n = 20, 50..60:5   # trailing comment
l = 0..1
p = 0.75, 2
kind = Renyi
method = both
rel_tol = 1e-8
"""


class TestParseGrid:
    def test_mixed_items(self):
        assert parse_grid("1, 3..5, 10", integer=True) == [1, 3, 4, 5, 10]

    def test_float_range_with_step(self):
        assert parse_grid("0.1..0.5:0.2", integer=False) == [0.1, 0.3, 0.5]

    def test_non_integer_in_integer_grid(self):
        with pytest.raises(SpecFileError, match="not an integer"):
            parse_grid("1.5", integer=True)


class TestParseSpec:
    def test_full_spec(self):
        spec = parse_sweep_spec(SPEC)
        assert spec.n == [20, 50, 55, 60]
        assert spec.l == [0, 1]
        assert spec.p == [0.75, 2.0]
        assert spec.kind == EntropyKind.RENYI
        assert spec.method == MethodSelector.BOTH
        assert spec.cfg.rel_tol == 1e-8

    def test_defaults(self):
        spec = parse_sweep_spec("n = 3", QuadratureConfig(panel_order=21))
        assert spec.l == [0]
        assert spec.p == [1.0]
        assert spec.cfg.panel_order == 21

    @pytest.mark.parametrize("text,line,field,message", [
        ("n = 3\nbogus", 2, None, "expected 'key = value'"),
        ("n = 3\nq = 1", 2, "q", "unknown key"),
        ("n = 3\nn = 4", 2, "n", "duplicate key"),
        ("n = 3\np =", 2, "p", "missing value"),
        ("n = 3\np = x", 2, "p", "'x' is not a number"),
        ("n = 5..3", 1, "n", "runs backwards"),
        ("n = 3\nmethod = fast", 2, "method", "not one of"),
        ("n = 3\n\nrel_tol = -1", 3, "rel_tol", "greater than 0"),
    ])
    def test_errors_name_line_and_field(self, text, line, field, message):
        with pytest.raises(SpecFileError) as excinfo:
            parse_sweep_spec(text)
        error = excinfo.value
        assert error.line == line
        assert error.field == field
        assert message in error.message
        assert error.message.startswith(f"line {line}")

    def test_missing_n(self):
        with pytest.raises(SpecFileError) as excinfo:
            parse_sweep_spec("p = 2")
        assert excinfo.value.field == "n"


def test_load_from_file(tmp_path):
    path = tmp_path / "sweep.spec"
    path.write_text(SPEC, encoding="utf-8")
    assert load_sweep_spec(path).n == [20, 50, 55, 60]


def test_unreadable_file(tmp_path):
    with pytest.raises(SpecFileError, match="cannot read"):
        load_sweep_spec(tmp_path / "missing.spec")
