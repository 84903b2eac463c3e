"""Integration tests for the command-line interface."""
import io
import math

import pytest

from rydberg.cli import EXIT_OK, EXIT_VALIDATION, main
from rydberg.schemas.output import OutputFormat
from rydberg.services.output_writer import read_records


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def records(text, output_format=OutputFormat.CSV):
    return read_records(io.StringIO(text), output_format)


class TestEntropyCommand:
    def test_ground_state_shannon(self):
        code, out, _ = run("entropy", "--n", "1", "--l", "0", "--m", "0", "--Z", "1",
                           "--kind", "shannon", "--method", "exact")
        assert code == EXIT_OK
        (record,) = records(out)
        assert record.kind == "shannon"
        assert record.p is None
        assert record.value == pytest.approx(3.0 + math.log(math.pi), abs=1e-8)
        assert record.value == pytest.approx(4.144729886, abs=1e-9)

    def test_both_methods_at_transition(self):
        code, out, _ = run("entropy", "--n", "50", "--p", "2", "--method", "both", "--rel-tol", "1e-8")
        assert code == EXIT_OK
        exact, asymptotic = records(out)
        assert exact.method == "exact"
        assert asymptotic.method == "asympt"
        assert asymptotic.regime == "cosine-bessel"
        assert asymptotic.note == "dominant term"

    def test_bessel_regime_between_two_and_three(self):
        code, out, err = run("entropy", "--n", "50", "--p", "2.5", "--method", "asympt")
        assert code == EXIT_OK, err
        (record,) = records(out)
        assert record.regime == "bessel"
        assert math.isfinite(record.value)

    def test_repeated_orders(self):
        code, out, _ = run("entropy", "--n", "3", "--l", "1", "--p", "0.5", "--p", "3", "--rel-tol", "1e-8")
        assert code == EXIT_OK
        assert [r.p for r in records(out)] == [0.5, 3.0]

    def test_order_one_routed(self):
        code, out, _ = run("entropy", "--n", "2", "--p", "1", "--rel-tol", "1e-8")
        assert code == EXIT_OK
        (record,) = records(out)
        assert record.kind == "shannon"
        assert "Shannon" in record.note

    @pytest.mark.parametrize("argv,message", [
        (("--n", "2", "--l", "2"), "l must satisfy l ≤ n−1"),
        (("--n", "3", "--l", "1", "--m", "2"), "m must satisfy |m| ≤ l"),
        (("--n", "1", "--Z", "0"), "Z must satisfy Z > 0"),
        (("--n", "1", "--Z", "-2"), "Z must satisfy Z > 0"),
        (("--n", "1", "--p", "0"), "Invalid value for 'p'"),
    ])
    def test_validation_errors(self, argv, message):
        code, out, err = run("entropy", *argv)
        assert code == EXIT_VALIDATION
        assert message in err
        assert out == ""

    def test_bad_tolerance(self):
        code, _, err = run("entropy", "--n", "1", "--rel-tol", "-1")
        assert code == EXIT_VALIDATION
        assert err.startswith("error:")

    def test_formats_carry_the_same_values(self):
        argv = ("entropy", "--n", "4", "--l", "2", "--m", "1", "--p", "0.75", "--p", "2",
                "--method", "both", "--rel-tol", "1e-8")
        _, csv_out, _ = run(*argv, "--format", "csv")
        _, json_out, _ = run(*argv, "--format", "jsonl")
        assert records(csv_out) == records(json_out, OutputFormat.JSONL)
        assert csv_out.endswith("\n") and "\r" not in csv_out

    def test_tighter_tolerance_never_reports_larger_error(self):
        argv = ("entropy", "--n", "20", "--l", "3", "--p", "0.5")
        _, loose, _ = run(*argv, "--rel-tol", "1e-5")
        _, tight, _ = run(*argv, "--rel-tol", "1e-10")
        assert records(tight)[0].error <= records(loose)[0].error


class TestConstantsCommand:
    def test_cosine_identity(self):
        code, out, _ = run("constants", "--cosine", "1", "1")
        assert code == EXIT_OK
        header, values = out.strip().split("\n")
        assert header == "kind,p,alpha,beta,value,error,converged"
        assert float(values.split(",")[4]) == pytest.approx(1.0, abs=1e-13)

    def test_cosine_pole(self):
        code, _, err = run("constants", "--cosine", "2", "0")
        assert code == EXIT_VALIDATION
        assert "Gamma pole" in err
        assert "Γ(β+1−p/2)" in err

    def test_bessel(self):
        code, out, _ = run("constants", "--bessel", "1", "3", "-1", "--rel-tol", "1e-8")
        assert code == EXIT_OK
        fields = out.strip().split("\n")[1].split(",")
        assert fields[0] == "bessel"
        assert float(fields[4]) > 0
        assert float(fields[5]) >= 0

    def test_bessel_divergence(self):
        code, _, err = run("constants", "--bessel", "1", "2", "0", "--format", "jsonl")
        assert code == EXIT_VALIDATION
        assert "diverges at infinity" in err

    def test_airy_divergence(self):
        code, _, err = run("constants", "--airy", "2")
        assert code == EXIT_VALIDATION
        assert "p > 2" in err


class TestFigureCommand:
    def test_unknown_figure(self):
        code, _, err = run("figure", "w")
        assert code == EXIT_VALIDATION
        assert "Unknown figure 'w'" in err

    def test_gnuplot_columns(self, tmp_path):
        path = tmp_path / "fig_n.dat"
        code, out, _ = run("figure", "n", "--plot-format", "gnuplot", "--rel-tol", "1e-8", "--output", str(path))
        assert code == EXIT_OK
        assert out == ""
        lines = path.read_text(encoding="utf-8").splitlines()
        assert "# n R_0.75 R_2 R_3.5" in lines
        data = [line.split() for line in lines if not line.startswith("#")]
        assert [float(row[0]) for row in data] == [float(n) for n in range(10, 51, 5)]
        assert all(len(row) == 4 for row in data)

    def test_csv_columns_to_stdout(self):
        code, out, _ = run("figure", "p2", "--rel-tol", "1e-8")
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert lines[0] == "p,R"
        assert len(lines) == 1 + 18


class TestSweepCommand:
    def write(self, tmp_path, text):
        path = tmp_path / "grid.spec"
        path.write_text(text, encoding="utf-8")
        return str(path)

    def test_shannon_rows(self, tmp_path):
        spec = self.write(tmp_path, "n = 1..3\nl = 0\np = 1\nrel_tol = 1e-8\n")
        code, out, _ = run("sweep", spec)
        assert code == EXIT_OK
        rows = records(out)
        assert [r.n for r in rows] == [1, 2, 3]
        assert all(r.kind == "shannon" for r in rows)
        assert all("p = 1 evaluated as Shannon entropy" in r.note for r in rows)

    def test_shannon_kind_one_row_per_state(self, tmp_path):
        spec = self.write(tmp_path, "n = 2, 3\np = 0.5, 2, 3\nkind = shannon\nrel_tol = 1e-8\n")
        code, out, _ = run("sweep", spec)
        assert code == EXIT_OK
        rows = records(out)
        assert [r.n for r in rows] == [2, 3]
        assert all(r.p is None for r in rows)

    def test_jsonl_stream(self, tmp_path):
        spec = self.write(tmp_path, "n = 2, 3\np = 0.5\nkind = tsallis\nrel_tol = 1e-8\n")
        code, out, _ = run("sweep", spec, "--format", "jsonl")
        assert code == EXIT_OK
        assert [r.kind for r in records(out, OutputFormat.JSONL)] == ["tsallis", "tsallis"]

    def test_malformed_spec(self, tmp_path):
        spec = self.write(tmp_path, "n = 2\np = two\n")
        code, out, err = run("sweep", spec)
        assert code == EXIT_VALIDATION
        assert "line 2" in err
        assert "field 'p'" in err
        assert out == ""

    def test_failed_rows_set_exit_code(self, tmp_path):
        spec = self.write(tmp_path, "n = 1, 3\np = 2\nmethod = asympt\n")
        code, out, _ = run("sweep", spec)
        assert code == EXIT_VALIDATION
        rows = records(out)
        assert rows[0].value is None
        assert rows[1].value is not None
