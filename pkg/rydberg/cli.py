"""Command-line interface.

    python -m rydberg entropy --n 50 --p 2 --method both
    python -m rydberg constants --bessel 1 3 -1
    python -m rydberg figure z --plot-format gnuplot
    python -m rydberg sweep convergence.spec --jobs 4

Records go to standard output, logs to standard error. Exit codes: 0 on
success, 2 on a validation error, 3 when a quadrature did not converge.
"""
import argparse
import json
import logging
import sys
from typing import IO, List, Optional

from pydantic import ValidationError

from rydberg import __version__
from rydberg.config import LOG_FORMAT, settings
from rydberg.exceptions import EntropyException
from rydberg.schemas.entropy import ConstantKind, EntropyKind, RegimeConstant
from rydberg.schemas.output import OutputFormat, OutputRecord
from rydberg.schemas.state import QuantumState
from rydberg.schemas.sweep import MethodSelector
from rydberg.services import bench
from rydberg.services.entropy_service import EntropyService
from rydberg.services.output_writer import RecordWriter, format_number, write_columns
from rydberg.services.sweep_spec_parser import load_sweep_spec

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NOT_CONVERGED = 3

CONSTANT_FIELDS = ("kind", "p", "alpha", "beta", "value", "error", "converged")


def configure_logging(level: str) -> None:
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT, stream=sys.stderr, force=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rydberg",
        description="Exact and asymptotic Rényi, Shannon and Tsallis entropies of hydrogenic states",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        type=str.upper, help="Override RYDBERG_LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True)

    entropy = commands.add_parser("entropy", help="Entropies of one state")
    entropy.add_argument("--n", type=int, required=True, help="Principal quantum number")
    entropy.add_argument("--l", type=int, default=0, help="Orbital quantum number")
    entropy.add_argument("--m", type=int, default=0, help="Magnetic quantum number")
    entropy.add_argument("--Z", type=float, default=1.0, help="Nuclear charge")
    entropy.add_argument("--p", type=float, action="append", help="Order (repeatable)")
    entropy.add_argument("--kind", choices=[k.value for k in EntropyKind], default=EntropyKind.RENYI.value)
    entropy.add_argument("--method", choices=[m.value for m in MethodSelector], default=MethodSelector.EXACT.value)
    entropy.add_argument("--form", choices=["auto", "general", "low_l"], default="auto",
                         help="Asymptotic radial form")
    _add_common(entropy)

    constants = commands.add_parser("constants", help="Regime constants")
    group = constants.add_mutually_exclusive_group(required=True)
    group.add_argument("--cosine", nargs=2, type=float, metavar=("P", "BETA"))
    group.add_argument("--bessel", nargs=3, type=float, metavar=("ALPHA", "P", "BETA"))
    group.add_argument("--airy", nargs=1, type=float, metavar="P")
    _add_common(constants)

    figure = commands.add_parser("figure", help="Figure data columns")
    figure.add_argument("figure_id", help="One of n, p1, p2, z")
    figure.add_argument("--method", choices=[m.value for m in MethodSelector],
                        default=MethodSelector.ASYMPTOTIC.value)
    figure.add_argument("--plot-format", choices=["csv", "gnuplot"], default="csv")
    figure.add_argument("--output", help="Write to this file instead of standard output")
    figure.add_argument("--jobs", type=int, default=None, help="Worker processes")
    figure.add_argument("--rel-tol", type=float, default=None, help="Relative quadrature tolerance")

    sweep = commands.add_parser("sweep", help="Run a sweep spec file")
    sweep.add_argument("spec", help="Path of the key = value spec file")
    sweep.add_argument("--jobs", type=int, default=None, help="Worker processes")
    _add_common(sweep)
    return parser


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rel-tol", type=float, default=None, help="Relative quadrature tolerance")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.CSV.value)


def cmd_entropy(args: argparse.Namespace, out: IO[str]) -> int:
    state = QuantumState.build(args.n, args.l, args.m, args.Z)
    service = EntropyService(settings.quadrature_config(rel_tol=args.rel_tol), form=args.form)
    results = service.evaluate_many(state, EntropyKind(args.kind), args.p or [], MethodSelector(args.method))
    RecordWriter(out, OutputFormat(args.format)).write_all(
        OutputRecord.from_result(state, result) for result in results
    )
    return EXIT_OK if all(result.converged for result in results) else EXIT_NOT_CONVERGED


def cmd_constants(args: argparse.Namespace, out: IO[str]) -> int:
    service = EntropyService(settings.quadrature_config(rel_tol=args.rel_tol))
    if args.cosine:
        p, beta = args.cosine
        constant = service.constant(ConstantKind.COSINE, p, beta=beta)
    elif args.bessel:
        alpha, p, beta = args.bessel
        constant = service.constant(ConstantKind.BESSEL, p, alpha=alpha, beta=beta)
    else:
        constant = service.constant(ConstantKind.AIRY, args.airy[0])
    _write_constant(constant, out, OutputFormat(args.format))
    return EXIT_OK if constant.converged else EXIT_NOT_CONVERGED


def _write_constant(constant: RegimeConstant, out: IO[str], output_format: OutputFormat) -> None:
    values = {
        "kind": constant.kind.value,
        "p": constant.p,
        "alpha": constant.alpha,
        "beta": constant.beta,
        "value": constant.value,
        "error": constant.error_estimate,
        "converged": constant.converged,
    }
    if output_format == OutputFormat.JSONL:
        out.write(json.dumps(values) + "\n")
        return
    out.write(",".join(CONSTANT_FIELDS) + "\n")
    cells = [format_number(v) if isinstance(v, float) else ("" if v is None else str(v).lower())
             for v in values.values()]
    out.write(",".join(cells) + "\n")


def cmd_figure(args: argparse.Namespace, out: IO[str]) -> int:
    cfg = settings.quadrature_config(rel_tol=args.rel_tol)
    table = bench.figure_data(args.figure_id, MethodSelector(args.method), cfg, args.jobs)
    header, rows = bench.figure_columns(table, args.figure_id)
    comments = [table.title or "", f"rydberg {table.provenance.version}",
                f"config {table.provenance.config_hash}"]
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as stream:
            write_columns(header, rows, stream, args.plot_format, comments)
        logger.info(f"Wrote figure '{args.figure_id}' to {args.output}")
    else:
        write_columns(header, rows, out, args.plot_format, comments)
    return _table_exit_code(table.rows)


def cmd_sweep(args: argparse.Namespace, out: IO[str]) -> int:
    spec = load_sweep_spec(args.spec, settings.quadrature_config(rel_tol=args.rel_tol))
    writer = RecordWriter(out, OutputFormat(args.format))
    rows = []
    for row in bench.iter_sweep(spec, args.jobs):
        writer.write(OutputRecord(**row.model_dump(exclude={"wall_time", "converged"})))
        rows.append(row)
    writer.close()
    return _table_exit_code(rows)


def _table_exit_code(rows) -> int:
    if any(row.value is None for row in rows):
        return EXIT_VALIDATION
    if not all(row.converged for row in rows):
        return EXIT_NOT_CONVERGED
    return EXIT_OK


COMMANDS = {
    "entropy": cmd_entropy,
    "constants": cmd_constants,
    "figure": cmd_figure,
    "sweep": cmd_sweep,
}


def main(argv: Optional[List[str]] = None, out: Optional[IO[str]] = None, err: Optional[IO[str]] = None) -> int:
    """Run the CLI and return its exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level or settings.log_level)
    try:
        return COMMANDS[args.command](args, out)
    except EntropyException as e:
        logger.debug(f"{args.command} failed with {e.error_code}")
        err.write(f"error: {e.message}\n")
        return e.exit_code
    except ValidationError as e:
        err.write(f"error: {e.errors()[0]['msg']}\n")
        return EXIT_VALIDATION
