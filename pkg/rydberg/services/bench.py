"""Sweeps, convergence reports and figure data.

Grid points are independent: each row is computed by a pure call into the
entropy service, in a worker process when jobs > 1, and rows are gathered in
grid order. A failing point is recorded in its row and never aborts a sweep.
"""
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from rydberg.config import settings
from rydberg.exceptions import DomainError, EmptyGridError, EntropyException, UnknownFigureError
from rydberg.schemas.entropy import EntropyKind, Method
from rydberg.schemas.output import OutputRecord, SweepRow
from rydberg.schemas.quadrature import QuadratureConfig
from rydberg.schemas.state import LaguerreNormSpec, QuantumState
from rydberg.schemas.sweep import (
    ConvergenceRow,
    ConvergenceSeries,
    MethodSelector,
    MonotonicityCheck,
    Provenance,
    SweepSpec,
    SweepTable,
    TransitionSequence,
)
from rydberg.services.entropy_service import EntropyService, methods_for
from rydberg.services.hydrogenic import laguerre_norm

logger = logging.getLogger(__name__)

# Figure grids: n, p and Z sweeps of the total Rényi entropy
FIGURE_GRIDS: Dict[str, dict] = {
    "n": {"n": list(range(10, 51, 5)), "p": [0.75, 2.0, 3.5]},
    "p1": {"n": [50], "p": [k / 10 for k in range(1, 20) if k != 10]},
    "p2": {"n": [50], "p": [float(p) for p in range(3, 21)]},
    "z": {"n": [50], "p": [1.5, 2.0, 4.0], "Z": [float(z) for z in range(1, 104)]},
}

FIGURE_TITLES = {
    "n": "Renyi entropy of ns states versus n",
    "p1": "Renyi entropy versus p on (0, 2) at n = 50",
    "p2": "Renyi entropy versus integer p in [3, 20] at n = 50",
    "z": "Renyi entropy versus Z at n = 50",
}

# (axis, trend) asserted for each figure
FIGURE_TRENDS = {
    "n": ("n", "increasing"),
    "p1": ("p", "nonincreasing"),
    "p2": ("p", "nonincreasing"),
    "z": ("Z", "decreasing"),
}

DEFAULT_TRENDS = {"n": "increasing", "p": "nonincreasing", "Z": "decreasing"}

Task = Tuple[QuantumState, Optional[float], EntropyKind, Method, QuadratureConfig]


def _row_config(state: QuantumState, method: Method, cfg: QuadratureConfig) -> QuadratureConfig:
    """Exact rows at large n run at the relaxed tolerance."""
    if method == Method.EXACT and state.n >= settings.relaxed_from_n and cfg.rel_tol < settings.relaxed_rel_tol:
        return cfg.model_copy(update={"rel_tol": settings.relaxed_rel_tol})
    return cfg


def _evaluate_row(task: Task) -> SweepRow:
    """Compute one sweep row; errors are recorded in the row."""
    state, p, kind, method, cfg = task
    started = time.perf_counter()
    try:
        result = EntropyService(cfg).evaluate(state, kind, p, method)
    except (EntropyException, ValueError, ArithmeticError) as e:
        logger.warning(f"Sweep point {state} p={p} ({method.value}) failed: {e}")
        return SweepRow(
            n=state.n, l=state.l, m=state.m, Z=state.Z, p=p,
            kind=kind.value, method=method.value, regime="n/a",
            note=f"failed: {e}",
            wall_time=time.perf_counter() - started,
            converged=False,
        )
    record = OutputRecord.from_result(state, result)
    return SweepRow(
        **record.model_dump(),
        wall_time=time.perf_counter() - started,
        converged=result.converged,
    )


def _run_tasks(tasks: List[Task], jobs: int) -> Iterator[SweepRow]:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            yield from executor.map(_evaluate_row, tasks)
    else:
        for task in tasks:
            yield _evaluate_row(task)


def _tasks(points: Iterable[Tuple[QuantumState, Optional[float]]], kind: EntropyKind,
           methods: Sequence[Method], cfg: QuadratureConfig) -> List[Task]:
    return [
        (state, p, kind, method, _row_config(state, method, cfg))
        for state, p in points
        for method in methods
    ]


def _sweep_tasks(spec: SweepSpec) -> List[Task]:
    for axis in ("n", "l", "m", "Z", "p"):
        if not getattr(spec, axis):
            raise EmptyGridError(axis)
    points = list(spec.points())
    if not points:
        raise EmptyGridError()
    return _tasks(points, spec.kind, methods_for(spec.method), spec.cfg)


def iter_sweep(spec: SweepSpec, jobs: Optional[int] = None) -> Iterator[SweepRow]:
    """Yield the rows of a sweep in grid order as they are produced.

    Raises:
        EmptyGridError: If the grid has no valid point
    """
    tasks = _sweep_tasks(spec)
    jobs = jobs or settings.jobs
    logger.info(f"Starting sweep of {len(tasks)} rows with {jobs} job(s)")
    started = time.perf_counter()
    failed = 0
    for row in _run_tasks(tasks, jobs):
        failed += row.value is None
        yield row
    logger.info(f"Sweep finished in {time.perf_counter() - started:.2f}s ({failed} failed rows)")


def run_sweep(spec: SweepSpec, jobs: Optional[int] = None, title: Optional[str] = None) -> SweepTable:
    """Evaluate every grid point of a sweep with every selected method.

    Args:
        spec: Sweep grid, kind, method selector and quadrature configuration
        jobs: Worker processes (defaults to settings.jobs)
        title: Optional table title

    Returns:
        SweepTable with one row per grid point and method, in grid order

    Raises:
        EmptyGridError: If the grid has no valid point
    """
    rows = list(iter_sweep(spec, jobs))
    return SweepTable(rows=rows, provenance=Provenance(config_hash=spec.grid_hash()), title=title)


def convergence_from_table(table: SweepTable) -> List[ConvergenceSeries]:
    """Pair exact and asymptotic rows and follow |exact − asympt| along n.

    Each series also carries the least-squares slope of ln(error) against ln n
    (None with fewer than two positive errors).
    """
    exact: Dict[tuple, float] = {}
    asymptotic: Dict[tuple, float] = {}
    for row in table.rows:
        if row.value is None:
            continue
        key = (row.l, row.m, row.Z, row.p, row.kind, row.n)
        (exact if row.method == Method.EXACT.value else asymptotic)[key] = row.value

    grouped: Dict[tuple, List[ConvergenceRow]] = {}
    for key in exact:
        if key in asymptotic:
            grouped.setdefault(key[:5], []).append(ConvergenceRow(n=key[5], error=abs(exact[key] - asymptotic[key])))

    report = []
    for (l, m, Z, p, kind), rows in grouped.items():
        rows.sort(key=lambda row: row.n)
        for previous, row in zip(rows, rows[1:]):
            row.ratio = row.error / previous.error if previous.error > 0 else None
        report.append(ConvergenceSeries(l=l, m=m, Z=Z, p=p, kind=kind, rows=rows, slope=_decay_slope(rows)))
    return report


def _decay_slope(rows: List[ConvergenceRow]) -> Optional[float]:
    usable = [(row.n, row.error) for row in rows if row.error > 0]
    if len(usable) < 2:
        return None
    n, error = np.array(usable, dtype=float).T
    slope, _ = np.polyfit(np.log(n), np.log(error), 1)
    return float(slope)


def convergence_report(spec: SweepSpec, jobs: Optional[int] = None) -> List[ConvergenceSeries]:
    """Run a sweep with both methods and report the asymptotic error sequences.

    Raises:
        DomainError: If the sweep does not select both methods
    """
    if spec.method != MethodSelector.BOTH:
        raise DomainError("a convergence report needs method = both", field="method")
    return convergence_from_table(run_sweep(spec, jobs))


def _figure_id(figure_id: str) -> str:
    key = figure_id.lower()
    if key not in FIGURE_GRIDS:
        raise UnknownFigureError(figure_id)
    return key


def figure_spec(figure_id: str, method: MethodSelector = MethodSelector.ASYMPTOTIC,
                cfg: Optional[QuadratureConfig] = None) -> SweepSpec:
    """Sweep grid behind a figure (n, p1, p2 or z)."""
    key = _figure_id(figure_id)
    return SweepSpec(
        **FIGURE_GRIDS[key],
        kind=EntropyKind.RENYI,
        method=method,
        cfg=cfg or settings.quadrature_config(),
    )


def figure_data(figure_id: str, method: MethodSelector = MethodSelector.ASYMPTOTIC,
                cfg: Optional[QuadratureConfig] = None, jobs: Optional[int] = None) -> SweepTable:
    """Total Rényi entropies on the grid of one figure.

    Raises:
        UnknownFigureError: If figure_id is not one of n, p1, p2, z
    """
    key = _figure_id(figure_id)
    logger.info(f"Generating figure data '{key}' ({method.value})")
    return run_sweep(figure_spec(key, method, cfg), jobs, title=FIGURE_TITLES[key])


def spot_check(figure_id: str, points: int = 5, cfg: Optional[QuadratureConfig] = None,
               jobs: Optional[int] = None) -> SweepTable:
    """Exact and asymptotic values at evenly spaced points of a figure grid."""
    spec = figure_spec(figure_id, MethodSelector.BOTH, cfg)
    grid = list(spec.points())
    chosen = sorted({int(i) for i in np.linspace(0, len(grid) - 1, min(points, len(grid))).round()})
    tasks = _tasks([grid[i] for i in chosen], spec.kind, methods_for(MethodSelector.BOTH), spec.cfg)
    return SweepTable(
        rows=list(_run_tasks(tasks, jobs or settings.jobs)),
        provenance=Provenance(config_hash=spec.grid_hash()),
        title=f"{FIGURE_TITLES[_figure_id(figure_id)]} (spot check)",
    )


def transition_sequence(ns: Sequence[int], cfg: Optional[QuadratureConfig] = None) -> TransitionSequence:
    """N_{n,0}(2)·π²(n−1)/ln(n−1) for each n, with successive ratios.

    Raises:
        DomainError: If some n < 3 (ln(n−1) must be positive)
    """
    values = []
    converged = True
    for n in ns:
        if n < 3:
            raise DomainError("must be ≥ 3", field="n")
        state = QuantumState.build(n, 0)
        norm = laguerre_norm(LaguerreNormSpec.hydrogenic(state, 2.0), cfg)
        converged = converged and norm.converged
        k = n - 1
        values.append(norm.value * math.pi ** 2 * k / math.log(k))
    ratios = [later / earlier for earlier, later in zip(values, values[1:])]
    return TransitionSequence(n=list(ns), values=values, ratios=ratios, converged=converged)


def _axis_value(row: SweepRow, axis: str) -> float:
    return float(getattr(row, axis))


def monotonicity_report(table: SweepTable, axis: str, trend: Optional[str] = None) -> List[MonotonicityCheck]:
    """Check a trend along one axis for every series of a table.

    Rows are grouped by method and by the coordinates other than the axis;
    each group is ordered along the axis and checked.

    Args:
        table: Sweep table
        axis: "n", "p" or "Z"
        trend: "increasing", "decreasing" (both strict) or "nonincreasing";
            defaults to the expected trend of the axis

    Returns:
        One MonotonicityCheck per series; violations list the positions where
        the trend breaks
    """
    if axis not in DEFAULT_TRENDS:
        raise DomainError(f"must be one of {', '.join(DEFAULT_TRENDS)}", field="axis")
    trend = trend or DEFAULT_TRENDS[axis]
    comparisons = {
        "increasing": lambda a, b: b > a,
        "decreasing": lambda a, b: b < a,
        "nonincreasing": lambda a, b: b <= a,
    }
    if trend not in comparisons:
        raise DomainError(f"must be one of {', '.join(comparisons)}", field="trend")

    coordinates = [name for name in ("n", "l", "m", "Z", "p") if name != axis]
    groups: Dict[tuple, List[SweepRow]] = {}
    for row in table.rows:
        if row.value is None:
            continue
        key = (row.method,) + tuple(getattr(row, name) for name in coordinates)
        groups.setdefault(key, []).append(row)

    checks = []
    for key, rows in groups.items():
        rows.sort(key=lambda row: _axis_value(row, axis))
        values = [row.value for row in rows]
        violations = [i + 1 for i, (a, b) in enumerate(zip(values, values[1:])) if not comparisons[trend](a, b)]
        label = ", ".join(f"{name}={value}" for name, value in zip(("method",) + tuple(coordinates), key))
        checks.append(MonotonicityCheck(series=label, axis=axis, trend=trend,
                                        holds=not violations, violations=violations))
    return checks


def figure_columns(table: SweepTable, figure_id: str) -> Tuple[List[str], List[List[float]]]:
    """Arrange figure rows as columns: the axis, then one column per series.

    n and Z figures get one column per p; p figures a single entropy column.
    With both methods the columns are split by method.
    """
    key = _figure_id(figure_id)
    axis = FIGURE_TRENDS[key][0]
    split = len({row.method for row in table.rows}) > 1

    columns: Dict[tuple, Dict[float, Optional[float]]] = {}
    for row in table.rows:
        series = (row.method,) if axis == "p" else (row.p, row.method)
        columns.setdefault(series, {})[_axis_value(row, axis)] = row.value

    header = [axis]
    for series in columns:
        name = "R" if axis == "p" else f"R_{series[0]:g}"
        header.append(f"{name}_{series[-1]}" if split else name)
    x_values = sorted({x for values in columns.values() for x in values})
    rows = [[x] + [values.get(x) for values in columns.values()] for x in x_values]
    return header, rows
