"""Adaptive Gauss-Legendre quadrature for the entropy integrands.

Integrands are vectorised callables: they receive a 1-D numpy array of nodes
and return the integrand values at those nodes.

Every panel is integrated with the configured Gauss rule and with the rule of
half the order; their difference is the panel's error estimate. Refinement is
global: the panels with the largest estimates are split until the summed
estimate meets max(rel_tol·|value|, abs_tol). Panel values are summed in
interval order with math.fsum, so results are bit-reproducible for a config.
"""
import heapq
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import eigh_tridiagonal

from rydberg.exceptions import DomainError
from rydberg.schemas.quadrature import IntegralResult, QuadratureConfig

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]
BreakpointSource = Callable[[float, float], Sequence[float]]


@lru_cache(maxsize=64)
def _gauss_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    if order == 1:
        nodes, weights = np.zeros(1), np.full(1, 2.0)
    else:
        # Golub-Welsch: Legendre Jacobi matrix has zero diagonal, off-diagonal j/√(4j²−1)
        j = np.arange(1, order)
        off_diagonal = j / np.sqrt(4.0 * j * j - 1.0)
        nodes, vectors = eigh_tridiagonal(np.zeros(order), off_diagonal)
        weights = 2.0 * vectors[0, :] ** 2
        # Symmetrise to remove eigen-solver asymmetry
        nodes = 0.5 * (nodes - nodes[::-1])
        weights = 0.5 * (weights + weights[::-1])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_nodes(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [−1, 1].

    Args:
        order: Number of points, ≥ 2

    Returns:
        Tuple (nodes, weights), nodes increasing; the rule is exact for
        polynomials of degree ≤ 2·order − 1

    Raises:
        DomainError: If order < 2
    """
    if order < 2:
        raise DomainError("Gauss rules need at least 2 points", field="order")
    return _gauss_rule(order)


@dataclass(frozen=True)
class TailModel:
    """Analytic closure of a slowly decaying oscillatory tail.

    Once a tail panel edge T reaches `start`, ∫_T^∞ f is taken as remainder(T)
    with uncertainty |remainder(T)| · relative_uncertainty(T).
    """

    start: float
    remainder: Callable[[float], float]
    relative_uncertainty: Callable[[float], float]


def _evaluate_panels(f: Integrand, lo: np.ndarray, hi: np.ndarray, cfg: QuadratureConfig):
    """Full-order values and half-order error estimates of a batch of panels."""
    full_nodes, full_weights = _gauss_rule(cfg.panel_order)
    half_nodes, half_weights = _gauss_rule(max(cfg.panel_order // 2, 1))
    center = 0.5 * (lo + hi)
    half_width = 0.5 * (hi - lo)
    x_full = center[:, None] + half_width[:, None] * full_nodes[None, :]
    x_half = center[:, None] + half_width[:, None] * half_nodes[None, :]
    fx = np.asarray(f(np.concatenate((x_full.ravel(), x_half.ravel()))), dtype=float)
    split = x_full.size
    f_full = fx[:split].reshape(x_full.shape)
    f_half = fx[split:].reshape(x_half.shape)
    values = half_width * (f_full @ full_weights)
    errors = np.abs(values - half_width * (f_half @ half_weights))
    bad = ~np.isfinite(values) | ~np.isfinite(errors)
    if np.any(bad):
        values = np.where(bad, 0.0, values)
        errors = np.where(bad, np.inf, errors)
    return values, errors


def _split_points(a: np.ndarray, b: np.ndarray, anchors: frozenset) -> np.ndarray:
    """Bisect, or cut at a quarter width toward an edge of the initial partition."""
    at_a = np.fromiter((x in anchors for x in a), dtype=bool, count=a.size)
    at_b = np.fromiter((x in anchors for x in b), dtype=bool, count=b.size)
    quarter = 0.25 * (b - a)
    return np.where(at_a & ~at_b, a + quarter, np.where(at_b & ~at_a, b - quarter, 0.5 * (a + b)))


def _adaptive(f: Integrand, edges: Sequence[float], cfg: QuadratureConfig) -> IntegralResult:
    """Globally adaptive refinement starting from the partition `edges`.

    A panel sharing exactly one edge with the initial partition is cut at a
    quarter of its width toward that edge, which grades the mesh geometrically
    onto endpoint singularities and onto the zeros of |f|^{2p}-type integrands.
    Refinement stops early once panels frozen at max_depth alone exceed the
    tolerance.
    """
    edges = np.asarray(edges, dtype=float)
    anchors = frozenset(float(x) for x in edges)
    lo, hi = edges[:-1], edges[1:]
    values, errors = _evaluate_panels(f, lo, hi, cfg)

    # Heap entries: (−error, sequence, lo, hi, value, depth)
    heap: List[tuple] = []
    finished: List[tuple] = []
    for seq, (a, b, v, e) in enumerate(zip(lo, hi, values, errors)):
        heapq.heappush(heap, (-e, seq, float(a), float(b), v, 0))
    sequence = len(heap)
    total_value = math.fsum(values)
    total_error = math.fsum(errors)

    while heap and total_error > cfg.tolerance(total_value):
        if len(heap) + len(finished) >= cfg.max_panels:
            break
        batch = max(1, min(64, len(heap) // 10))
        chosen = []
        while heap and len(chosen) < batch:
            entry = heapq.heappop(heap)
            if entry[5] >= cfg.max_depth:
                finished.append(entry)
                continue
            chosen.append(entry)
        if math.fsum(-entry[0] for entry in finished) > cfg.tolerance(total_value):
            heap.extend(chosen)
            break
        if not chosen:
            break
        a = np.array([c[2] for c in chosen])
        b = np.array([c[3] for c in chosen])
        cut = _split_points(a, b, anchors)
        child_lo = np.concatenate((a, cut))
        child_hi = np.concatenate((cut, b))
        child_values, child_errors = _evaluate_panels(f, child_lo, child_hi, cfg)
        depths = [c[5] + 1 for c in chosen] * 2
        for cl, ch, cv, ce, depth in zip(child_lo, child_hi, child_values, child_errors, depths):
            heapq.heappush(heap, (-ce, sequence, float(cl), float(ch), cv, depth))
            sequence += 1
        panels = heap + finished
        total_value = math.fsum(entry[4] for entry in panels)
        total_error = math.fsum(-entry[0] for entry in panels)

    panels = sorted(heap + finished, key=lambda entry: entry[2])
    value = math.fsum(entry[4] for entry in panels)
    error = math.fsum(-entry[0] for entry in panels)
    converged = bool(np.isfinite(error)) and error <= cfg.tolerance(value)
    if not converged:
        logger.debug(f"Quadrature on [{edges[0]:g}, {edges[-1]:g}] stopped with error {error:.3e} "
                     f"after {len(panels)} panels")
    return IntegralResult(
        value=value,
        abs_error_estimate=error if np.isfinite(error) else float("inf"),
        panels_used=len(panels),
        converged=converged,
    )


def integrate(f: Integrand, a: float, b: float, cfg: Optional[QuadratureConfig] = None) -> IntegralResult:
    """Integrate f over [a, b].

    Args:
        f: Vectorised integrand, finite on (a, b)
        a: Lower limit
        b: Upper limit, b > a
        cfg: Quadrature configuration (defaults when omitted)

    Returns:
        IntegralResult; converged is False when max_depth or max_panels ran out
    """
    return integrate_zero_split(f, (), a, b, cfg)


def integrate_zero_split(
    f: Integrand,
    breakpoints: Sequence[float],
    a: float,
    b: float,
    cfg: Optional[QuadratureConfig] = None,
) -> IntegralResult:
    """Integrate f over [a, b] with the initial partition at `breakpoints`.

    Breakpoints are the sign-structure points of the integrand (polynomial or
    Bessel zeros); each cell then holds at most one half-oscillation. The cells
    share one global tolerance and the result is their sum.

    Raises:
        DomainError: If a ≥ b or the breakpoints are unsorted or outside (a, b)
    """
    cfg = cfg or QuadratureConfig()
    if not a < b:
        raise DomainError(f"integration limits must satisfy a < b, got [{a}, {b}]")
    points = np.asarray(breakpoints, dtype=float)
    if points.size:
        if np.any(np.diff(points) <= 0):
            raise DomainError("breakpoints must be strictly increasing", field="breakpoints")
        if points[0] <= a or points[-1] >= b:
            raise DomainError("breakpoints must lie inside (a, b)", field="breakpoints")
    return _adaptive(f, np.concatenate(([a], points, [b])), cfg)


def integrate_tail(
    f: Integrand,
    a: float,
    cfg: Optional[QuadratureConfig] = None,
    breakpoints: Optional[BreakpointSource] = None,
    tail_model: Optional[TailModel] = None,
) -> IntegralResult:
    """Integrate f over [a, ∞) by geometrically growing panels.

    Panel widths start at max(a, 1)·(tail_growth − 1) and grow by tail_growth,
    so for a > 0 the edges are a, a·g, a·g², … The integration stops once two
    consecutive panels each contribute less than tail_stop relative to the
    accumulated value, or once a panel edge past tail_model.start admits the
    analytic remainder: its uncertainty plus the quadrature errors so far must
    fit the tolerance. Until then panels keep growing.

    Args:
        f: Vectorised integrand, absolutely integrable on [a, ∞)
        a: Lower limit, a ≥ 0
        cfg: Quadrature configuration
        breakpoints: Callable (lo, hi) -> zeros of the oscillation inside (lo, hi);
            each panel is split at them and its upper edge snapped onto the last one
        tail_model: Optional analytic closure of the far tail

    Returns:
        IntegralResult; converged is False when max_depth panels did not
        exhaust the tail. A pending analytic remainder is still added then
    """
    cfg = cfg or QuadratureConfig()
    if a < 0:
        raise DomainError("tail integrals start at a ≥ 0", field="a")
    lo = float(a)
    width = max(lo, 1.0) * (cfg.tail_growth - 1.0)
    contributions: List[float] = []
    errors: List[float] = []
    panels_used = 0
    converged = True
    small_streak = 0
    closing: Optional[Tuple[float, float]] = None

    for _ in range(cfg.max_depth):
        hi = lo + width
        inner: List[float] = []
        if breakpoints is not None:
            inner = [float(z) for z in breakpoints(lo, hi) if lo < z < hi]
            if inner:
                hi = inner.pop()
        result = integrate_zero_split(f, inner, lo, hi, cfg)
        contributions.append(result.value)
        errors.append(result.abs_error_estimate)
        panels_used += result.panels_used
        converged = converged and result.converged
        accumulated = math.fsum(contributions)

        if tail_model is not None and hi >= tail_model.start:
            remainder = tail_model.remainder(hi)
            closure_error = abs(remainder) * tail_model.relative_uncertainty(hi)
            if math.fsum(errors) + closure_error <= cfg.tolerance(accumulated + remainder):
                contributions.append(remainder)
                errors.append(closure_error)
                logger.debug(f"Tail closed analytically at {hi:g} with remainder {remainder:.6e}")
                return _tail_result(contributions, errors, panels_used, converged, cfg)
            closing = (remainder, closure_error)

        if abs(result.value) <= cfg.tail_stop * abs(accumulated):
            small_streak += 1
        else:
            small_streak = 0
        if small_streak >= 2:
            return _tail_result(contributions, errors, panels_used, converged, cfg)
        lo = hi
        width *= cfg.tail_growth

    if closing is not None:
        contributions.append(closing[0])
        errors.append(closing[1])
    logger.debug(f"Tail from {a:g} still contributing after {cfg.max_depth} panels")
    result = _tail_result(contributions, errors, panels_used, converged, cfg)
    return result.model_copy(update={"converged": False})


def _tail_result(contributions, errors, panels_used, converged, cfg) -> IntegralResult:
    value = math.fsum(contributions)
    error = math.fsum(errors)
    return IntegralResult(
        value=value,
        abs_error_estimate=error,
        panels_used=panels_used,
        converged=converged and error <= cfg.tolerance(value),
    )


def combine(*results: IntegralResult) -> IntegralResult:
    """Sum of independent integrals over adjacent intervals; errors add."""
    value = math.fsum(r.value for r in results)
    return IntegralResult(
        value=value,
        abs_error_estimate=math.fsum(r.abs_error_estimate for r in results),
        panels_used=sum(r.panels_used for r in results),
        converged=all(r.converged for r in results),
    )
