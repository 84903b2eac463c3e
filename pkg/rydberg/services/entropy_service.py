"""Entropy service dispatching on entropy kind and evaluation method."""
import logging
from typing import List, Optional, Sequence

from rydberg.exceptions import ConvergenceError, DomainError
from rydberg.schemas.entropy import ConstantKind, EntropyKind, EntropyResult, Method, RegimeConstant
from rydberg.schemas.quadrature import QuadratureConfig
from rydberg.schemas.state import QuantumState
from rydberg.schemas.sweep import MethodSelector
from rydberg.services import asympt, hydrogenic

logger = logging.getLogger(__name__)

SHANNON_ROUTE_NOTE = "p = 1 evaluated as Shannon entropy"


class EntropyService:
    """
    Entry point shared by the CLI, the HTTP API and the sweep workers.

    Routes a (kind, p, method) request to the exact or asymptotic operation and
    applies the p = 1 convention: Rényi and Tsallis requests at p = 1 are
    served by the Shannon entropy and carry an explanatory note. A strict
    service refuses non-converged results instead of flagging them.
    """

    def __init__(self, cfg: Optional[QuadratureConfig] = None, form: str = "auto", strict: bool = False):
        """
        Initialize the service.

        Args:
            cfg: Quadrature configuration for every integral
            form: Asymptotic radial form passed to the asymptotic operations
            strict: Raise ConvergenceError instead of returning a flagged result
        """
        self.cfg = cfg or QuadratureConfig()
        self.form = form
        self.strict = strict

    def evaluate(self, state: QuantumState, kind: EntropyKind, p: Optional[float],
                 method: Method) -> EntropyResult:
        """Compute one entropy of the total density.

        Args:
            state: Hydrogenic state
            kind: Rényi, Shannon or Tsallis
            p: Order (ignored for Shannon)
            method: Exact quadrature or dominant asymptotic term

        Returns:
            EntropyResult; a routed p = 1 request comes back as Shannon with a note

        Raises:
            DomainError: If p is missing or not positive for Rényi/Tsallis
            ConvergenceError: On a strict service, if the result did not converge
        """
        result = self._dispatch(state, kind, p, method)
        if self.strict and not result.converged:
            raise ConvergenceError(
                f"{result.kind.value} entropy of {state} at p={result.p} did not converge",
                error_estimate=result.error_estimate,
            )
        return result

    def _dispatch(self, state: QuantumState, kind: EntropyKind, p: Optional[float],
                  method: Method) -> EntropyResult:
        if kind != EntropyKind.SHANNON:
            if p is None:
                raise DomainError("required for Rényi and Tsallis entropies", field="p")
            if not p > 0:
                raise DomainError("must be > 0", field="p")
            if p == 1.0:
                logger.warning(f"{kind.value} entropy requested at p = 1 for {state}; using Shannon")
                result = self._shannon(state, method)
                return result.model_copy(update={"note": _join(result.note, SHANNON_ROUTE_NOTE)})

        if kind == EntropyKind.SHANNON:
            return self._shannon(state, method)
        if kind == EntropyKind.RENYI:
            if method == Method.EXACT:
                return hydrogenic.renyi_total(state, p, self.cfg)
            return asympt.renyi_total_asymptotic(state, p, self.cfg, self.form)
        if method == Method.EXACT:
            return hydrogenic.tsallis_total(state, p, self.cfg)
        return asympt.tsallis_total_asymptotic(state, p, self.cfg, self.form)

    def _shannon(self, state: QuantumState, method: Method) -> EntropyResult:
        if method == Method.EXACT:
            return hydrogenic.shannon_total(state, self.cfg)
        return asympt.shannon_asymptotic(state, self.cfg)

    def evaluate_many(self, state: QuantumState, kind: EntropyKind, ps: Sequence[Optional[float]],
                      selector: MethodSelector) -> List[EntropyResult]:
        """Evaluate every requested order with every selected method.

        Shannon requests produce one result per method whatever the orders.
        Results come ordered by p, then exact before asymptotic.
        """
        methods = methods_for(selector)
        orders = [None] if kind == EntropyKind.SHANNON or not ps else list(ps)
        return [self.evaluate(state, kind, p, method) for p in orders for method in methods]

    def constant(self, kind: ConstantKind, p: float, alpha: Optional[float] = None,
                 beta: Optional[float] = None) -> RegimeConstant:
        """Evaluate one regime constant.

        Raises:
            DomainError: If a parameter needed by the constant is missing
        """
        if kind == ConstantKind.COSINE:
            _require(beta, "beta")
            return RegimeConstant(kind=kind, p=p, beta=beta, value=asympt.cosine_constant(p, beta))
        if kind == ConstantKind.BESSEL:
            _require(alpha, "alpha")
            _require(beta, "beta")
            return asympt.bessel_constant(alpha, p, beta, self.cfg)
        return asympt.airy_constant(p, self.cfg)


def methods_for(selector: MethodSelector) -> List[Method]:
    """Methods behind a selector, exact first."""
    if selector == MethodSelector.BOTH:
        return [Method.EXACT, Method.ASYMPTOTIC]
    return [Method(selector.value)]


def _require(value: Optional[float], field: str) -> None:
    if value is None:
        raise DomainError("required for this constant", field=field)


def _join(*notes: str) -> str:
    return "; ".join(note for note in notes if note)
