"""Exact entropic quantities of hydrogenic bound states.

The density factorises as ρ_{n,l,m}(r) = ρ_{n,l}(r)·|Y_{l,m}(θ, φ)|², so every
quantity is assembled from a radial integral (a Laguerre norm, evaluated in the
Laguerre variable r̃ = 2Zr/n) and an angular integral over u = cos θ. All
entropies are in nats and use the standard sign S = −∫ρ ln ρ.
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np

from rydberg.exceptions import DomainError, ShannonLimitError
from rydberg.schemas.entropy import EntropyKind, EntropyResult, Method
from rydberg.schemas.quadrature import IntegralResult, QuadratureConfig
from rydberg.schemas.state import LaguerreNormSpec, QuantumState
from rydberg.services.quad import combine, integrate_tail, integrate_zero_split
from rydberg.services.specfun import (
    WeightedLaguerreEvaluator,
    gegenbauer_zeros,
    spherical_harmonic_sq_cos,
)

logger = logging.getLogger(__name__)

LN_4PI = math.log(4.0 * math.pi)

# Tolerated mismatch between T_p from W_p and T_p from R_p through e^{(1−p)R}
_TSALLIS_IDENTITY_TOL = 1e-10


def energy(state: QuantumState) -> float:
    """E_{n,l} = −Z²/(2n²) in hartree."""
    return state.energy


def scaled_radius(state: QuantumState, r):
    """Laguerre variable r̃ = 2Zr/n."""
    return state.radial_scale * np.asarray(r, dtype=float)


def _log_radial_prefactor(state: QuantumState) -> float:
    # ln(4Z³/n⁴)
    return math.log(4.0) + 3.0 * math.log(state.Z) - 4.0 * math.log(state.n)


def radial_density(state: QuantumState, r):
    """Radial density ρ_{n,l}(r) = (4Z³/n⁴)(ω_{2l+1}(r̃)/r̃)[L̂_{n−l−1}^{(2l+1)}(r̃)]².

    Normalised with the r² dr measure: ∫₀^∞ ρ_{n,l} r² dr = 1.

    Args:
        state: Hydrogenic state
        r: Radius (or array of radii) in bohr, r ≥ 0

    Returns:
        ρ_{n,l}(r)
    """
    radii = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(radii < 0):
        raise DomainError("must be ≥ 0", field="r")
    x = scaled_radius(state, radii)
    evaluator = WeightedLaguerreEvaluator(state.degree, state.alpha)
    positive = x > 0
    density = np.zeros_like(x)
    if np.any(positive):
        _, log_abs = evaluator.log_abs(x[positive])
        with np.errstate(under="ignore"):
            density[positive] = np.exp(_log_radial_prefactor(state) + 2.0 * log_abs - np.log(x[positive]))
    if state.l == 0:
        # ω_1(r̃)/r̃ → 1 and L̂_k^{(1)}(0)² = k + 1 = n at the origin
        density[~positive] = 4.0 * state.Z ** 3 / state.n ** 3
    return float(density[0]) if np.ndim(r) == 0 else density


def total_density(state: QuantumState, r, theta):
    """ρ_{n,l,m}(r, θ) = ρ_{n,l}(r)·|Y_{l,m}(θ)|²."""
    return radial_density(state, r) * spherical_harmonic_sq_cos(state.l, state.m, np.cos(theta))


def _radial_cutoff(evaluator: WeightedLaguerreEvaluator) -> float:
    # Beyond the zero region the integrand decays like e^{−px}
    return evaluator.bulk_edge * 1.25 + 50.0


def laguerre_norm(spec: LaguerreNormSpec, cfg: Optional[QuadratureConfig] = None) -> IntegralResult:
    """Laguerre L_p-norm N = ∫₀^∞ ([L̂_k^(α)(x)]² ω_α(x))^p x^β dx.

    The integrand is assembled as exp(2p·ln|φ_k(x)| + β ln x), split at the
    polynomial zeros up to the truncation point and extended by a tail integral.

    Args:
        spec: Norm parameters (validated convergence condition)
        cfg: Quadrature configuration

    Returns:
        IntegralResult for N
    """
    cfg = cfg or QuadratureConfig()
    evaluator = WeightedLaguerreEvaluator(spec.degree, spec.alpha)
    two_p, beta = 2.0 * spec.p, spec.beta

    def integrand(x: np.ndarray) -> np.ndarray:
        _, log_abs = evaluator.log_abs(x)
        with np.errstate(under="ignore", divide="ignore", invalid="ignore"):
            log_value = two_p * log_abs + (beta * np.log(x) if beta else 0.0)
            return np.where(np.isneginf(log_value), 0.0, np.exp(log_value))

    cutoff = _radial_cutoff(evaluator)
    body = integrate_zero_split(integrand, evaluator.zeros, 0.0, cutoff, cfg)
    tail = integrate_tail(integrand, cutoff, cfg)
    result = combine(body, tail)
    logger.debug(f"N(k={spec.degree}, α={spec.alpha:g}, p={spec.p:g}, β={spec.beta:g}) = {result.value:.15e} "
                 f"({result.panels_used} panels)")
    return result


def laguerre_norm_general(degree: int, alpha: float, p: float, beta: float,
                          cfg: Optional[QuadratureConfig] = None) -> IntegralResult:
    """Laguerre norm for arbitrary parameters.

    Raises:
        DomainError: If β + pα ≤ −1 or another parameter is out of range
    """
    return laguerre_norm(LaguerreNormSpec.build(degree, alpha, p, beta), cfg)


def _check_order(p: float, operation: str, shannon_operation: str) -> None:
    if not p > 0:
        raise DomainError("must be > 0", field="p")
    if p == 1.0:
        raise ShannonLimitError(operation, shannon_operation)


def _log_radial_moment_prefactor(state: QuantumState, p: float) -> float:
    # ln[n^{3−4p} / (2^{3−2p} Z^{3(1−p)})]
    return ((3.0 - 4.0 * p) * math.log(state.n) - (3.0 - 2.0 * p) * math.log(2.0)
            - 3.0 * (1.0 - p) * math.log(state.Z))


def radial_moment(state: QuantumState, p: float, cfg: Optional[QuadratureConfig] = None) -> IntegralResult:
    """Radial entropic moment ∫₀^∞ ρ_{n,l}(r)^p r² dr."""
    if not p > 0:
        raise DomainError("must be > 0", field="p")
    norm = laguerre_norm(LaguerreNormSpec.hydrogenic(state, p), cfg)
    return norm.scaled(math.exp(_log_radial_moment_prefactor(state, p)))


def radial_renyi_exact(state: QuantumState, p: float, cfg: Optional[QuadratureConfig] = None) -> EntropyResult:
    """Radial Rényi entropy R_p[ρ_{n,l}] by quadrature of the Laguerre norm.

    R_p = ln[n^{3−4p} / (2^{3−2p} Z^{3(1−p)}) · N] / (1 − p), with the prefactor
    kept in the log domain.

    Raises:
        ShannonLimitError: For p = 1 (served by shannon_radial_exact)
    """
    _check_order(p, "radial_renyi_exact", "shannon_radial_exact")
    norm = laguerre_norm(LaguerreNormSpec.hydrogenic(state, p), cfg)
    return _renyi_from_moment(
        _log_radial_moment_prefactor(state, p) + math.log(norm.value),
        norm.relative_error, norm.converged, p,
    )


def _renyi_from_moment(log_moment: float, relative_error: float, converged: bool, p: float,
                       note: str = "") -> EntropyResult:
    if not converged:
        logger.warning(f"Rényi entropy at p={p:g} built on a non-converged integral")
    return EntropyResult(
        value=log_moment / (1.0 - p),
        kind=EntropyKind.RENYI,
        p=p,
        method=Method.EXACT,
        error_estimate=relative_error / abs(1.0 - p),
        converged=converged,
        note=note,
    )


def angular_moment(l: int, m: int, p: float, cfg: Optional[QuadratureConfig] = None) -> IntegralResult:
    """Angular part Ω_{l,m}(p) = ∫∫ |Y_{l,m}|^{2p} sin θ dθ dφ = 2π ∫_{−1}^{1} |Y_{l,m}|^{2p} du."""
    if not p > 0:
        raise DomainError("must be > 0", field="p")
    m_abs = abs(m)

    def integrand(u: np.ndarray) -> np.ndarray:
        with np.errstate(under="ignore"):
            return spherical_harmonic_sq_cos(l, m_abs, u) ** p

    nodes = gegenbauer_zeros(l - m_abs, m_abs + 0.5)
    return integrate_zero_split(integrand, nodes, -1.0, 1.0, cfg).scaled(2.0 * math.pi)


def angular_renyi(l: int, m: int, p: float, cfg: Optional[QuadratureConfig] = None) -> EntropyResult:
    """Angular Rényi entropy R_p[Y_{l,m}] = ln Ω_{l,m}(p) / (1 − p).

    Raises:
        ShannonLimitError: For p = 1 (served by shannon_angular)
    """
    _check_order(p, "angular_renyi", "shannon_angular")
    omega = angular_moment(l, m, p, cfg)
    return _renyi_from_moment(math.log(omega.value), omega.relative_error, omega.converged, p)


def shannon_angular(l: int, m: int, cfg: Optional[QuadratureConfig] = None) -> EntropyResult:
    """Shannon entropy of the spherical harmonic, S[Y] = −∫ |Y|² ln |Y|² dΩ."""
    m_abs = abs(m)

    def integrand(u: np.ndarray) -> np.ndarray:
        density = spherical_harmonic_sq_cos(l, m_abs, u)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(density > 0, density * np.log(density), 0.0)

    nodes = gegenbauer_zeros(l - m_abs, m_abs + 0.5)
    result = integrate_zero_split(integrand, nodes, -1.0, 1.0, cfg)
    return EntropyResult(
        value=-2.0 * math.pi * result.value,
        kind=EntropyKind.SHANNON,
        method=Method.EXACT,
        error_estimate=2.0 * math.pi * result.abs_error_estimate,
        converged=result.converged,
    )


def shannon_radial_exact(state: QuantumState, cfg: Optional[QuadratureConfig] = None) -> EntropyResult:
    """Radial Shannon entropy −∫ ρ_{n,l} ln ρ_{n,l} r² dr.

    With ρ = c·φ²(r̃)/r̃, c = 4Z³/n⁴, and the normalisation ∫ρ r² dr = 1:
    S = −ln c − (1/2n) ∫ φ²(x) x ln(φ²(x)/x) dx, where 0·ln 0 := 0.
    """
    cfg = cfg or QuadratureConfig()
    evaluator = WeightedLaguerreEvaluator(state.degree, state.alpha)

    def integrand(x: np.ndarray) -> np.ndarray:
        _, log_abs = evaluator.log_abs(x)
        with np.errstate(under="ignore", divide="ignore", invalid="ignore"):
            weight = np.exp(2.0 * log_abs)
            return np.where(weight > 0, weight * x * (2.0 * log_abs - np.log(x)), 0.0)

    cutoff = _radial_cutoff(evaluator)
    result = combine(
        integrate_zero_split(integrand, evaluator.zeros, 0.0, cutoff, cfg),
        integrate_tail(integrand, cutoff, cfg),
    )
    if not result.converged:
        logger.warning(f"Radial Shannon entropy of {state} built on a non-converged integral")
    scale = 1.0 / (2.0 * state.n)
    return EntropyResult(
        value=-_log_radial_prefactor(state) - scale * result.value,
        kind=EntropyKind.SHANNON,
        method=Method.EXACT,
        error_estimate=scale * result.abs_error_estimate,
        converged=result.converged,
    )


def _total_parts(state: QuantumState, p: float, cfg: Optional[QuadratureConfig]) -> Tuple[IntegralResult, IntegralResult]:
    """(radial moment, angular moment) computed independently."""
    return radial_moment(state, p, cfg), angular_moment(state.l, state.m, p, cfg)


def entropic_moment_total(state: QuantumState, p: float, cfg: Optional[QuadratureConfig] = None) -> IntegralResult:
    """Total entropic moment W_p = (∫ρ_{n,l}^p r² dr) × Ω_{l,m}(p)."""
    radial, angular = _total_parts(state, p, cfg)
    return _product(radial, angular)


def _product(radial: IntegralResult, angular: IntegralResult) -> IntegralResult:
    value = radial.value * angular.value
    return IntegralResult(
        value=value,
        abs_error_estimate=abs(value) * (radial.relative_error + angular.relative_error),
        panels_used=radial.panels_used + angular.panels_used,
        converged=radial.converged and angular.converged,
    )


def renyi_total(state: QuantumState, p: float, cfg: Optional[QuadratureConfig] = None) -> EntropyResult:
    """Total Rényi entropy R_p[ρ_{n,l,m}] = R_p[ρ_{n,l}] + R_p[Y_{l,m}].

    Raises:
        ShannonLimitError: For p = 1 (served by shannon_total)
    """
    _check_order(p, "renyi_total", "shannon_total")
    radial = radial_renyi_exact(state, p, cfg)
    angular = angular_renyi(state.l, state.m, p, cfg)
    return EntropyResult(
        value=radial.value + angular.value,
        kind=EntropyKind.RENYI,
        p=p,
        method=Method.EXACT,
        error_estimate=radial.error_estimate + angular.error_estimate,
        converged=radial.converged and angular.converged,
    )


def tsallis_from_renyi(renyi: float, p: float) -> float:
    """T_p = (e^{(1−p)R_p} − 1)/(1 − p)."""
    return math.expm1((1.0 - p) * renyi) / (1.0 - p)


def tsallis_total(state: QuantumState, p: float, cfg: Optional[QuadratureConfig] = None) -> EntropyResult:
    """Total Tsallis entropy T_p = (1 − W_p)/(p − 1).

    The same radial and angular moments also give R_p; the Rényi-Tsallis
    relation is checked on the pair and a mismatch is logged.

    Raises:
        ShannonLimitError: For p = 1 (served by shannon_total)
    """
    _check_order(p, "tsallis_total", "shannon_total")
    radial, angular = _total_parts(state, p, cfg)
    moment = _product(radial, angular)
    value = (1.0 - moment.value) / (p - 1.0)
    renyi = (math.log(radial.value) + math.log(angular.value)) / (1.0 - p)
    mismatch = abs(value - tsallis_from_renyi(renyi, p))
    if mismatch > _TSALLIS_IDENTITY_TOL * max(1.0, abs(value)):
        logger.warning(f"Rényi-Tsallis relation off by {mismatch:.3e} for {state} at p={p:g}")
    return EntropyResult(
        value=value,
        kind=EntropyKind.TSALLIS,
        p=p,
        method=Method.EXACT,
        error_estimate=moment.abs_error_estimate / abs(p - 1.0),
        converged=moment.converged,
    )


def shannon_total(state: QuantumState, cfg: Optional[QuadratureConfig] = None) -> EntropyResult:
    """Total Shannon entropy S[ρ_{n,l,m}] = S[ρ_{n,l}] + S[Y_{l,m}]."""
    radial = shannon_radial_exact(state, cfg)
    angular = shannon_angular(state.l, state.m, cfg)
    return EntropyResult(
        value=radial.value + angular.value,
        kind=EntropyKind.SHANNON,
        method=Method.EXACT,
        error_estimate=radial.error_estimate + angular.error_estimate,
        converged=radial.converged and angular.converged,
    )


def disequilibrium(state: QuantumState, cfg: Optional[QuadratureConfig] = None) -> IntegralResult:
    """Disequilibrium ⟨ρ⟩ = W_2 = exp(−R_2)."""
    return entropic_moment_total(state, 2.0, cfg)
