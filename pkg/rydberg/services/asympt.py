"""Rydberg (n → ∞) asymptotics of hydrogenic entropies.

The radial Laguerre norms fall into three regimes by the order p: cosine for
0 < p < 2, the cosine-Bessel transition at p = 2 and Bessel for p > 2. Each
regime contributes its own constant: C(p, β) in closed form, C_B(α, p, β) by
quadrature of a Bessel integral. The Airy constant C_A(p) is provided for
completeness and takes no part in the entropy formulas.

Only dominant terms are evaluated; every result carries method "asympt" and
the note "dominant term".
"""
import logging
import math
from typing import Optional

import numpy as np
from scipy import special

from rydberg.config import settings
from rydberg.exceptions import (
    DivergentIntegralError,
    DomainError,
    GammaPoleError,
    ShannonLimitError,
)
from rydberg.schemas.entropy import (
    ConstantKind,
    EntropyKind,
    EntropyResult,
    Method,
    Regime,
    RegimeConstant,
    RegimeTag,
)
from rydberg.schemas.quadrature import QuadratureConfig
from rydberg.schemas.state import QuantumState
from rydberg.services.hydrogenic import angular_renyi, shannon_angular, tsallis_from_renyi
from rydberg.services.quad import TailModel, combine, integrate_tail, integrate_zero_split
from rydberg.services.specfun import airy_ai, airy_ai_zero_estimates, bessel_j_zero_estimates, log_gamma
from rydberg.utils import synchronized_cache

logger = logging.getLogger(__name__)

DOMINANT_TERM = "dominant term"

FORMS = ("auto", "general", "low_l")

LN_2 = math.log(2.0)
LN_PI = math.log(math.pi)

# Airy scaling 2^{−2/3} between t and the Airy argument
_AIRY_SCALE = 2.0 ** (-2.0 / 3.0)
_AIRY_TAIL_START = 600.0


def regime_of(p: float, tolerance: Optional[float] = None) -> Regime:
    """Classify the order p into its asymptotic regime.

    Args:
        p: Order, p > 0 and p ≠ 1
        tolerance: Half-width of the band around p = 2 routed to the transition
            (defaults to settings.p_equal_tolerance)

    Returns:
        Regime tagged cosine, cosine-bessel or bessel

    Raises:
        DomainError: If p ≤ 0
        ShannonLimitError: If p = 1
    """
    tolerance = settings.p_equal_tolerance if tolerance is None else tolerance
    if not p > 0:
        raise DomainError("must be > 0", field="p")
    if p == 1.0:
        raise ShannonLimitError("regime_of", "shannon_asymptotic")
    if abs(p - 2.0) <= tolerance:
        tag = RegimeTag.COSINE_BESSEL
    elif p < 2.0:
        tag = RegimeTag.COSINE
    else:
        tag = RegimeTag.BESSEL
    return Regime(tag=tag, p_equal_tolerance=tolerance)


def log_cosine_constant(p: float, beta: float) -> float:
    """ln C(p, β), see cosine_constant."""
    if not p > 0:
        raise DomainError("must be > 0", field="p")
    factors = (
        ("Γ(β+1−p/2)", beta + 1.0 - 0.5 * p),
        ("Γ(1−p/2)", 1.0 - 0.5 * p),
        ("Γ(β+2−p)", beta + 2.0 - p),
    )
    for factor, argument in factors:
        if not argument > 0:
            raise GammaPoleError(factor, argument)
    return (
        (beta + 1.0) * LN_2
        - (p + 0.5) * LN_PI
        + log_gamma(beta + 1.0 - 0.5 * p)
        + log_gamma(1.0 - 0.5 * p)
        + log_gamma(p + 0.5)
        - log_gamma(beta + 2.0 - p)
        - log_gamma(1.0 + p)
    )


def cosine_constant(p: float, beta: float) -> float:
    """Cosine-regime constant.

    C(p, β) = 2^{β+1} π^{−p−1/2} Γ(β+1−p/2) Γ(1−p/2) Γ(p+1/2) / (Γ(β+2−p) Γ(1+p)),
    assembled from log-gamma values.

    Raises:
        GammaPoleError: Naming the first gamma factor whose argument is ≤ 0
    """
    return math.exp(log_cosine_constant(p, beta))


def cosine_constant_hydrogenic(p: float) -> float:
    """C(p) = C(p, 2 − p)."""
    return cosine_constant(p, 2.0 - p)


def _cos_power_mean(p: float) -> float:
    # Period average of |cos|^{2p}: Γ(p+½)/(√π Γ(p+1))
    return math.exp(special.gammaln(p + 0.5) - 0.5 * LN_PI - special.gammaln(p + 1.0))


def _constant_key(*args, cfg: Optional[QuadratureConfig] = None):
    return tuple(float(a) for a in args) + ((cfg or QuadratureConfig()).config_hash(),)


def _bessel_key(alpha, p, beta, cfg=None):
    return _constant_key(alpha, p, beta, cfg=cfg)


def _airy_key(p, cfg=None):
    return _constant_key(p, cfg=cfg)


@synchronized_cache(maxsize=settings.constant_cache_size, key=_bessel_key)
def bessel_constant(alpha: float, p: float, beta: float,
                    cfg: Optional[QuadratureConfig] = None) -> RegimeConstant:
    """Bessel-regime constant C_B(α, p, β) = 2 ∫₀^∞ t^{2β+1} |J_α(2t)|^{2p} dt.

    Integrated in s = 2t as 2^{−(2β+1)} ∫₀^∞ s^{2β+1} |J_α(s)|^{2p} ds, split at
    the zeros of J_α. The power-law tail beyond a zero S is closed with the
    period average of |J_α|^{2p} ≈ (2/(πs))^p |cos|^{2p}; S moves out until the
    closure uncertainty (1 + α²)/S² fits the tolerance.

    Args:
        alpha: Bessel order, α > −1
        p: Order of the norm
        beta: Power of the measure
        cfg: Quadrature configuration

    Returns:
        RegimeConstant of kind bessel

    Raises:
        DivergentIntegralError: If 2β + 2 + 2pα ≤ 0 (origin) or p ≤ 2β + 2 (infinity)
    """
    cfg = cfg or QuadratureConfig()
    if not alpha > -1:
        raise DomainError("must be > −1", field="alpha")
    if not 2.0 * beta + 2.0 + 2.0 * p * alpha > 0:
        raise DivergentIntegralError("the origin", "2β + 2 + 2pα > 0")
    if not p > 2.0 * beta + 2.0:
        raise DivergentIntegralError("infinity", "p > 2β + 2")

    head_end = 2.0 * max(1.0, alpha + 1.0)
    tail_start = 2.0 * max(200.0, 20.0 * (alpha + 1.0) ** 2)
    two_p, power = 2.0 * p, 2.0 * beta + 1.0
    exponent = power + 1.0 - p
    mean = _cos_power_mean(p)

    def integrand(s: np.ndarray) -> np.ndarray:
        with np.errstate(under="ignore", divide="ignore", invalid="ignore"):
            log_value = two_p * np.log(np.abs(special.jv(alpha, s))) + power * np.log(s)
            return np.where(np.isneginf(log_value), 0.0, np.exp(log_value))

    def breakpoints(lo: float, hi: float) -> np.ndarray:
        return bessel_j_zero_estimates(alpha, hi, lo)

    tail_model = TailModel(
        start=tail_start,
        remainder=lambda s: (2.0 / math.pi) ** p * mean * s ** exponent / (-exponent),
        relative_uncertainty=lambda s: (1.0 + alpha * alpha) / (s * s),
    )
    body = integrate_zero_split(integrand, breakpoints(0.0, head_end), 0.0, head_end, cfg)
    tail = integrate_tail(integrand, head_end, cfg, breakpoints=breakpoints, tail_model=tail_model)
    result = combine(body, tail).scaled(2.0 ** (-power))
    if not result.converged:
        logger.warning(f"C_B(α={alpha:g}, p={p:g}, β={beta:g}) not converged: "
                       f"error {result.abs_error_estimate:.3e}")
    logger.debug(f"C_B(α={alpha:g}, p={p:g}, β={beta:g}) = {result.value:.15e}")
    return RegimeConstant(
        kind=ConstantKind.BESSEL,
        p=p,
        alpha=alpha,
        beta=beta,
        value=result.value,
        error_estimate=result.abs_error_estimate,
        converged=result.converged,
    )


def bessel_constant_hydrogenic(l: int, p: float, cfg: Optional[QuadratureConfig] = None) -> RegimeConstant:
    """C_B(l, p) = C_B(2l + 1, p, 2 − p)."""
    return bessel_constant(2.0 * l + 1.0, p, 2.0 - p, cfg)


@synchronized_cache(maxsize=settings.constant_cache_size, key=_airy_key)
def airy_constant(p: float, cfg: Optional[QuadratureConfig] = None) -> RegimeConstant:
    """Airy-regime constant C_A(p) = ∫ [2π 2^{−1/3} Ai²(−t 2^{−2/3})]^p dt over ℝ.

    The decaying side (t < 0) is integrated until it underflows. The oscillatory
    side is split at the Airy zeros and closed beyond a zero T with the period
    average of g(t) ≈ 2^p t^{−p/2} |cos|^{2p}, T pushed out as for C_B.

    Raises:
        DivergentIntegralError: If p ≤ 2
    """
    cfg = cfg or QuadratureConfig()
    if not p > 2:
        raise DivergentIntegralError("infinity", "p > 2")
    scale = 2.0 * math.pi * 2.0 ** (-1.0 / 3.0)
    mean = _cos_power_mean(p)

    def oscillatory(t: np.ndarray) -> np.ndarray:
        with np.errstate(under="ignore"):
            return (scale * airy_ai(-t * _AIRY_SCALE) ** 2) ** p

    def decaying(s: np.ndarray) -> np.ndarray:
        with np.errstate(under="ignore"):
            return (scale * airy_ai(s * _AIRY_SCALE) ** 2) ** p

    def breakpoints(lo: float, hi: float) -> np.ndarray:
        # Zeros of Ai(−t·2^{−2/3}) in t
        return airy_ai_zero_estimates(hi * _AIRY_SCALE, lo * _AIRY_SCALE) / _AIRY_SCALE

    def zeta(t: float) -> float:
        return (2.0 / 3.0) * (t * _AIRY_SCALE) ** 1.5

    tail_model = TailModel(
        start=_AIRY_TAIL_START,
        remainder=lambda t: 2.0 ** p * mean * t ** (1.0 - 0.5 * p) / (0.5 * p - 1.0),
        relative_uncertainty=lambda t: 1.0 / zeta(t) ** 2,
    )
    result = combine(
        integrate_tail(decaying, 0.0, cfg),
        integrate_tail(oscillatory, 0.0, cfg, breakpoints=breakpoints, tail_model=tail_model),
    )
    if not result.converged:
        logger.warning(f"C_A(p={p:g}) not converged: error {result.abs_error_estimate:.3e}")
    return RegimeConstant(
        kind=ConstantKind.AIRY,
        p=p,
        value=result.value,
        error_estimate=result.abs_error_estimate,
        converged=result.converged,
    )


def _log_radial_prefactor(n: float, Z: float, p: float) -> float:
    # ln[n^{3−4p} / (2^{3−2p} Z^{3(1−p)})]
    return (3.0 - 4.0 * p) * math.log(n) - (3.0 - 2.0 * p) * LN_2 - 3.0 * (1.0 - p) * math.log(Z)


def _asymptotic_renyi(log_moment: float, p: float, regime: Regime, relative_error: float = 0.0,
                      converged: bool = True) -> EntropyResult:
    return EntropyResult(
        value=log_moment / (1.0 - p),
        kind=EntropyKind.RENYI,
        p=p,
        method=Method.ASYMPTOTIC,
        regime=regime.tag,
        error_estimate=relative_error / abs(1.0 - p),
        converged=converged,
        note=DOMINANT_TERM,
    )


def radial_renyi_asymptotic(state: QuantumState, p: float,
                            cfg: Optional[QuadratureConfig] = None) -> EntropyResult:
    """Dominant term of the radial Rényi entropy in the degree k = n − l − 1.

    ln W = ln[n^{3−4p}/(2^{3−2p}Z^{3(1−p)})] + one of
      cosine:         ln C(p, 2−p) + (3−2p) ln(2k)
      cosine-bessel:  ln(ln k) − 2 ln π − ln k
      bessel:         ln C_B(2l+1, p, 2−p) − (3−p) ln k

    Raises:
        DomainError: If k = 0, or k < 2 at p = 2 (ln k must be positive)
    """
    regime = regime_of(p)
    k = state.degree
    if k < 1:
        raise DomainError("the degree n − l − 1 must be ≥ 1 for the asymptotic form", field="n")
    log_moment = _log_radial_prefactor(state.n, state.Z, p)
    relative_error, converged = 0.0, True
    if regime.tag == RegimeTag.COSINE:
        log_moment += log_cosine_constant(p, 2.0 - p) + (3.0 - 2.0 * p) * math.log(2.0 * k)
    elif regime.tag == RegimeTag.COSINE_BESSEL:
        if k < 2:
            raise DomainError("the degree n − l − 1 must be ≥ 2 at p = 2", field="n")
        log_moment += math.log(math.log(k)) - 2.0 * LN_PI - math.log(k)
    else:
        constant = bessel_constant_hydrogenic(state.l, p, cfg)
        log_moment += math.log(constant.value) + (p - 3.0) * math.log(k)
        relative_error, converged = constant.error_estimate / constant.value, constant.converged
    return _asymptotic_renyi(log_moment, p, regime, relative_error, converged)


def radial_renyi_asymptotic_largeN(n: int, l: int, Z: float, p: float,
                                   cfg: Optional[QuadratureConfig] = None) -> EntropyResult:
    """Dominant term of the radial Rényi entropy for l ≪ n, in powers of n.

    ln W = one of
      cosine:         ln C(p) + 6(1−p) ln n − 3(1−p) ln Z
      cosine-bessel:  (2−4p) ln n − (3−2p) ln 2 − 3(1−p) ln Z + ln ln n − 2 ln π
      bessel:         ln C_B(2l+1, p, 2−p) − 3p ln n − (3−2p) ln 2 − 3(1−p) ln Z
    """
    QuantumState.build(n, l, 0, Z)
    regime = regime_of(p)
    ln_n, ln_z = math.log(n), math.log(Z)
    relative_error, converged = 0.0, True
    if regime.tag == RegimeTag.COSINE:
        log_moment = log_cosine_constant(p, 2.0 - p) + 6.0 * (1.0 - p) * ln_n - 3.0 * (1.0 - p) * ln_z
    elif regime.tag == RegimeTag.COSINE_BESSEL:
        if n < 2:
            raise DomainError("must be ≥ 2 at p = 2", field="n")
        log_moment = ((2.0 - 4.0 * p) * ln_n - (3.0 - 2.0 * p) * LN_2 - 3.0 * (1.0 - p) * ln_z
                      + math.log(ln_n) - 2.0 * LN_PI)
    else:
        constant = bessel_constant_hydrogenic(l, p, cfg)
        log_moment = (math.log(constant.value) - 3.0 * p * ln_n - (3.0 - 2.0 * p) * LN_2
                      - 3.0 * (1.0 - p) * ln_z)
        relative_error, converged = constant.error_estimate / constant.value, constant.converged
    return _asymptotic_renyi(log_moment, p, regime, relative_error, converged)


def _radial_asymptotic(state: QuantumState, p: float, cfg: Optional[QuadratureConfig],
                       form: str) -> EntropyResult:
    if form not in FORMS:
        raise DomainError(f"must be one of {', '.join(FORMS)}", field="form")
    if form == "low_l" or (form == "auto" and state.l == 0):
        return radial_renyi_asymptotic_largeN(state.n, state.l, state.Z, p, cfg)
    return radial_renyi_asymptotic(state, p, cfg)


def shannon_radial_asymptotic(state: QuantumState) -> EntropyResult:
    """S[ρ_{n,l}] ≈ 6 ln n − ln 2 + ln π − 3 ln Z."""
    return EntropyResult(
        value=6.0 * math.log(state.n) - LN_2 + LN_PI - 3.0 * math.log(state.Z),
        kind=EntropyKind.SHANNON,
        method=Method.ASYMPTOTIC,
        regime=RegimeTag.COSINE,
        note=DOMINANT_TERM,
    )


def shannon_asymptotic(state: QuantumState, cfg: Optional[QuadratureConfig] = None) -> EntropyResult:
    """S[ρ_{n,l,m}] ≈ 6 ln n − ln 2 + ln π − 3 ln Z + S[Y_{l,m}], angular part exact."""
    radial = shannon_radial_asymptotic(state)
    angular = shannon_angular(state.l, state.m, cfg)
    return radial.model_copy(update={
        "value": radial.value + angular.value,
        "error_estimate": angular.error_estimate,
        "converged": angular.converged,
    })


def renyi_total_asymptotic(state: QuantumState, p: float, cfg: Optional[QuadratureConfig] = None,
                           form: str = "auto") -> EntropyResult:
    """Asymptotic radial Rényi entropy plus the exact angular one.

    Args:
        state: Hydrogenic state
        p: Order, p > 0 and p ≠ 1
        cfg: Quadrature configuration for C_B and the angular integral
        form: "low_l" (powers of n), "general" (powers of n − l − 1) or "auto",
            which takes "low_l" for s-states and "general" otherwise

    Raises:
        ShannonLimitError: For p = 1 (served by shannon_asymptotic)
    """
    if p == 1.0:
        raise ShannonLimitError("renyi_total_asymptotic", "shannon_asymptotic")
    radial = _radial_asymptotic(state, p, cfg, form)
    angular = angular_renyi(state.l, state.m, p, cfg)
    return radial.model_copy(update={
        "value": radial.value + angular.value,
        "error_estimate": radial.error_estimate + angular.error_estimate,
        "converged": radial.converged and angular.converged,
    })


def tsallis_total_asymptotic(state: QuantumState, p: float, cfg: Optional[QuadratureConfig] = None,
                             form: str = "auto") -> EntropyResult:
    """T_p = (e^{(1−p)R_p} − 1)/(1 − p) on the asymptotic total Rényi entropy."""
    if p == 1.0:
        raise ShannonLimitError("tsallis_total_asymptotic", "shannon_asymptotic")
    renyi = renyi_total_asymptotic(state, p, cfg, form)
    value = tsallis_from_renyi(renyi.value, p)
    # dT/dR = e^{(1−p)R}
    slope = math.exp((1.0 - p) * renyi.value)
    return renyi.model_copy(update={
        "value": value,
        "kind": EntropyKind.TSALLIS,
        "error_estimate": slope * renyi.error_estimate,
    })


def disequilibrium_asymptotic(state: QuantumState, cfg: Optional[QuadratureConfig] = None,
                              form: str = "auto") -> float:
    """exp(−R_2) with the asymptotic R_2."""
    return math.exp(-renyi_total_asymptotic(state, 2.0, cfg, form).value)
