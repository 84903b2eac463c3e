"""Special functions behind the hydrogenic integrands.

Weighted orthonormal Laguerre functions evaluated in the log domain, squared
spherical harmonics built from Gegenbauer polynomials, Bessel J, Airy Ai and
log-gamma. Every function accepts scalars or numpy arrays.
"""
import logging
import threading
from functools import lru_cache
from typing import Tuple, Union

import numpy as np
from scipy import special
from scipy.linalg import eigh_tridiagonal

from rydberg.exceptions import DomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# Rescale the recurrence once magnitudes leave [1e-150, 1e150]
_RESCALE_HIGH = 1e150
_RESCALE_LOW = 1e-150

# Below this log-magnitude exp() underflows to exactly 0.0
LOG_UNDERFLOW = np.log(np.finfo(float).tiny)

AIRY_AI_ZERO = 1.0 / (3.0 ** (2.0 / 3.0) * special.gamma(2.0 / 3.0))


def log_gamma(x: ArrayLike) -> ArrayLike:
    """Natural logarithm of Γ(x) for x > 0.

    Args:
        x: Positive argument(s)

    Returns:
        ln Γ(x)

    Raises:
        DomainError: If any argument is not strictly positive
    """
    values = np.asarray(x, dtype=float)
    if np.any(~(values > 0)):
        raise DomainError("log_gamma requires x > 0", field="x")
    result = special.gammaln(values)
    return float(result) if result.ndim == 0 else result


def _log_sqrt_weight(alpha: float, x: np.ndarray) -> np.ndarray:
    """ln √(x^α e^{−x} / Γ(α+1)), the log of the weighted degree-0 function."""
    with np.errstate(divide="ignore", invalid="ignore"):
        log_x = np.log(x)
        alpha_log_x = np.where(x > 0, alpha * log_x, 0.0 if alpha == 0 else np.copysign(np.inf, -alpha))
    return 0.5 * (alpha_log_x - x - special.gammaln(alpha + 1.0))


def _scaled_recurrence(k: int, alpha: float, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Run the orthonormal Laguerre recurrence with overflow-safe rescaling.

    Returns (q_k, q_{k−1}, log_scale) with L̂_j(x) / L̂_0 = q_j · exp(log_scale).
    For k = 0 the second entry is zero.
    """
    q_prev = np.zeros_like(x)
    q_cur = np.ones_like(x)
    log_scale = np.zeros_like(x)
    for j in range(k):
        # √((j+1)(j+α+1)) L̂_{j+1} = (2j+α+1−x) L̂_j − √(j(j+α)) L̂_{j−1}
        q_next = ((2 * j + alpha + 1.0 - x) * q_cur - np.sqrt(j * (j + alpha)) * q_prev) / np.sqrt(
            (j + 1.0) * (j + alpha + 1.0)
        )
        q_prev, q_cur = q_cur, q_next
        magnitude = np.maximum(np.abs(q_cur), np.abs(q_prev))
        if np.any(magnitude > _RESCALE_HIGH) or np.any((magnitude < _RESCALE_LOW) & (magnitude > 0)):
            magnitude = np.where(magnitude > 0, magnitude, 1.0)
            q_cur = q_cur / magnitude
            q_prev = q_prev / magnitude
            log_scale = log_scale + np.log(magnitude)
    return q_cur, q_prev, log_scale


def log_laguerre_weighted(k: int, alpha: float, x: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
    """Sign and log-magnitude of φ_k(x) = L̂_k^(α)(x) √(x^α e^{−x}).

    Args:
        k: Polynomial degree, k ≥ 0
        alpha: Laguerre parameter, α > −1
        x: Evaluation point(s), x ≥ 0

    Returns:
        Tuple (sign, log_abs) of arrays shaped like x; log_abs is −inf at zeros
    """
    _check_laguerre_args(k, alpha)
    points = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(points < 0):
        raise DomainError("weighted Laguerre functions live on x ≥ 0", field="x")
    q_cur, _, log_scale = _scaled_recurrence(k, alpha, points)
    with np.errstate(divide="ignore"):
        log_abs = _log_sqrt_weight(alpha, points) + log_scale + np.log(np.abs(q_cur))
    return np.sign(q_cur), log_abs


def laguerre_weighted(k: int, alpha: float, x: ArrayLike, with_flag: bool = False):
    """Weighted orthonormal Laguerre function φ_k(x) with ∫₀^∞ φ_k² dx = 1.

    Args:
        k: Polynomial degree, k ≥ 0
        alpha: Laguerre parameter, α > −1
        x: Evaluation point(s), x ≥ 0
        with_flag: Also return a mask of points where the weight underflowed

    Returns:
        φ_k(x) (scalar for scalar input), or (φ_k(x), underflow_mask) when with_flag
    """
    sign, log_abs = log_laguerre_weighted(k, alpha, x)
    underflow = log_abs < LOG_UNDERFLOW
    with np.errstate(under="ignore"):
        values = np.where(underflow, 0.0, sign * np.exp(np.minimum(log_abs, 700.0)))
    if np.ndim(x) == 0:
        values, underflow = float(values[0]), bool(underflow[0])
    return (values, underflow) if with_flag else values


def laguerre_zeros(k: int, alpha: float) -> np.ndarray:
    """Zeros of L_k^(α), increasing, from the symmetric Jacobi matrix.

    The eigenvalues are polished by two Newton steps on the orthonormal
    recurrence, using x L̂_k' = k L̂_k − √(k(k+α)) L̂_{k−1}.

    Args:
        k: Polynomial degree
        alpha: Laguerre parameter, α > −1

    Returns:
        Array of the k zeros
    """
    _check_laguerre_args(k, alpha)
    if k == 0:
        return np.empty(0)
    diagonal = 2.0 * np.arange(k) + alpha + 1.0
    j = np.arange(1, k)
    off_diagonal = np.sqrt(j * (j + alpha))
    zeros = eigh_tridiagonal(diagonal, off_diagonal, eigvals_only=True)
    for _ in range(2):
        q_k, q_km1, _ = _scaled_recurrence(k, alpha, zeros)
        derivative_times_x = k * q_k - np.sqrt(k * (k + alpha)) * q_km1
        step = np.where(derivative_times_x != 0, zeros * q_k / derivative_times_x, 0.0)
        zeros = zeros - step
    return np.sort(zeros)


def _check_laguerre_args(k: int, alpha: float) -> None:
    if k < 0:
        raise DomainError("must be ≥ 0", field="k")
    if not alpha > -1:
        raise DomainError("must be > −1", field="alpha")


class WeightedLaguerreEvaluator:
    """φ_k for a fixed (k, α), with lazily computed and cached zeros.

    Immutable after construction; the zero cache is filled once under a lock so
    evaluators can be shared between threads.
    """

    def __init__(self, degree: int, alpha: float):
        _check_laguerre_args(degree, alpha)
        self.degree = degree
        self.alpha = float(alpha)
        self._zeros = None
        self._lock = threading.Lock()

    def __call__(self, x: ArrayLike) -> ArrayLike:
        return laguerre_weighted(self.degree, self.alpha, x)

    def log_abs(self, x: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
        """Sign and log-magnitude, see log_laguerre_weighted."""
        return log_laguerre_weighted(self.degree, self.alpha, x)

    @property
    def zeros(self) -> np.ndarray:
        if self._zeros is None:
            with self._lock:
                if self._zeros is None:
                    zeros = laguerre_zeros(self.degree, self.alpha)
                    zeros.setflags(write=False)
                    self._zeros = zeros
        return self._zeros

    @property
    def bulk_edge(self) -> float:
        """4k + 2α + 2, an upper bound of the zero region."""
        return 4.0 * self.degree + 2.0 * self.alpha + 2.0

    def __repr__(self) -> str:
        return f"WeightedLaguerreEvaluator(degree={self.degree}, alpha={self.alpha})"


def gegenbauer(k: int, lam: float, x: ArrayLike) -> ArrayLike:
    """Gegenbauer polynomial C_k^λ(x) by the three-term recurrence.

    Args:
        k: Degree, k ≥ 0
        lam: Parameter λ > −1/2
        x: Point(s) in [−1, 1]

    Returns:
        C_k^λ(x)
    """
    if k < 0:
        raise DomainError("must be ≥ 0", field="k")
    if not lam > -0.5:
        raise DomainError("must be > −1/2", field="lambda")
    points = np.asarray(x, dtype=float)
    c_prev = np.ones_like(points)
    if k == 0:
        return float(c_prev) if points.ndim == 0 else c_prev
    c_cur = 2.0 * lam * points
    for j in range(2, k + 1):
        c_prev, c_cur = c_cur, (2.0 * (j + lam - 1.0) * points * c_cur - (j + 2.0 * lam - 2.0) * c_prev) / j
    return float(c_cur) if points.ndim == 0 else c_cur


def gegenbauer_zeros(k: int, lam: float) -> np.ndarray:
    """Zeros of C_k^λ in increasing order."""
    if k == 0:
        return np.empty(0)
    nodes, _ = special.roots_gegenbauer(k, lam)
    return np.sort(nodes)


@lru_cache(maxsize=512)
def _log_harmonic_prefactor(l: int, m: int) -> float:
    # ln[(l+½)(l−m)! Γ(m+½)² / (2^{1−2m} π² (l+m)!)]
    return float(
        np.log(l + 0.5)
        + special.gammaln(l - m + 1.0)
        + 2.0 * special.gammaln(m + 0.5)
        - (1.0 - 2.0 * m) * np.log(2.0)
        - 2.0 * np.log(np.pi)
        - special.gammaln(l + m + 1.0)
    )


def _check_harmonic_args(l: int, m: int) -> int:
    if l < 0:
        raise DomainError("must be ≥ 0", field="l")
    if abs(m) > l:
        raise DomainError("|m| must not exceed l", field="m")
    return abs(m)


def spherical_harmonic_sq_cos(l: int, m: int, u: ArrayLike) -> ArrayLike:
    """|Y_{l,m}|² as a function of u = cos θ ∈ [−1, 1].

    Only |m| enters: |Y_{l,m}|² = |Y_{l,−m}|².
    """
    m_abs = _check_harmonic_args(l, m)
    points = np.asarray(u, dtype=float)
    poly = gegenbauer(l - m_abs, m_abs + 0.5, points)
    with np.errstate(divide="ignore"):
        log_value = _log_harmonic_prefactor(l, m_abs) + 2.0 * np.log(np.abs(poly))
        if m_abs:
            log_value = log_value + m_abs * np.log(np.clip((1.0 - points) * (1.0 + points), 0.0, None))
    value = np.exp(log_value)
    return float(value) if np.ndim(value) == 0 else value


def spherical_harmonic_sq(l: int, m: int, theta: ArrayLike) -> ArrayLike:
    """|Y_{l,m}(θ, φ)|², independent of φ.

    Args:
        l: Orbital quantum number
        m: Magnetic quantum number, |m| ≤ l (sign ignored)
        theta: Polar angle(s) in [0, π]

    Returns:
        Squared modulus of the orthonormal spherical harmonic

    Raises:
        DomainError: If |m| > l
    """
    return spherical_harmonic_sq_cos(l, m, np.cos(theta))


def bessel_j(nu: float, x: ArrayLike) -> ArrayLike:
    """Bessel function of the first kind J_ν(x) for ν > −1, x ≥ 0."""
    if not nu > -1:
        raise DomainError("must be > −1", field="nu")
    points = np.asarray(x, dtype=float)
    if np.any(points < 0):
        raise DomainError("must be ≥ 0", field="x")
    value = special.jv(nu, points)
    return float(value) if np.ndim(value) == 0 else value


def bessel_j_zero_estimates(nu: float, z_max: float, z_min: float = 0.0) -> np.ndarray:
    """Zeros of J_ν on (z_min, z_max], from McMahon's expansion refined by Newton.

    Zeros in the turning region z ≲ ν may be missing; callers only use them
    as quadrature breakpoints and as oscillation-aligned tail edges. A zero is
    computed from its index alone, so overlapping windows agree bit for bit.
    """
    mu = 4.0 * nu * nu
    s_max = int(z_max / np.pi - nu / 2.0 + 0.25) + 2
    s_min = max(int(z_min / np.pi - nu / 2.0 + 0.25) - 2, 1)
    s = np.arange(s_min, max(s_max, s_min) + 1)
    b = (s + 0.5 * nu - 0.25) * np.pi
    b = b[b > nu + 1.0]
    if b.size == 0:
        return np.empty(0)
    z = b - (mu - 1.0) / (8.0 * b) - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * (8.0 * b) ** 3)
    for _ in range(3):
        z = z - special.jv(nu, z) / special.jvp(nu, z)
    z = np.sort(z[(z > max(z_min, 0.0)) & (z <= z_max)])
    if z.size > 1:
        keep = np.concatenate(([True], np.diff(z) > 1e-8 * z[1:]))
        z = z[keep]
    return z


def airy_ai(x: ArrayLike) -> ArrayLike:
    """Airy function Ai(x).

    On x < 0 this uses Ai(−y) = (√y / 3)[J_{1/3}(ζ) + J_{−1/3}(ζ)], ζ = (2/3) y^{3/2};
    on x > 0 scipy's Airy routine supplies the exponentially decaying branch.
    """
    points = np.asarray(x, dtype=float)
    y = np.abs(np.minimum(points, 0.0))
    zeta = (2.0 / 3.0) * y ** 1.5
    with np.errstate(invalid="ignore", divide="ignore"):
        oscillatory = np.sqrt(y) / 3.0 * (special.jv(1.0 / 3.0, zeta) + special.jv(-1.0 / 3.0, zeta))
    decaying = special.airy(np.maximum(points, 0.0))[0]
    value = np.where(points < 0, oscillatory, np.where(points == 0, AIRY_AI_ZERO, decaying))
    return float(value) if np.ndim(value) == 0 else value


def airy_ai_zeros(count: int) -> np.ndarray:
    """The first `count` zeros of Ai, all negative, in decreasing order."""
    if count <= 0:
        return np.empty(0)
    return special.ai_zeros(count)[0]


# Zeros past this index come from the asymptotic expansion
_AIRY_ZERO_TABLE = 2000


@lru_cache(maxsize=1)
def _airy_zero_magnitudes() -> np.ndarray:
    zeros = -airy_ai_zeros(_AIRY_ZERO_TABLE)
    zeros.setflags(write=False)
    return zeros


def _airy_zero_index(y: float) -> int:
    # Inverse of |a_k| ≈ (3π(4k−1)/8)^{2/3}
    return int((16.0 * max(y, 0.0) ** 1.5 / (9.0 * np.pi) + 1.0) / 4.0)


def airy_ai_zero_estimates(y_max: float, y_min: float = 0.0) -> np.ndarray:
    """Magnitudes y of the zeros Ai(−y) = 0 on (y_min, y_max], increasing.

    The first zeros are scipy's; later ones use a_k = −T(3π(4k−1)/8) with
    T(t) = t^{2/3}(1 + 5/48 t^{−2} − 5/36 t^{−4} + 77125/82944 t^{−6}), which
    is exact to rounding at that range.
    """
    k = np.arange(max(_airy_zero_index(y_min) - 2, 1), _airy_zero_index(y_max) + 3)
    t = 3.0 * np.pi * (4.0 * k - 1.0) / 8.0
    inv = t ** -2.0
    y = t ** (2.0 / 3.0) * (1.0 + inv * (5.0 / 48.0 + inv * (-5.0 / 36.0 + inv * 77125.0 / 82944.0)))
    table = _airy_zero_magnitudes()
    y = np.where(k <= table.size, table[np.minimum(k, table.size) - 1], y)
    return y[(y > y_min) & (y <= y_max)]
