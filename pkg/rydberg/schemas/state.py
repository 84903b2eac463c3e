"""Hydrogenic state and Laguerre-norm parameter models."""
from typing import Optional

from pydantic import BaseModel, ConfigDict, model_validator

from rydberg.exceptions import DomainError, QuantumNumberError


def quantum_number_violation(n: int, l: int, m: int, Z: float) -> Optional[str]:
    """Name the first violated quantum-number constraint, or None.

    Args:
        n: Principal quantum number
        l: Orbital quantum number
        m: Magnetic quantum number
        Z: Nuclear charge

    Returns:
        Constraint message, or None when the labels describe a bound state
    """
    if n < 1:
        return "n must satisfy n ≥ 1"
    if l < 0:
        return "l must satisfy l ≥ 0"
    if l > n - 1:
        return "l must satisfy l ≤ n−1"
    if abs(m) > l:
        return "m must satisfy |m| ≤ l"
    if not Z > 0:
        return "Z must satisfy Z > 0"
    return None


class QuantumState(BaseModel):
    """Labels (n, l, m, Z) of a hydrogenic bound state, in atomic units."""

    model_config = ConfigDict(frozen=True)

    n: int
    l: int
    m: int = 0
    Z: float = 1.0

    @model_validator(mode="after")
    def check_quantum_numbers(self) -> "QuantumState":
        """Reject labels that do not describe a bound state."""
        violation = quantum_number_violation(self.n, self.l, self.m, self.Z)
        if violation:
            raise ValueError(violation)
        return self

    @classmethod
    def build(cls, n: int, l: int, m: int = 0, Z: float = 1.0) -> "QuantumState":
        """Construct a state, raising QuantumNumberError on invalid labels.

        Raises:
            QuantumNumberError: If a quantum-number constraint is violated
        """
        violation = quantum_number_violation(n, l, m, Z)
        if violation:
            raise QuantumNumberError(violation)
        return cls(n=n, l=l, m=m, Z=Z)

    @property
    def energy(self) -> float:
        """Bound-state energy E = −Z²/(2n²) in hartree."""
        return -self.Z ** 2 / (2.0 * self.n ** 2)

    @property
    def radial_scale(self) -> float:
        """Factor 2Z/n mapping r to the Laguerre variable r̃."""
        return 2.0 * self.Z / self.n

    @property
    def degree(self) -> int:
        """Degree n − l − 1 of the radial Laguerre polynomial."""
        return self.n - self.l - 1

    @property
    def alpha(self) -> int:
        """Laguerre parameter 2l + 1."""
        return 2 * self.l + 1

    def with_charge(self, Z: float) -> "QuantumState":
        """Same quantum numbers, different nuclear charge."""
        return QuantumState.build(self.n, self.l, self.m, Z)


class LaguerreNormSpec(BaseModel):
    """Parameters (k, α, p, β) of the norm N = ∫ ([L̂_k^(α)]² ω_α)^p x^β dx."""

    model_config = ConfigDict(frozen=True)

    degree: int
    alpha: float
    p: float
    beta: float

    @model_validator(mode="after")
    def check_convergence(self) -> "LaguerreNormSpec":
        """Validate the domain and the convergence condition β + pα > −1."""
        if self.degree < 0:
            raise ValueError("degree must be ≥ 0")
        if not self.alpha > -1:
            raise ValueError("alpha must be > −1")
        if not self.p > 0:
            raise ValueError("p must be > 0")
        if not self.beta + self.p * self.alpha > -1:
            raise ValueError("convergence at the origin requires beta + p*alpha > −1")
        return self

    @classmethod
    def build(cls, degree: int, alpha: float, p: float, beta: float) -> "LaguerreNormSpec":
        """Construct a spec, raising DomainError when it is invalid."""
        if degree < 0:
            raise DomainError("must be ≥ 0", field="degree")
        if not alpha > -1:
            raise DomainError("must be > −1", field="alpha")
        if not p > 0:
            raise DomainError("must be > 0", field="p")
        if not beta + p * alpha > -1:
            raise DomainError(
                f"beta + p*alpha = {beta + p * alpha:g} must exceed −1 for convergence at the origin"
            )
        return cls(degree=degree, alpha=alpha, p=p, beta=beta)

    @classmethod
    def hydrogenic(cls, state: QuantumState, p: float) -> "LaguerreNormSpec":
        """Norm parameters of a hydrogenic state: k = n−l−1, α = 2l+1, β = 2−p."""
        return cls.build(state.degree, float(state.alpha), p, 2.0 - p)
