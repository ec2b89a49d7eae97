"""Ideal polytropic gas: derived constants, state types and variable changes.

All formulas are written in terms of the adiabatic exponent ``gamma`` and the
four derived parameters

    a     = (gamma - 1) / (gamma + 1)
    kappa = sqrt(1 - a)
    nu    = sqrt(1 - a**2) / a
    zeta  = a / (1 + a) = (gamma - 1) / (2 gamma)

which appear as coefficients in every wave-curve formula of the package.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

__all__ = [
    "GasConstants",
    "PrimitiveState",
    "EntropyState",
    "ReferenceConstants",
    "Regime",
    "derive_constants",
    "sound_speed",
    "entropy_from_primitive",
    "primitive_from_entropy",
    "regime_of",
]

#: Values of gamma above this bound are accepted but trigger a warning.
GAMMA_SOFT_MAX = 10.0

#: Half-width of the band around a = 1/4 (gamma = 5/3) and a = 1/3 (gamma = 2)
#: inside which the boundary regime is selected.
REGIME_BAND = 1e-9


class Regime(enum.Enum):
    """Position of gamma relative to the threshold 5/3."""

    BELOW_FIVE_THIRDS = "BelowFiveThirds"
    AT_FIVE_THIRDS = "AtFiveThirds"
    ABOVE_FIVE_THIRDS = "AboveFiveThirds"


@dataclass(frozen=True)
class GasConstants:
    """Adiabatic exponent together with its derived parameters.

    Use :func:`derive_constants` (or :meth:`from_gamma`) rather than the
    constructor so that the derived fields are consistent.
    """

    gamma: float
    a: float
    kappa: float
    nu: float
    zeta: float

    @classmethod
    def from_gamma(cls, gamma: float) -> "GasConstants":
        return derive_constants(gamma)

    @property
    def regime(self) -> Regime:
        return regime_of(self)

    def __str__(self) -> str:
        return f"GasConstants(gamma={self.gamma!r})"


@dataclass(frozen=True)
class PrimitiveState:
    """Gas state in (specific volume, velocity, pressure) variables."""

    tau: float
    u: float
    p: float

    def __post_init__(self) -> None:
        for name in ("tau", "u", "p"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.tau <= 0.0:
            raise ValueError(f"specific volume must be positive, got {self.tau!r}")
        if self.p <= 0.0:
            raise ValueError(f"pressure must be positive, got {self.p!r}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.tau, self.u, self.p)


@dataclass(frozen=True)
class EntropyState:
    """Gas state in (specific volume, velocity, specific entropy) variables."""

    tau: float
    u: float
    S: float

    def __post_init__(self) -> None:
        for name in ("tau", "u", "S"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.tau <= 0.0:
            raise ValueError(f"specific volume must be positive, got {self.tau!r}")


@dataclass(frozen=True)
class ReferenceConstants:
    """Constants ``K`` and ``c_v`` of the law p = K tau^-gamma exp(S / c_v)."""

    K: float = 1.0
    c_v: float = 1.0

    def __post_init__(self) -> None:
        if not (self.K > 0.0 and self.c_v > 0.0):
            raise ValueError("K and c_v must both be strictly positive")


DEFAULT_REFERENCE = ReferenceConstants()


def derive_constants(gamma: float) -> GasConstants:
    """Build the derived gas parameters for an adiabatic exponent.

    Parameters
    ----------
    gamma : float
        Adiabatic exponent, must exceed 1.  Values above 10 are accepted
        with a :class:`UserWarning`.

    Returns
    -------
    GasConstants

    Raises
    ------
    ValueError
        If ``gamma <= 1`` or is not finite.

    Examples
    --------
    >>> g = derive_constants(5 / 3)
    >>> round(g.a, 12), round(g.zeta, 12)
    (0.25, 0.2)
    """
    gamma = float(gamma)
    if not math.isfinite(gamma) or gamma <= 1.0:
        raise ValueError(f"gamma must be a finite number > 1, got {gamma!r}")
    if gamma > GAMMA_SOFT_MAX:
        warnings.warn(
            f"gamma={gamma} exceeds {GAMMA_SOFT_MAX}; curves may degenerate numerically",
            UserWarning,
            stacklevel=2,
        )
    a = (gamma - 1.0) / (gamma + 1.0)
    kappa = math.sqrt(1.0 - a)
    nu = math.sqrt(1.0 - a * a) / a
    zeta = a / (1.0 + a)
    return GasConstants(gamma=gamma, a=a, kappa=kappa, nu=nu, zeta=zeta)


def regime_of(gas: GasConstants, band: float = REGIME_BAND) -> Regime:
    """Classify gamma against 5/3 (``a`` against 1/4) with a small tie band."""
    if abs(gas.a - 0.25) < band:
        return Regime.AT_FIVE_THIRDS
    return Regime.BELOW_FIVE_THIRDS if gas.a < 0.25 else Regime.ABOVE_FIVE_THIRDS


def sound_speed(state: PrimitiveState, gas: GasConstants) -> float:
    """Lagrangian sound speed sqrt(gamma * tau * p)."""
    return math.sqrt(gas.gamma * state.tau * state.p)


def entropy_from_primitive(
    state: PrimitiveState,
    gas: GasConstants,
    ref: ReferenceConstants = DEFAULT_REFERENCE,
) -> EntropyState:
    """Convert (tau, u, p) to (tau, u, S) with S = c_v log(p tau^gamma / K)."""
    S = ref.c_v * (math.log(state.p / ref.K) + gas.gamma * math.log(state.tau))
    return EntropyState(tau=state.tau, u=state.u, S=S)


def primitive_from_entropy(
    state: EntropyState,
    gas: GasConstants,
    ref: ReferenceConstants = DEFAULT_REFERENCE,
) -> PrimitiveState:
    """Convert (tau, u, S) to (tau, u, p) with p = K tau^-gamma exp(S / c_v)."""
    p = ref.K * math.exp(state.S / ref.c_v - gas.gamma * math.log(state.tau))
    return PrimitiveState(tau=state.tau, u=state.u, p=p)
