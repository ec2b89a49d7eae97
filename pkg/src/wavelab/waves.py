"""Single elementary waves: application to states, typing, inversion, speeds."""
from __future__ import annotations

import enum
import math

import numpy as np

from . import kernels
from .gas import (
    DEFAULT_REFERENCE,
    EntropyState,
    GasConstants,
    PrimitiveState,
    ReferenceConstants,
    primitive_from_entropy,
)
from .kernels import Direction, DomainError

__all__ = [
    "WaveFamily",
    "WaveType",
    "TIE_BAND",
    "apply_wave_primitive",
    "apply_wave_entropy",
    "wave_type_of",
    "measure_strength",
    "wave_speed",
    "NotConnectedError",
    "wave_type_codes",
    "apply_wave_arrays",
]

#: Strengths within this distance of 1 are treated as "no wave".
TIE_BAND = 1e-12


class WaveFamily(enum.Enum):
    BACKWARD = "BackwardAcoustic"
    CONTACT = "Contact"
    FORWARD = "ForwardAcoustic"

    @property
    def direction(self) -> Direction:
        if self is WaveFamily.CONTACT:
            raise ValueError("a contact has no acoustic direction")
        return Direction.BACKWARD if self is WaveFamily.BACKWARD else Direction.FORWARD


class WaveType(enum.Enum):
    SHOCK = "Shock"
    RAREFACTION = "Rarefaction"
    CONTACT_UP = "ContactUp"
    CONTACT_DOWN = "ContactDown"
    NULL = "Null"


class NotConnectedError(ValueError):
    """Two states are not joined by a single wave of the requested family."""


def _positive(strength: float) -> float:
    strength = float(strength)
    if not (strength > 0.0 and math.isfinite(strength)):
        raise DomainError(f"wave strength must be positive and finite, got {strength!r}")
    return strength


def apply_wave_primitive(
    family: WaveFamily, strength: float, left: PrimitiveState, gas: GasConstants
) -> PrimitiveState:
    """Return the state to the right of a wave of given strength.

    Acoustic strengths are pressure ratios, contact strengths are
    specific-volume ratios (right over left in both cases).

    Examples
    --------
    >>> from wavelab.gas import derive_constants
    >>> s = apply_wave_primitive(WaveFamily.CONTACT, 3.0, PrimitiveState(1.0, 5.0, 2.0),
    ...                          derive_constants(1.4))
    >>> s.tau, s.u, s.p
    (3.0, 5.0, 2.0)
    """
    strength = _positive(strength)
    tau, u, p = left.as_tuple()
    if family is WaveFamily.CONTACT:
        return PrimitiveState(strength * tau, u, p)
    d = family.direction
    scale = math.sqrt(tau * p)
    du = kernels.psi(d, strength, gas) * scale
    u_right = u - du if d is Direction.BACKWARD else u + du
    return PrimitiveState(kernels.phi(d, strength, gas) * tau, u_right, strength * p)


def apply_wave_entropy(
    family: WaveFamily,
    strength: float,
    left: EntropyState,
    gas: GasConstants,
    ref: ReferenceConstants = DEFAULT_REFERENCE,
) -> EntropyState:
    """Entropy-variable counterpart of :func:`apply_wave_primitive`.

    Here every strength is a specific-volume ratio: ``l`` in (a, inf) for
    backward waves, ``c > 0`` for contacts and ``iota`` in (0, 1/a) for
    forward waves.
    """
    strength = float(strength)
    tau, u, S = left.tau, left.u, left.S
    if family is WaveFamily.CONTACT:
        strength = _positive(strength)
        return EntropyState(strength * tau, u, S + ref.c_v * gas.gamma * math.log(strength))
    d = family.direction
    p = primitive_from_entropy(left, gas, ref).p
    scale = math.sqrt(tau * p)
    du = kernels.xi(d, strength, gas) * scale
    u_right = u - du if d is Direction.BACKWARD else u + du
    return EntropyState(strength * tau, u_right, S + ref.c_v * kernels.eta(d, strength, gas))


def wave_type_of(family: WaveFamily, strength: float, band: float = TIE_BAND) -> WaveType:
    """Classify a wave from its strength.

    Backward waves are shocks for strength > 1, forward waves for
    strength < 1.  A contact with volume ratio > 1 carries an entropy jump
    up (``ContactUp``), below 1 an entropy jump down.
    """
    strength = _positive(strength)
    if abs(strength - 1.0) <= band:
        return WaveType.NULL
    if family is WaveFamily.CONTACT:
        return WaveType.CONTACT_UP if strength > 1.0 else WaveType.CONTACT_DOWN
    if family is WaveFamily.BACKWARD:
        return WaveType.SHOCK if strength > 1.0 else WaveType.RAREFACTION
    return WaveType.SHOCK if strength < 1.0 else WaveType.RAREFACTION


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def measure_strength(
    family: WaveFamily,
    left: PrimitiveState,
    right: PrimitiveState,
    gas: GasConstants,
    *,
    tol: float = 1e-8,
) -> float:
    """Recover the strength of the single wave joining ``left`` to ``right``.

    Raises
    ------
    NotConnectedError
        If re-applying the recovered strength to ``left`` misses ``right``
        by more than ``tol`` (relative in tau and p, scaled by
        ``sqrt(tau p)`` in u).
    """
    if family is WaveFamily.CONTACT:
        strength = right.tau / left.tau
    else:
        strength = right.p / left.p
    rebuilt = apply_wave_primitive(family, strength, left, gas)
    scale = math.sqrt(left.tau * left.p)
    err = max(
        _rel(rebuilt.tau, right.tau),
        _rel(rebuilt.p, right.p),
        abs(rebuilt.u - right.u) / scale,
    )
    if err > tol:
        raise NotConnectedError(
            f"states are not connected by a single {family.value} wave (residual {err:.3e})"
        )
    return strength


def wave_speed(
    family: WaveFamily, strength: float, left: PrimitiveState, gas: GasConstants
) -> tuple[float, float]:
    """Lagrangian speed interval ``(low, high)`` occupied by a wave.

    Rarefactions span the characteristic speeds ``-/+ sqrt(gamma p / tau)`` of
    their two end states, shocks move with the Rankine-Hugoniot mass flux
    ``-/+ sqrt((p_r - p_l) / (tau_l - tau_r))`` and contacts are at rest.
    Backward speeds are nonpositive and forward speeds nonnegative.
    """
    strength = _positive(strength)
    if family is WaveFamily.CONTACT:
        return (0.0, 0.0)
    right = apply_wave_primitive(family, strength, left, gas)
    sign = -1.0 if family is WaveFamily.BACKWARD else 1.0
    kind = wave_type_of(family, strength)
    if kind is WaveType.SHOCK:
        flux = math.sqrt((right.p - left.p) / (left.tau - right.tau))
        return (sign * flux, sign * flux)
    speeds = sorted(
        sign * math.sqrt(gas.gamma * s.p / s.tau) for s in (left, right)
    )
    return (speeds[0], speeds[1])


_TYPE_TABLE = (WaveType.NULL, WaveType.SHOCK, WaveType.RAREFACTION,
               WaveType.CONTACT_UP, WaveType.CONTACT_DOWN)


def wave_type_codes(family: WaveFamily, strengths, band: float = TIE_BAND):
    """Vectorized :func:`wave_type_of` returning an object array of WaveType.

    NaN strengths (absent waves, e.g. in vacuum outcomes) map to ``None``.
    """
    s = np.asarray(strengths, dtype=float)
    above = s > 1.0
    if family is WaveFamily.CONTACT:
        code = np.where(above, 3, 4)
    elif family is WaveFamily.BACKWARD:
        code = np.where(above, 1, 2)
    else:
        code = np.where(above, 2, 1)
    code = np.where(np.abs(s - 1.0) <= band, 0, code)
    table = np.array(_TYPE_TABLE + (None,), dtype=object)
    code = np.where(np.isnan(s), len(_TYPE_TABLE), code)
    return table[code]


def apply_wave_arrays(family: WaveFamily, strength, tau, u, p, gas: GasConstants):
    """Vectorized :func:`apply_wave_primitive` on arrays of states.

    Returns
    -------
    tuple of ndarray
        ``(tau, u, p)`` to the right of the wave.
    """
    strength = np.asarray(strength, dtype=float)
    if np.any(strength <= 0.0):
        raise DomainError("wave strengths must be positive")
    tau, u, p = (np.asarray(v, dtype=float) for v in (tau, u, p))
    if family is WaveFamily.CONTACT:
        return strength * tau, u + 0.0 * strength, p + 0.0 * strength
    d = family.direction
    du = kernels.psi(d, strength, gas) * np.sqrt(tau * p)
    u_right = u - du if d is Direction.BACKWARD else u + du
    return kernels.phi(d, strength, gas) * tau, u_right, strength * p
