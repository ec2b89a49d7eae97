"""Scalar auxiliary functions that parametrize the elementary wave curves.

Pressure-ratio kernels ``phi`` and ``psi`` describe a wave of strength ``q``
(pressure behind over pressure ahead, read left to right), while ``xi`` and
``eta`` describe the same waves parametrized by the specific-volume ratio.

Every function accepts a float or a NumPy array and returns the same kind.
The split between shock and rarefaction formulas happens at ``q == 1``; the
rarefaction formula is used at exactly 1 (both branches agree there up to the
second derivative).
"""
from __future__ import annotations

import enum
from typing import Union

import numpy as np

from .gas import GasConstants

__all__ = ["Direction", "DomainError", "phi", "psi", "xi", "eta", "gamma_fn"]

ArrayLike = Union[float, np.ndarray]


class Direction(enum.Enum):
    """Acoustic family: backward (1-family) or forward (3-family)."""

    BACKWARD = "Backward"
    FORWARD = "Forward"


class DomainError(ValueError):
    """Raised when a strength lies outside the physical range of a kernel."""


def _prepare(q: ArrayLike) -> tuple[np.ndarray, bool]:
    arr = np.asarray(q, dtype=float)
    return arr, arr.ndim == 0


def _finish(values: np.ndarray, scalar: bool) -> ArrayLike:
    return float(values) if scalar else values


def _require(mask: np.ndarray, message: str) -> None:
    if not np.all(mask):
        raise DomainError(message)


def _rarefaction_branch(dir: Direction, q: np.ndarray) -> np.ndarray:
    # Backward rarefactions lower the pressure (q <= 1), forward ones raise it.
    return q <= 1.0 if dir is Direction.BACKWARD else q >= 1.0


def phi(dir: Direction, q: ArrayLike, gas: GasConstants) -> ArrayLike:
    """Specific-volume ratio across a wave of pressure ratio ``q``.

    Parameters
    ----------
    dir : Direction
        Wave family.
    q : float or ndarray
        Pressure ratio, must be positive.
    gas : GasConstants

    Returns
    -------
    float or ndarray
        ``q**(-1/gamma)`` on the rarefaction branch and the Hugoniot ratio
        ``(1 + a q) / (q + a)`` on the shock branch.
    """
    q, scalar = _prepare(q)
    _require(q > 0.0, "pressure ratio must be positive")
    a = gas.a
    rare = _rarefaction_branch(dir, q)
    out = np.where(rare, np.exp(-np.log(q) / gas.gamma), (1.0 + a * q) / (q + a))
    return _finish(out, scalar)


def psi(dir: Direction, q: ArrayLike, gas: GasConstants) -> ArrayLike:
    """Scaled velocity jump across a wave of pressure ratio ``q``.

    The velocity behind a backward wave is ``u - psi * sqrt(tau p)`` and
    behind a forward wave ``u + psi * sqrt(tau p)``, where (tau, u, p) is
    the state on the left.

    Parameters
    ----------
    dir : Direction
    q : float or ndarray
        Pressure ratio, must be positive.
    gas : GasConstants

    Returns
    -------
    float or ndarray
        ``nu (q**zeta - 1)`` on the rarefaction branch and
        ``kappa (q - 1) / sqrt(q + a)`` on the shock branch.
    """
    q, scalar = _prepare(q)
    _require(q > 0.0, "pressure ratio must be positive")
    rare = _rarefaction_branch(dir, q)
    with np.errstate(divide="ignore"):
        rarefaction = gas.nu * np.expm1(gas.zeta * np.log(q))
    shock = gas.kappa * (q - 1.0) / np.sqrt(q + gas.a)
    return _finish(np.where(rare, rarefaction, shock), scalar)


def _check_volume_ratio(dir: Direction, q: np.ndarray, gas: GasConstants) -> None:
    if dir is Direction.BACKWARD:
        _require(q > gas.a, f"backward volume ratio must exceed a={gas.a}")
    else:
        _require(
            (q > 0.0) & (q < 1.0 / gas.a),
            f"forward volume ratio must lie in (0, 1/a={1.0 / gas.a})",
        )


def _volume_rarefaction(dir: Direction, q: np.ndarray) -> np.ndarray:
    # In volume ratios backward rarefactions expand (q >= 1), forward ones compress.
    return q >= 1.0 if dir is Direction.BACKWARD else q <= 1.0


def xi(dir: Direction, q: ArrayLike, gas: GasConstants) -> ArrayLike:
    """Scaled velocity jump as a function of the specific-volume ratio.

    Parameters
    ----------
    dir : Direction
    q : float or ndarray
        Volume ratio: in (a, inf) for backward waves, in (0, 1/a) for
        forward waves.
    gas : GasConstants

    Raises
    ------
    DomainError
        If ``q`` leaves the family's range.
    """
    q, scalar = _prepare(q)
    _check_volume_ratio(dir, q, gas)
    a = gas.a
    rare = _volume_rarefaction(dir, q)
    rarefaction = gas.nu * np.expm1(0.5 * (1.0 - gas.gamma) * np.log(q))
    with np.errstate(invalid="ignore", divide="ignore"):
        shock = np.sqrt(1.0 + a) * (1.0 - q) / np.sqrt(q - a)
    return _finish(np.where(rare, rarefaction, shock), scalar)


def gamma_fn(s: ArrayLike, gas: GasConstants) -> ArrayLike:
    """Entropy factor ``s**gamma (1 - a s) / (s - a)`` on ``a < s < 1/a``."""
    s, scalar = _prepare(s)
    _require((s > gas.a) & (s < 1.0 / gas.a), "Gamma is defined on (a, 1/a)")
    return _finish(np.exp(_log_gamma(s, gas)), scalar)


def _log_gamma(s: np.ndarray, gas: GasConstants) -> np.ndarray:
    a = gas.a
    with np.errstate(invalid="ignore", divide="ignore"):
        return gas.gamma * np.log(s) + np.log1p(-a * s) - np.log(s - a)


def eta(dir: Direction, q: ArrayLike, gas: GasConstants) -> ArrayLike:
    """Entropy jump ``(S_right - S_left) / c_v`` as a function of the volume ratio.

    Zero across rarefactions and ``log Gamma(q)`` across shocks.  The sign is
    positive across backward shocks and negative across forward shocks,
    because entropy always increases from the pre-shock to the post-shock
    side and a forward shock has its post-shock side on the left.
    """
    q, scalar = _prepare(q)
    _check_volume_ratio(dir, q, gas)
    rare = _volume_rarefaction(dir, q)
    return _finish(np.where(rare, 0.0, _log_gamma(q, gas)), scalar)
