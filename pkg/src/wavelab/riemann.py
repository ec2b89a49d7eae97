"""Exact Riemann solver for Lagrangian gas dynamics of an ideal polytropic gas.

The solution consists of a backward wave of pressure ratio ``B``, a contact
of specific-volume ratio ``C`` and a forward wave of pressure ratio ``F``.
Traversing the fan from the left state (tau0, u0, p0) to the right state
(tau, u, p) gives

    p   = B F p0
    tau = C phi_b(B) phi_f(F) tau0
    (u - u0) / sqrt(tau0 p0) = psi_f(F) sqrt(C B phi_b(B)) - psi_b(B)

and eliminating C and F leaves one increasing equation for B, the curve
function ``curve_function``.  When the velocity gap is too large the two
rarefactions separate and a vacuum opens between them.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import partial
from typing import Optional

import numpy as np

from . import kernels
from .gas import GasConstants, PrimitiveState
from .kernels import Direction, DomainError
from .roots import solve_increasing
from .waves import WaveFamily, WaveType, wave_type_of

__all__ = [
    "EntropyJump",
    "RiemannSolution",
    "RiemannBatch",
    "curve_function",
    "vacuum_check",
    "solve",
    "solve_arrays",
    "assemble_fan",
    "entropy_direction",
    "ENTROPY_BAND",
]

DEFAULT_TOL = 1e-12

#: Entropy differences (in units of c_v) below this are reported as no jump.
ENTROPY_BAND = 1e-10


class EntropyJump(enum.Enum):
    UP = "Up"
    DOWN = "Down"
    NONE = "None"


def entropy_direction(delta_s: float, band: float = ENTROPY_BAND) -> EntropyJump:
    """Direction of a left-to-right entropy change given in units of c_v."""
    if abs(delta_s) <= band:
        return EntropyJump.NONE
    return EntropyJump.UP if delta_s > 0.0 else EntropyJump.DOWN


def contact_type_for(jump: EntropyJump) -> WaveType:
    return {
        EntropyJump.UP: WaveType.CONTACT_UP,
        EntropyJump.DOWN: WaveType.CONTACT_DOWN,
        EntropyJump.NONE: WaveType.NULL,
    }[jump]


@dataclass(frozen=True)
class RiemannSolution:
    """Outcome of a Riemann problem.

    ``B``, ``C``, ``F`` and the middle states are ``None`` when a vacuum
    forms; ``fan`` then holds the Lagrangian speeds bounding the vacuum.
    """

    vacuum: bool
    B: Optional[float]
    C: Optional[float]
    F: Optional[float]
    left_middle: Optional[PrimitiveState]
    right_middle: Optional[PrimitiveState]
    wave_types: tuple[WaveType, WaveType, WaveType]
    fan: Optional[tuple[float, float]]
    entropy_jump: EntropyJump
    residuals: dict = field(default_factory=dict)


@dataclass
class RiemannBatch:
    """Array-valued Riemann solutions (NaN strengths where a vacuum forms)."""

    vacuum: np.ndarray
    B: np.ndarray
    C: np.ndarray
    F: np.ndarray
    p_mid: np.ndarray
    u_mid: np.ndarray
    tau_left_mid: np.ndarray
    tau_right_mid: np.ndarray
    velocity_mismatch: np.ndarray
    curve_residual: np.ndarray
    entropy_delta: np.ndarray


def curve_function(B, left: PrimitiveState, right: PrimitiveState, gas: GasConstants):
    """Evaluate psi_b(B) + sqrt(tau p / (tau0 p0)) psi_b(p0 B / p).

    Parameters
    ----------
    B : float or ndarray
        Candidate backward-wave pressure ratio, positive.
    left, right : PrimitiveState
        Left state (tau0, u0, p0) and right state (tau, u, p).
    gas : GasConstants

    Returns
    -------
    float or ndarray
        Value to be matched with ``(u0 - u) / sqrt(tau0 p0)``.
    """
    B_arr = np.asarray(B, dtype=float)
    if np.any(B_arr <= 0.0):
        raise DomainError("B must be positive")
    ratio = math.sqrt(right.tau * right.p / (left.tau * left.p))
    value = kernels.psi(Direction.BACKWARD, B_arr, gas) + ratio * kernels.psi(
        Direction.BACKWARD, B_arr * left.p / right.p, gas
    )
    return float(value) if B_arr.ndim == 0 else value


def _vacuum_mask(tau0, u0, p0, tau, u, p, gas: GasConstants):
    c0 = np.sqrt(gas.gamma * tau0 * p0)
    c1 = np.sqrt(gas.gamma * tau * p)
    return (u - u0) >= 2.0 / (gas.gamma - 1.0) * (c0 + c1)


def vacuum_check(left: PrimitiveState, right: PrimitiveState, gas: GasConstants) -> bool:
    """True when a vacuum forms: u - u0 >= 2/(gamma-1) (c0 + c), boundary included."""
    return bool(_vacuum_mask(*left.as_tuple(), *right.as_tuple(), gas))


def _log_curve_residual(gas, t, ratio, pressure_ratio, target):
    B = np.exp(t)
    psi_b = kernels.psi
    return (
        psi_b(Direction.BACKWARD, B, gas)
        + ratio * psi_b(Direction.BACKWARD, B / pressure_ratio, gas)
        - target
    )


def solve_arrays(tau0, u0, p0, tau, u, p, gas: GasConstants, tol: float = DEFAULT_TOL) -> RiemannBatch:
    """Solve many Riemann problems at once.

    All arguments broadcast together.  Returns a :class:`RiemannBatch` whose
    strength arrays are NaN where a vacuum forms.
    """
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    arrays = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (tau0, u0, p0, tau, u, p)))
    tau0, u0, p0, tau, u, p = (np.ravel(v) for v in arrays)
    shape = arrays[0].shape
    vac = _vacuum_mask(tau0, u0, p0, tau, u, p, gas)
    scale = np.sqrt(tau0 * p0)
    ratio = np.sqrt(tau * p) / scale
    P = p / p0
    target = (u0 - u) / scale

    n = tau0.size
    B = np.full(n, np.nan)
    resid = np.full(n, np.nan)
    idx = np.flatnonzero(~vac)
    if idx.size:
        root = solve_increasing(
            partial(_log_curve_residual, gas),
            (ratio[idx], P[idx], target[idx]),
            start=0.5 * np.log(P[idx]),
            xtol=1e-3 * tol,
        )
        B[idx] = np.exp(root.x)
        resid[idx] = root.residual

    with np.errstate(invalid="ignore"):
        F = P / B
        safe_B = np.where(vac, 1.0, B)
        safe_F = np.where(vac, 1.0, F)
        phi_B = kernels.phi(Direction.BACKWARD, safe_B, gas)
        phi_F = kernels.phi(Direction.FORWARD, safe_F, gas)
        C = np.where(vac, np.nan, (tau / tau0) / (phi_B * phi_F))
        tau_lm = phi_B * tau0
        p_lm = safe_B * p0
        u_lm = u0 - kernels.psi(Direction.BACKWARD, safe_B, gas) * scale
        tau_rm = tau / phi_F
        p_rm = p / safe_F
        u_rm = u - kernels.psi(Direction.FORWARD, safe_F, gas) * np.sqrt(tau_rm * p_rm)
        p_mid = np.where(vac, np.nan, 0.5 * (p_lm + p_rm))
        u_mid = np.where(vac, np.nan, 0.5 * (u_lm + u_rm))
        mismatch = np.where(vac, np.nan, np.abs(u_lm - u_rm) / scale)
        tau_lm = np.where(vac, np.nan, tau_lm)
        tau_rm = np.where(vac, np.nan, tau_rm)

    entropy_delta = np.log(p / p0) + gas.gamma * np.log(tau / tau0)

    def shaped(v):
        return v.reshape(shape)

    return RiemannBatch(
        vacuum=shaped(vac),
        B=shaped(B),
        C=shaped(C),
        F=shaped(F),
        p_mid=shaped(p_mid),
        u_mid=shaped(u_mid),
        tau_left_mid=shaped(tau_lm),
        tau_right_mid=shaped(tau_rm),
        velocity_mismatch=shaped(mismatch),
        curve_residual=shaped(resid),
        entropy_delta=shaped(entropy_delta),
    )


def assemble_fan(left: PrimitiveState, right: PrimitiveState, gas: GasConstants) -> RiemannSolution:
    """Vacuum solution: two rarefactions bounding an empty region.

    The fan spans Lagrangian speeds ``-sqrt(gamma p0 / tau0)`` to
    ``+sqrt(gamma p / tau)``; the entropy jump direction compares the
    entropies of the two initial states (each rarefaction is isentropic).

    Raises
    ------
    ValueError
        If the states do not produce a vacuum.
    """
    if not vacuum_check(left, right, gas):
        raise ValueError("assemble_fan called for states that do not produce a vacuum")
    delta = math.log(right.p / left.p) + gas.gamma * math.log(right.tau / left.tau)
    jump = entropy_direction(delta)
    fan = (
        -math.sqrt(gas.gamma * left.p / left.tau),
        math.sqrt(gas.gamma * right.p / right.tau),
    )
    return RiemannSolution(
        vacuum=True,
        B=None,
        C=None,
        F=None,
        left_middle=None,
        right_middle=None,
        wave_types=(WaveType.RAREFACTION, contact_type_for(jump), WaveType.RAREFACTION),
        fan=fan,
        entropy_jump=jump,
        residuals={"entropy_delta": delta},
    )


def solve(
    left: PrimitiveState,
    right: PrimitiveState,
    gas: GasConstants,
    tol: float = DEFAULT_TOL,
) -> RiemannSolution:
    """Solve the Riemann problem with initial states ``left`` | ``right``.

    Parameters
    ----------
    left, right : PrimitiveState
    gas : GasConstants
    tol : float
        Tolerance on log B (i.e. relative on B); must be positive.

    Returns
    -------
    RiemannSolution

    Examples
    --------
    >>> from wavelab.gas import derive_constants
    >>> s = PrimitiveState(1.0, 0.0, 1.0)
    >>> sol = solve(s, s, derive_constants(1.4))
    >>> sol.B, sol.C, sol.F
    (1.0, 1.0, 1.0)
    """
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    if vacuum_check(left, right, gas):
        return assemble_fan(left, right, gas)
    batch = solve_arrays(*([v] for v in left.as_tuple() + right.as_tuple()), gas, tol=tol)
    B, C, F = float(batch.B[0]), float(batch.C[0]), float(batch.F[0])
    p_mid, u_mid = float(batch.p_mid[0]), float(batch.u_mid[0])
    left_middle = PrimitiveState(float(batch.tau_left_mid[0]), u_mid, p_mid)
    right_middle = PrimitiveState(float(batch.tau_right_mid[0]), u_mid, p_mid)
    types = (
        wave_type_of(WaveFamily.BACKWARD, B),
        wave_type_of(WaveFamily.CONTACT, C),
        wave_type_of(WaveFamily.FORWARD, F),
    )
    jump = {
        WaveType.CONTACT_UP: EntropyJump.UP,
        WaveType.CONTACT_DOWN: EntropyJump.DOWN,
        WaveType.NULL: EntropyJump.NONE,
    }[types[1]]
    phi_B = kernels.phi(Direction.BACKWARD, B, gas)
    phi_F = kernels.phi(Direction.FORWARD, F, gas)
    residuals = {
        "curve": abs(float(batch.curve_residual[0])),
        "velocity_mismatch": float(batch.velocity_mismatch[0]),
        "pressure_relation": abs(right.p - B * F * left.p) / right.p,
        "volume_relation": abs(right.tau - C * phi_B * phi_F * left.tau) / right.tau,
    }
    return RiemannSolution(
        vacuum=False,
        B=B,
        C=C,
        F=F,
        left_middle=left_middle,
        right_middle=right_middle,
        wave_types=types,
        fan=None,
        entropy_jump=jump,
        residuals=residuals,
    )
