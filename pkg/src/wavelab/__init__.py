"""Exact Riemann solutions and elementary wave interactions for polytropic gases.

The package computes the outgoing waves of every interaction between two
elementary waves (shock, rarefaction or contact) of the one-dimensional
Euler equations in Lagrangian coordinates, and samples the curves in the
plane of incoming strengths across which an outgoing wave changes type.
"""
from .gas import (
    DEFAULT_REFERENCE,
    EntropyState,
    GasConstants,
    PrimitiveState,
    ReferenceConstants,
    Regime,
    derive_constants,
    entropy_from_primitive,
    primitive_from_entropy,
    regime_of,
    sound_speed,
)
from .kernels import Direction, DomainError, eta, gamma_fn, phi, psi, xi
from .waves import (
    WaveFamily,
    WaveType,
    apply_wave_entropy,
    apply_wave_primitive,
    measure_strength,
    wave_speed,
    wave_type_of,
)
from .riemann import EntropyJump, RiemannSolution, solve, vacuum_check
from .interactions import (
    IncomingPair,
    InteractionKind,
    InteractionOutcome,
    classify_pair,
    entropy_cross_check,
    interaction_residual,
    solve_interaction,
    vacuum_condition,
)
from .atlas import CurveId, CurveSample, GridSpec, Panel, sample_atlas, special_points

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_REFERENCE", "EntropyState", "GasConstants", "PrimitiveState",
    "ReferenceConstants", "Regime", "derive_constants", "entropy_from_primitive",
    "primitive_from_entropy", "regime_of", "sound_speed",
    "Direction", "DomainError", "eta", "gamma_fn", "phi", "psi", "xi",
    "WaveFamily", "WaveType", "apply_wave_entropy", "apply_wave_primitive",
    "measure_strength", "wave_speed", "wave_type_of",
    "EntropyJump", "RiemannSolution", "solve", "vacuum_check",
    "IncomingPair", "InteractionKind", "InteractionOutcome", "classify_pair",
    "entropy_cross_check", "interaction_residual", "solve_interaction", "vacuum_condition",
    "CurveId", "CurveSample", "GridSpec", "Panel", "sample_atlas", "special_points",
]
