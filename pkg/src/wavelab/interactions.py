"""Pairwise interactions of elementary waves.

Two adjacent waves define an interaction Riemann problem between the far
left and far right states.  Writing its solution as a backward wave ``B``, a
contact ``C`` and a forward wave ``F`` gives three relations per group:

* Group I (head-on, forward ``f`` on the left, backward ``b`` on the right):
  ``bf = BF``;
* Group II (forward ``f`` on the left meets a contact ``c``): ``f = BF``;
* Group III (overtaking, backward ``x`` on the left, backward ``y`` on the
  right): ``xy = BF``;

together with a specific-volume relation (solved for ``C``) and a velocity
relation which, after eliminating ``C`` and ``F``, is one increasing equation
in ``B`` (:func:`interaction_residual`).

The ten kinds follow the figure convention: Ia/Ib/Ic are S->S<-, S->R<-,
R->R<-; IIa..IId combine a forward shock or rarefaction with a contact
c < 1 or c > 1; IIIa/IIIb/IIIc are S<-S<-, S<-R<-, R<-S<-.  Mirror images of
these configurations (x -> -x) are recognised by :func:`classify_pair`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import partial
from typing import Optional

import numpy as np

from . import kernels
from .analysis import aux_M, aux_N, v_fn
from .gas import DEFAULT_REFERENCE, GasConstants, ReferenceConstants
from .kernels import Direction, DomainError
from .riemann import EntropyJump, contact_type_for, entropy_direction
from .roots import solve_increasing
from .waves import TIE_BAND, WaveFamily, WaveType, wave_type_of

__all__ = [
    "InteractionKind",
    "IncomingPair",
    "InteractionOutcome",
    "InteractionBatch",
    "EntropyCrossCheck",
    "classify_pair",
    "canonical_pair",
    "interaction_residual",
    "vacuum_condition",
    "vacuum_mask",
    "solve_interaction",
    "solve_interaction_arrays",
    "entropy_cross_check",
    "entropy_cross_check_arrays",
    "theorem_clauses",
    "valid_mask",
]

DEFAULT_TOL = 1e-12


class InteractionKind(enum.Enum):
    IA = "Ia"
    IB = "Ib"
    IC = "Ic"
    IIA = "IIa"
    IIB = "IIb"
    IIC = "IIc"
    IID = "IId"
    IIIA = "IIIa"
    IIIB = "IIIb"
    IIIC = "IIIc"

    @property
    def group(self) -> int:
        return {"I": 1, "II": 2, "III": 3}[self.value.rstrip("abcd")]

    @classmethod
    def parse(cls, label: str) -> "InteractionKind":
        for kind in cls:
            if kind.value.lower() == label.strip().lower():
                return kind
        raise ValueError(f"unknown interaction kind {label!r}")


# Families of the (left, right) incoming waves and the required side of 1
# for each strength: +1 means "> 1", -1 means "< 1".
_FAMILIES = {
    1: (WaveFamily.FORWARD, WaveFamily.BACKWARD),
    2: (WaveFamily.FORWARD, WaveFamily.CONTACT),
    3: (WaveFamily.BACKWARD, WaveFamily.BACKWARD),
}
_SIDES = {
    InteractionKind.IA: (-1, +1),
    InteractionKind.IB: (-1, -1),
    InteractionKind.IC: (+1, -1),
    InteractionKind.IIA: (-1, -1),
    InteractionKind.IIB: (-1, +1),
    InteractionKind.IIC: (+1, -1),
    InteractionKind.IID: (+1, +1),
    InteractionKind.IIIA: (+1, +1),
    InteractionKind.IIIB: (+1, -1),
    InteractionKind.IIIC: (-1, +1),
}
_BY_PATTERN = {(kind.group, sides): kind for kind, sides in _SIDES.items()}


def valid_mask(kind: InteractionKind, s_left, s_right):
    """Elementwise check that strengths fit the kind and avoid the tie band."""
    s_left = np.asarray(s_left, dtype=float)
    s_right = np.asarray(s_right, dtype=float)
    ok = (s_left > 0.0) & (s_right > 0.0)
    ok &= (np.abs(s_left - 1.0) > TIE_BAND) & (np.abs(s_right - 1.0) > TIE_BAND)
    side_l, side_r = _SIDES[kind]
    ok &= np.sign(s_left - 1.0) == side_l
    ok &= np.sign(s_right - 1.0) == side_r
    return ok & np.isfinite(s_left) & np.isfinite(s_right)


@dataclass(frozen=True)
class IncomingPair:
    """Two incoming waves in canonical orientation.

    Group I: ``s_left = f`` (forward wave), ``s_right = b`` (backward wave).
    Group II: ``s_left = f`` (forward wave), ``s_right = c`` (contact).
    Group III: ``s_left = x``, ``s_right = y`` (both backward waves).
    """

    kind: InteractionKind
    s_left: float
    s_right: float

    def __post_init__(self) -> None:
        if not bool(valid_mask(self.kind, self.s_left, self.s_right)):
            side = {+1: "> 1", -1: "< 1"}
            l, r = _SIDES[self.kind]
            raise ValueError(
                f"{self.kind.value} needs s_left {side[l]} and s_right {side[r]} "
                f"(outside a {TIE_BAND:g} band around 1); got "
                f"({self.s_left!r}, {self.s_right!r})"
            )

    @property
    def product(self) -> float:
        """Pressure ratio across the whole pair (bf, f, or xy)."""
        if self.kind.group == 2:
            return self.s_left
        return self.s_left * self.s_right


def _mirror(family: WaveFamily, strength: float) -> tuple[WaveFamily, float]:
    swap = {
        WaveFamily.BACKWARD: WaveFamily.FORWARD,
        WaveFamily.FORWARD: WaveFamily.BACKWARD,
        WaveFamily.CONTACT: WaveFamily.CONTACT,
    }
    return swap[family], 1.0 / strength


def canonical_pair(
    left_family: WaveFamily,
    left_strength: float,
    right_family: WaveFamily,
    right_strength: float,
) -> tuple[Optional[IncomingPair], bool]:
    """Bring a pair of adjacent waves to canonical orientation.

    Returns
    -------
    (pair, mirrored)
        ``pair`` is ``None`` when the waves never meet.  ``mirrored`` tells
        whether the reflection x -> -x was applied; under it the left and
        right waves swap, backward and forward families swap and every
        strength is inverted.

    Raises
    ------
    ValueError
        For a contact-contact pair, nonpositive strengths or acoustic
        strengths within the tie band of 1.
    """
    for fam, s in ((left_family, left_strength), (right_family, right_strength)):
        if not s > 0.0:
            raise ValueError("strengths must be positive")
        if abs(s - 1.0) <= TIE_BAND:
            raise ValueError(f"{fam.value} strength {s!r} is within the tie band of 1")
    if left_family is WaveFamily.CONTACT and right_family is WaveFamily.CONTACT:
        raise ValueError("two contacts do not interact")

    mirrored = False
    lf, ls, rf, rs = left_family, left_strength, right_family, right_strength
    if (lf, rf) in (
        (WaveFamily.CONTACT, WaveFamily.BACKWARD),
        (WaveFamily.FORWARD, WaveFamily.FORWARD),
    ) or (
        (lf, rf) == (WaveFamily.FORWARD, WaveFamily.BACKWARD) and ls > 1.0 and rs > 1.0
    ):
        (rf, rs), (lf, ls) = _mirror(lf, ls), _mirror(rf, rs)
        mirrored = True

    group = {
        (WaveFamily.FORWARD, WaveFamily.BACKWARD): 1,
        (WaveFamily.FORWARD, WaveFamily.CONTACT): 2,
        (WaveFamily.BACKWARD, WaveFamily.BACKWARD): 3,
    }.get((lf, rf))
    if group is None:
        return None, mirrored
    sides = (1 if ls > 1.0 else -1, 1 if rs > 1.0 else -1)
    kind = _BY_PATTERN.get((group, sides))
    if kind is None:  # two backward rarefactions
        return None, mirrored
    return IncomingPair(kind, ls, rs), mirrored


def classify_pair(
    left_family: WaveFamily,
    left_strength: float,
    right_family: WaveFamily,
    right_strength: float,
) -> Optional[InteractionKind]:
    """Interaction kind of two adjacent waves, or ``None`` if they never meet.

    Mirror images of the ten canonical configurations map to the same kind.

    Examples
    --------
    >>> classify_pair(WaveFamily.BACKWARD, 2.0, WaveFamily.BACKWARD, 0.5)
    <InteractionKind.IIIB: 'IIIb'>
    >>> classify_pair(WaveFamily.BACKWARD, 0.5, WaveFamily.BACKWARD, 0.5) is None
    True
    """
    pair, _ = canonical_pair(left_family, left_strength, right_family, right_strength)
    return None if pair is None else pair.kind


# --- residuals -------------------------------------------------------------

def _psi_b(q, gas):
    return kernels.psi(Direction.BACKWARD, q, gas)


def _psi_f(q, gas):
    return kernels.psi(Direction.FORWARD, q, gas)


def _residual(group: int, B, s_left, s_right, gas: GasConstants):
    if group == 1:
        f, b = s_left, s_right
        Nf = aux_N(f, gas)
        return (
            _psi_b(B, gas)
            + _psi_b(B / (b * f), gas) * aux_M(b, gas) * Nf
            + _psi_f(f, gas)
            - Nf * _psi_b(b, gas)
        )
    if group == 2:
        f, c = s_left, s_right
        return _psi_b(B, gas) + np.sqrt(c) * aux_N(f, gas) * _psi_b(B / f, gas) + _psi_f(f, gas)
    x, y = s_left, s_right
    Mx = aux_M(x, gas)
    return (
        _psi_b(B, gas)
        + _psi_b(B / (x * y), gas) * Mx * aux_M(y, gas)
        - _psi_b(x, gas)
        - _psi_b(y, gas) * Mx
    )


def interaction_residual(kind: InteractionKind, B, pair: IncomingPair, gas: GasConstants):
    """Group equation for the outgoing backward strength ``B``.

    Group I evaluates
    ``psi_b(B) + psi_b(B/(bf)) M(b) N(f) + psi_f(f) - N(f) psi_b(b)``,
    group II ``psi_b(B) + sqrt(c) N(f) psi_b(B/f) + psi_f(f)`` and group III
    ``psi_b(B) + psi_b(B/(xy)) M(x) M(y) - psi_b(x) - psi_b(y) M(x)``.
    Each is strictly increasing in ``B`` and vanishes at the solution.
    """
    B_arr = np.asarray(B, dtype=float)
    if np.any(B_arr <= 0.0):
        raise DomainError("B must be positive")
    value = _residual(kind.group, B_arr, pair.s_left, pair.s_right, gas)
    return float(value) if B_arr.ndim == 0 else value


def vacuum_mask(kind: InteractionKind, s_left, s_right, gas: GasConstants):
    """Vectorized vacuum predicate (boundary counted as vacuum).

    Only Ic (``b**zeta + f**-zeta <= 1``), IIc (``(1 - sqrt c) f**zeta >= 2``)
    and IIIb (``y <= V(x)``) can produce a vacuum.
    """
    s_left = np.asarray(s_left, dtype=float)
    s_right = np.asarray(s_right, dtype=float)
    z = gas.zeta
    if kind is InteractionKind.IC:
        f, b = s_left, s_right
        return b**z + f ** (-z) <= 1.0
    if kind is InteractionKind.IIC:
        f, c = s_left, s_right
        return (1.0 - np.sqrt(c)) * f**z >= 2.0
    if kind is InteractionKind.IIIB:
        x, y = s_left, s_right
        # y <= V(x)  <=>  2 y^zeta <= 1 - v(x)/nu
        return 2.0 * y**z <= 1.0 - v_fn(x, gas) / gas.nu
    return np.zeros(np.broadcast_shapes(s_left.shape, s_right.shape), dtype=bool)


def vacuum_condition(kind: InteractionKind, pair: IncomingPair, gas: GasConstants) -> bool:
    """True when the interaction opens a vacuum."""
    if pair.kind is not kind:
        raise ValueError(f"pair is of kind {pair.kind.value}, not {kind.value}")
    return bool(vacuum_mask(kind, pair.s_left, pair.s_right, gas))


def _incoming_entropy_delta(kind: InteractionKind, s_left, s_right, gas: GasConstants):
    """Total entropy change (units of c_v) across the two incoming waves."""
    eta, phi = kernels.eta, kernels.phi
    B_, F_ = Direction.BACKWARD, Direction.FORWARD
    if kind.group == 1:
        return eta(F_, phi(F_, s_left, gas), gas) + eta(B_, phi(B_, s_right, gas), gas)
    if kind.group == 2:
        return eta(F_, phi(F_, s_left, gas), gas) + gas.gamma * np.log(s_right)
    return eta(B_, phi(B_, s_left, gas), gas) + eta(B_, phi(B_, s_right, gas), gas)


_SERIES_BELOW = 1e-1
_SERIES_TERMS = np.arange(3, 21)


def _log_D_near_one(eps, gas: GasConstants):
    """log D(1 + eps) without cancellation.

    With alpha = a/(1+a) and beta = 1/(1+a),
    log D(1 + eps) = log1p(eps)/gamma + log1p(alpha eps) - log1p(beta eps);
    the first- and second-order terms cancel identically, so for small eps
    the power series starting at eps**3 is summed instead.
    """
    eps = np.asarray(eps, dtype=float)
    al, be = gas.a / (1.0 + gas.a), 1.0 / (1.0 + gas.a)
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = np.log1p(eps) / gas.gamma + np.log1p(al * eps) - np.log1p(be * eps)
    k = _SERIES_TERMS
    coef = (-1.0) ** (k + 1) / k * (1.0 / gas.gamma + al**k - be**k)
    small = np.where(np.abs(eps) < _SERIES_BELOW, eps, 0.0)
    series = np.sum(coef * small[..., None] ** k, axis=-1)
    return np.where(np.abs(eps) < _SERIES_BELOW, series, direct)


def _shock_log_D(q, shock, gas: GasConstants):
    """log D(q) where ``shock`` holds and 0 elsewhere.

    Every volume ratio factors as phi(q) = q**(-1/gamma) exp(L(q)) with
    L = log D across a shock and L = 0 across a rarefaction; L is the
    entropy jump in units of gamma c_v.
    """
    q = np.asarray(q, dtype=float)
    eps = np.where(shock, q - 1.0, 0.0)
    return np.where(shock, _log_D_near_one(eps, gas), 0.0)


def _contact_shift(group: int, s_left, s_right, B, F, gas: GasConstants):
    """log of outgoing over incoming contact strength.

    The q**(-1/gamma) factors of the volume ratios cancel because incoming
    and outgoing pressure ratios have equal products, leaving
    log(C/c) = sum L(incoming) - L(B) - L(F).  Each L is of third order in
    the wave strength, so this stays accurate where the quotient of volume
    ratios would round C and c to the same double.
    """
    out = -_shock_log_D(B, B > 1.0, gas) - _shock_log_D(F, F < 1.0, gas)
    if group == 1:
        f, b = s_left, s_right
        return out + _shock_log_D(f, f < 1.0, gas) + _shock_log_D(b, b > 1.0, gas)
    if group == 2:
        return out + _shock_log_D(s_left, s_left < 1.0, gas)
    x, y = s_left, s_right
    return out + _shock_log_D(x, x > 1.0, gas) + _shock_log_D(y, y > 1.0, gas)


@dataclass
class InteractionBatch:
    """Array-valued interaction outcomes (NaN strengths where vacuum forms)."""

    kind: InteractionKind
    s_left: np.ndarray
    s_right: np.ndarray
    vacuum: np.ndarray
    B: np.ndarray
    C: np.ndarray
    F: np.ndarray
    group_residual: np.ndarray
    product_residual: np.ndarray
    velocity_residual: np.ndarray
    entropy_delta: np.ndarray
    #: log of outgoing over incoming contact strength (incoming is 1 outside
    #: Group II); resolves C against c where the two round to the same float.
    contact_shift: np.ndarray


def _log_residual(group, gas, t, s_left, s_right):
    return _residual(group, np.exp(t), s_left, s_right, gas)


def solve_interaction_arrays(
    kind: InteractionKind, s_left, s_right, gas: GasConstants, tol: float = DEFAULT_TOL
) -> InteractionBatch:
    """Solve many interactions of one kind at once.

    Strength arrays must satisfy :func:`valid_mask`; a ``ValueError`` is raised
    otherwise.
    """
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    s_left, s_right = (np.ravel(v) for v in np.broadcast_arrays(
        np.asarray(s_left, dtype=float), np.asarray(s_right, dtype=float)))
    if not np.all(valid_mask(kind, s_left, s_right)):
        raise ValueError(f"strengths do not describe a valid {kind.value} interaction")
    group = kind.group
    vac = vacuum_mask(kind, s_left, s_right, gas)
    product = s_left if group == 2 else s_left * s_right

    n = s_left.size
    B = np.full(n, np.nan)
    group_res = np.full(n, np.nan)
    idx = np.flatnonzero(~vac)
    if idx.size:
        root = solve_increasing(
            partial(_log_residual, group, gas),
            (s_left[idx], s_right[idx]),
            start=0.5 * np.log(np.maximum(product[idx], 1.0)),
            xtol=1e-3 * tol,
        )
        B[idx] = np.exp(root.x)
        group_res[idx] = root.residual

    with np.errstate(invalid="ignore"):
        F = product / B
        sB = np.where(vac, 1.0, B)
        sF = np.where(vac, 1.0, F)
        phi_B = kernels.phi(Direction.BACKWARD, sB, gas)
        phi_F = kernels.phi(Direction.FORWARD, sF, gas)
        if group == 1:
            f, b = s_left, s_right
            incoming_u = _psi_f(f, gas) - _psi_b(b, gas) * aux_N(f, gas)
        elif group == 2:
            incoming_u = _psi_f(s_left, gas)
        else:
            x, y = s_left, s_right
            incoming_u = -_psi_b(x, gas) - _psi_b(y, gas) * aux_M(x, gas)
        # C from the volume balance, written through log(C/c) (see _contact_shift).
        shift = _contact_shift(group, s_left, s_right, sB, sF, gas)
        C = (s_right if group == 2 else 1.0) * np.exp(shift)
        outgoing_u = -_psi_b(sB, gas) + _psi_f(sF, gas) * np.sqrt(C * sB * phi_B)
        velocity_res = np.where(vac, np.nan, outgoing_u - incoming_u)
        product_res = np.where(vac, np.nan, (B * F - product) / product)
        C = np.where(vac, np.nan, C)
        shift = np.where(vac, np.nan, shift)

    return InteractionBatch(
        kind=kind,
        s_left=s_left,
        s_right=s_right,
        vacuum=vac,
        B=B,
        C=C,
        F=F,
        group_residual=group_res,
        product_residual=product_res,
        velocity_residual=velocity_res,
        entropy_delta=np.asarray(_incoming_entropy_delta(kind, s_left, s_right, gas), dtype=float),
        contact_shift=shift,
    )


@dataclass(frozen=True)
class InteractionOutcome:
    """Outgoing waves of one interaction.

    ``B``, ``C``, ``F`` are ``None`` when a vacuum forms; the contact entry of
    ``types`` then records the direction of the entropy jump across the
    vacuum (``ContactUp``, ``ContactDown`` or ``Null``).
    """

    pair: IncomingPair
    vacuum: bool
    B: Optional[float]
    C: Optional[float]
    F: Optional[float]
    types: tuple[WaveType, WaveType, WaveType]
    entropy_jump: EntropyJump
    residuals: dict = field(default_factory=dict)

    @property
    def clauses(self) -> list[str]:
        return theorem_clauses(self)


def solve_interaction(pair: IncomingPair, gas: GasConstants, tol: float = DEFAULT_TOL) -> InteractionOutcome:
    """Outgoing strengths, wave types and vacuum flag for one incoming pair.

    Examples
    --------
    >>> from wavelab.gas import derive_constants
    >>> out = solve_interaction(IncomingPair(InteractionKind.IIIA, 2.0, 2.0), derive_constants(1.4))
    >>> out.B > 1, out.F > 1, out.C < 1
    (True, True, True)
    """
    batch = solve_interaction_arrays(pair.kind, [pair.s_left], [pair.s_right], gas, tol=tol)
    delta = float(batch.entropy_delta[0])
    if batch.vacuum[0]:
        jump = entropy_direction(delta)
        return InteractionOutcome(
            pair=pair,
            vacuum=True,
            B=None,
            C=None,
            F=None,
            types=(WaveType.RAREFACTION, contact_type_for(jump), WaveType.RAREFACTION),
            entropy_jump=jump,
            residuals={"entropy_delta": delta},
        )
    B, C, F = float(batch.B[0]), float(batch.C[0]), float(batch.F[0])
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
    return InteractionOutcome(
        pair=pair,
        vacuum=False,
        B=B,
        C=C,
        F=F,
        types=types,
        entropy_jump=jump,
        residuals={
            "group_equation": abs(float(batch.group_residual[0])),
            "product_relation": abs(float(batch.product_residual[0])),
            "velocity_relation": abs(float(batch.velocity_residual[0])),
        },
    )


def theorem_clauses(outcome: InteractionOutcome) -> list[str]:
    """Short tags naming the theorem statements that describe the outcome."""
    pair = outcome.pair
    kind = pair.kind
    tags: list[str] = []
    if kind.group == 1:
        tags.append("groupI(i) sign(B-1)=sign(b-1)")
        tags.append("groupI(ii) sign(F-1)=sign(f-1)")
        if kind is InteractionKind.IA:
            bf = pair.s_left * pair.s_right
            rel = "=" if abs(bf - 1.0) <= TIE_BAND else (">" if bf > 1.0 else "<")
            tags.append(f"groupI(iii) bf{rel}1 => C{rel}1")
        elif kind is InteractionKind.IB:
            tags.append("groupI(iii) Ib => C>1")
        elif outcome.vacuum:
            tags.append("groupI(iv) b^zeta+f^-zeta<=1 => vacuum")
        else:
            tags.append("groupI(iii) Ic => C=1")
    elif kind.group == 2:
        if kind in (InteractionKind.IIA, InteractionKind.IIB):
            tags.append("groupII(i) sign(B-1)=-sign(c-1)")
        else:
            tags.append("groupII(i) sign(B-1)=sign(c-1)")
        tags.append("groupII(ii) sign(F-1)=sign(f-1)")
        tags.append({
            InteractionKind.IIA: "groupII(iii) IIa => c<C<1",
            InteractionKind.IIB: "groupII(iii) IIb => 1<C<c",
            InteractionKind.IIC: "groupII(iii) IIc => C=c",
            InteractionKind.IID: "groupII(iii) IId => C<c, C<1 iff f>frak_f(c)",
        }[kind])
        if outcome.vacuum:
            tags.append("groupII(iv) f>=f*(c) => vacuum")
    else:
        tags.append("groupIII(i) B>1 iff y>k(x)")
        tags.append({
            InteractionKind.IIIA: "groupIII(iii) IIIa => C<1",
            InteractionKind.IIIB: "groupIII(iii) IIIb => C>1",
            InteractionKind.IIIC: "groupIII(iii) IIIc => C>1",
        }[kind])
        if outcome.vacuum:
            tags.append("groupIII(iv) y<=V(x) => vacuum")
    return tags


# --- entropy-variable cross-check (Group III) -------------------------------

@dataclass
class EntropyCrossCheck:
    """Outgoing volume ratios (L, C, I) of a Group III interaction solved in
    (tau, u, S) variables, with the residuals of the three equations.

    ``velocity_residual`` is scaled by ``1 + |left-hand side|`` because the
    velocity terms become large for strong shocks.
    """

    L: np.ndarray
    C: np.ndarray
    I: np.ndarray
    velocity_residual: np.ndarray
    entropy_residual: np.ndarray
    volume_residual: np.ndarray


def _forward_volume_from_entropy(r, gas):
    """Solve eta_f(I) - gamma log I = r for I in (0, 1/a) in closed form."""
    a = gas.a
    with np.errstate(over="ignore"):
        rare = np.exp(-r / gas.gamma)
        er = np.exp(np.minimum(r, 0.0))
        shock = (1.0 + a * er) / (er + a)
    return np.where(r >= 0.0, rare, shock)


def _entropy_state(gas, L, x_t, y_t):
    """Given L, return (I, C) from the entropy and volume relations."""
    eta_b = partial(kernels.eta, Direction.BACKWARD, gas=gas)
    E0 = eta_b(x_t) + eta_b(y_t)
    P0 = x_t * y_t
    r = E0 - eta_b(L) - gas.gamma * np.log(P0 / L)
    I = _forward_volume_from_entropy(r, gas)
    C = P0 / (L * I)
    return I, C


def _velocity_lhs(gas, x_t, y_t):
    xi_b = partial(kernels.xi, Direction.BACKWARD, gas=gas)
    eta_b = partial(kernels.eta, Direction.BACKWARD, gas=gas)
    scale = np.exp(0.5 * ((1.0 - gas.gamma) * np.log(x_t) + eta_b(x_t)))
    return xi_b(x_t) + xi_b(y_t) * scale


def _velocity_rhs(gas, L, I, C):
    xi_b = kernels.xi(Direction.BACKWARD, L, gas)
    xi_f = kernels.xi(Direction.FORWARD, I, gas)
    eta_L = kernels.eta(Direction.BACKWARD, L, gas)
    scale = np.exp(0.5 * (np.log(C) + (1.0 - gas.gamma) * np.log(L) + eta_L))
    return xi_b - xi_f * scale


def _cross_residual(gas, t, x_t, y_t, lhs):
    # Unknown t = log(L - a); the velocity mismatch decreases with L.
    L = gas.a + np.exp(t)
    I, C = _entropy_state(gas, L, x_t, y_t)
    return lhs - _velocity_rhs(gas, L, I, C)


def entropy_cross_check_arrays(x, y, gas: GasConstants, tol: float = 1e-14) -> EntropyCrossCheck:
    """Solve Group III interactions directly in (tau, u, S) variables.

    The incoming pressure ratios ``x``, ``y`` are converted to volume ratios
    ``phi_b(x)``, ``phi_b(y)``.  For each trial outgoing backward volume ratio
    ``L`` the entropy balance and the volume balance give the forward volume
    ratio ``I`` (in closed form) and the contact ratio ``C``; ``L`` itself is
    found from the velocity balance by bracketed root finding.  No quantity
    from the pressure-variable solver is reused.
    """
    x, y = (np.ravel(v) for v in np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float)))
    x_t = kernels.phi(Direction.BACKWARD, x, gas)
    y_t = kernels.phi(Direction.BACKWARD, y, gas)
    lhs = _velocity_lhs(gas, x_t, y_t)
    root = solve_increasing(
        partial(_cross_residual, gas),
        (x_t, y_t, lhs),
        start=np.log(np.abs(1.0 - gas.a)),
        lower=-700.0,
        upper=700.0,
        xtol=tol,
    )
    L = gas.a + np.exp(root.x)
    I, C = _entropy_state(gas, L, x_t, y_t)
    eta_b = partial(kernels.eta, Direction.BACKWARD, gas=gas)
    ent_res = (eta_b(x_t) + eta_b(y_t)) - (
        eta_b(L) + gas.gamma * np.log(C) + kernels.eta(Direction.FORWARD, I, gas)
    )
    vol_res = (x_t * y_t - C * L * I) / (x_t * y_t)
    # Velocity terms grow like (L - a)^(-1/2) for strong shocks; compare relatively.
    vel_res = (lhs - _velocity_rhs(gas, L, I, C)) / (1.0 + np.abs(lhs))
    return EntropyCrossCheck(L=L, C=C, I=I, velocity_residual=vel_res,
                             entropy_residual=ent_res, volume_residual=vol_res)


def entropy_cross_check(
    pair: IncomingPair,
    gas: GasConstants,
    ref: ReferenceConstants = DEFAULT_REFERENCE,
) -> tuple[float, float, float]:
    """Entropy-variable strengths ``(L, C, I)`` of a Group III interaction.

    Raises
    ------
    ValueError
        If the pair is not in Group III, or if a residual of the three
        entropy-variable equations exceeds 1e-9 (which signals a bug).

    Notes
    -----
    The result does not depend on ``ref``: only entropy differences enter.
    """
    if pair.kind.group != 3:
        raise ValueError("the entropy-variable cross-check applies to Group III only")
    res = entropy_cross_check_arrays([pair.s_left], [pair.s_right], gas)
    worst = max(abs(float(res.velocity_residual[0])), abs(float(res.entropy_residual[0])),
                abs(float(res.volume_residual[0])))
    if not worst < 1e-9:
        raise ValueError(f"entropy-variable equations not satisfied (residual {worst:.3e})")
    return float(res.L[0]), float(res.C[0]), float(res.I[0])
