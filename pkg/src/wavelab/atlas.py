"""Transitional and vacuum curves in the plane of incoming strengths.

For overtaking backward waves of strengths (x, y):

* ``k``: the graph y = k(x) where the transmitted wave changes type (B = 1),
  the zero set of :func:`K_classifier`;
* ``h``, ``j``, ``i``: pieces of the set where the reflected wave changes
  type (F = 1), the zero set of :func:`H_reflect` in regions IIIb, IIIa and
  IIIc respectively; which pieces exist depends on gamma;
* ``V``: the vacuum boundary in IIIb.

Group I contributes the vacuum boundary of Ic, Group II the vacuum threshold
``f*(c)`` of IIc and the contact-transition curve of IId.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import partial
from typing import Optional

import mpmath
import numpy as np

from . import kernels
from .analysis import alpha_roots, aux_D, aux_D_inverse, aux_M, v_fn
from .gas import GasConstants, Regime, regime_of
from .kernels import Direction, DomainError
from .roots import solve_increasing

__all__ = [
    "CurveId",
    "Panel",
    "GridSpec",
    "CurveSample",
    "SpecialPoints",
    "K_classifier",
    "K_infinity",
    "k_curve",
    "H_reflect",
    "h1_explicit",
    "h_curve",
    "j_explicit",
    "i_curve",
    "V_vacuum_curve",
    "vacuum_residual_III",
    "group1_vacuum_boundary",
    "iic_fstar",
    "iid_contact_transition",
    "upsilon",
    "special_points",
    "sample_atlas",
    "curve_residual",
]

#: Band in ``a`` around 1/4 and 1/3 inside which the boundary regime is used.
REGIME_BAND = 1e-9

#: Below this distance from x = 1 the closed form for h1 is evaluated in
#: extended precision (numerator and denominator both vanish like (x-1)^2).
H1_EXTENDED_BELOW = 1e-2


def _arr(v):
    arr = np.asarray(v, dtype=float)
    return arr, arr.ndim == 0


def _out(values, scalar):
    return float(values) if scalar else values


def _psi_b(q, gas):
    return kernels.psi(Direction.BACKWARD, q, gas)


def _psi_f(q, gas):
    return kernels.psi(Direction.FORWARD, q, gas)


def _at_least_third(gas: GasConstants) -> bool:
    return gas.a >= 1.0 / 3.0 - REGIME_BAND


# --- Group III classifiers ---------------------------------------------------

def K_classifier(x, y, gas: GasConstants):
    """K(x, y) = psi_b(1/(xy)) M(y) + psi_f(1/x) - psi_b(y).

    The group equation at B = 1 equals M(x) K(x, y) and the group equation
    increases with B, so B > 1 exactly when K(x, y) < 0, i.e. above the
    curve y = k(x).
    """
    x, sx = _arr(x)
    y, sy = _arr(y)
    value = _psi_b(1.0 / (x * y), gas) * aux_M(y, gas) + _psi_f(1.0 / x, gas) - _psi_b(y, gas)
    return _out(value, sx and sy)


def K_infinity(y, gas: GasConstants):
    """Limit of K(x, y) as x -> inf: -nu M(y) - psi_b(y) - kappa/sqrt(a)."""
    y, s = _arr(y)
    value = -gas.nu * aux_M(y, gas) - _psi_b(y, gas) - gas.kappa / math.sqrt(gas.a)
    return _out(value, s)


def _neg_K_log(gas, t, x):
    return -K_classifier(x, np.exp(t), gas)


def k_curve(x, gas: GasConstants, xtol: float = 1e-15):
    """The decreasing graph y = k(x) on which B = 1; k(1) = 1, k -> yhat."""
    x, s = _arr(x)
    if np.any(x <= 0.0):
        raise DomainError("k is defined for x > 0")
    root = solve_increasing(partial(_neg_K_log, gas), (np.atleast_1d(x),), start=-0.5 * np.log(np.atleast_1d(x)), xtol=xtol)
    y = np.exp(root.x)
    return _out(y.reshape(x.shape), s)


def H_reflect(x, y, gas: GasConstants):
    """H(x, y) = psi_b(xy) - psi_b(x) - psi_b(y) M(x), the group equation at B = xy.

    The reflected wave is a rarefaction (F > 1) where H > 0 and a shock
    where H < 0.  H vanishes on the lines x = 1 and y = 1.
    """
    x, sx = _arr(x)
    y, sy = _arr(y)
    value = _psi_b(x * y, gas) - _psi_b(x, gas) - _psi_b(y, gas) * aux_M(x, gas)
    return _out(value, sx and sy)


def vacuum_residual_III(x, y, gas: GasConstants):
    """Group III equation at B = 0: nonnegative exactly when a vacuum forms."""
    x, sx = _arr(x)
    y, sy = _arr(y)
    Mx, My = aux_M(x, gas), aux_M(y, gas)
    value = -gas.nu - gas.nu * Mx * My - _psi_b(x, gas) - _psi_b(y, gas) * Mx
    return _out(value, sx and sy)


# --- explicit and traced F = 1 curves ----------------------------------------

def _h1_double(x, gas):
    a = gas.a
    root_xa = np.sqrt(x + a)
    big = np.sqrt(x + a * x * x)
    num = big - root_xa - gas.kappa / gas.nu * (x - 1.0)
    den = big - x**gas.zeta * root_xa
    with np.errstate(divide="ignore", invalid="ignore"):
        return (num / den) ** (1.0 / gas.zeta)


def _h1_extended(x: float, gas: GasConstants) -> float:
    with mpmath.workdps(60):
        g = mpmath.mpf(gas.gamma)
        a = (g - 1) / (g + 1)
        kappa = mpmath.sqrt(1 - a)
        nu = mpmath.sqrt(1 - a * a) / a
        zeta = a / (1 + a)
        X = mpmath.mpf(x)
        big = mpmath.sqrt(X + a * X * X)
        root_xa = mpmath.sqrt(X + a)
        num = big - root_xa - kappa / nu * (X - 1)
        den = big - X**zeta * root_xa
        return float((num / den) ** (1 / zeta))


def h1_explicit(x, gas: GasConstants):
    """Closed form of the F = 1 curve in IIIb1 (0 < y < xy < 1 < x), gamma < 5/3.

    ``[(M(x) - psi_b(x)/nu - 1) / (M(x) - x**zeta)]**(1/zeta)``; tends to
    ``y1 = [3/(4(1-a))]**(1/zeta)`` as x -> 1 and equals y0 at x = x0.

    Raises
    ------
    DomainError
        If gamma >= 5/3 (beyond a 1e-9 band in ``a``) or x <= 1.
    """
    if gas.a > 0.25 + REGIME_BAND:
        raise DomainError("h1 exists only for gamma <= 5/3")
    x, s = _arr(x)
    if np.any(x <= 1.0):
        raise DomainError("h1 is defined for x > 1")
    y = _h1_double(x, gas)
    near = np.atleast_1d(x - 1.0 < H1_EXTENDED_BELOW)
    if near.any():
        y = np.atleast_1d(y).astype(float)
        xs = np.atleast_1d(x)
        for i in np.flatnonzero(near):
            y[i] = _h1_extended(float(xs[i]), gas)
        y = y.reshape(x.shape)
    return _out(y, s)


def _bisect_sign_change(func, lo, hi, iterations=200, sign_lo=None):
    """Vectorized bisection on [lo, hi] where func(lo) and func(hi) differ in sign.

    ``sign_lo`` fixes the sign on the left of the root when ``func(lo)`` is
    itself zero analytically and its computed sign is rounding noise.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    f_lo = func(lo) if sign_lo is None else np.full_like(lo, float(sign_lo))
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        f_mid = func(mid)
        same = np.sign(f_mid) == np.sign(f_lo)
        lo = np.where(same, mid, lo)
        f_lo = np.where(same, f_mid, f_lo)
        hi = np.where(same, hi, mid)
        if np.all(hi - lo <= 4e-16 * np.abs(hi)):
            break
    return 0.5 * (lo + hi)


def _h2(x: np.ndarray, gas: GasConstants) -> np.ndarray:
    """Root of H(x, .) in (1/x, 1) where H changes from positive to negative."""
    lo = 1.0 / x
    f = partial(H_reflect, x, gas=gas)
    hi = np.full_like(x, np.nan)
    prev = lo.copy()
    lower = lo.copy()
    # H < 0 on (h2, 1); walk towards 1 until a negative value is met.
    for j in range(1, 80):
        cand = 1.0 - (1.0 - lo) * 0.5**j
        neg = (f(y=cand) < 0.0) & np.isnan(hi)
        hi = np.where(neg, cand, hi)
        lower = np.where(neg, prev, lower)
        prev = np.where(np.isnan(hi), cand, prev)
        if not np.isnan(hi).any():
            break
    ok = ~np.isnan(hi)
    out = np.full_like(x, np.nan)
    if ok.any():
        xs = x[ok]
        out[ok] = _bisect_sign_change(lambda y: H_reflect(xs, y, gas), lower[ok], hi[ok])
    return out


def h_curve(x, gas: GasConstants):
    """F = 1 curve in region IIIb (0 < y < 1 < x); NaN where undefined.

    * gamma < 5/3: defined for x > 1, equal to h1 on (1, x0] and to the
      traced root h2 beyond x0;
    * gamma = 5/3: defined for x > 1 (traced);
    * 5/3 < gamma < 2: defined for x >= xbar with h(xbar) = 1 (traced);
    * gamma >= 2: undefined everywhere.
    """
    x, s = _arr(x)
    x1 = np.atleast_1d(x).astype(float)
    out = np.full_like(x1, np.nan)
    regime = regime_of(gas, REGIME_BAND)
    if _at_least_third(gas):
        return _out(out.reshape(x.shape), s)
    if regime is Regime.BELOW_FIVE_THIRDS:
        x0 = alpha_roots(gas).x0
        first = (x1 > 1.0) & (x1 <= x0)
        if first.any():
            out[first] = h1_explicit(x1[first], gas)
        second = x1 > x0
    elif regime is Regime.AT_FIVE_THIRDS:
        second = x1 > 1.0
    else:
        xbar = 4.0 * gas.a**2 / (1.0 - 3.0 * gas.a)
        out[x1 == xbar] = 1.0
        second = x1 > xbar
    if second.any():
        out[second] = _h2(x1[second], gas)
    return _out(out.reshape(x.shape), s)


def j_explicit(x, gas: GasConstants):
    """Closed form of the F = 1 curve in IIIa for gamma > 5/3.

    Strictly decreasing with j(1) = ybar.  For 5/3 < gamma < 2 it reaches
    y = 1 at x = xbar, and only the part x <= xbar lies in IIIa; for
    gamma >= 2 it stays above 1 and tends to ystar.
    """
    if gas.a <= 0.25 + REGIME_BAND:
        raise DomainError("j exists only for gamma > 5/3")
    x, s = _arr(x)
    if np.any(x < 1.0):
        raise DomainError("j is defined for x >= 1")
    a = gas.a
    value = 2.0 * a / ((1.0 - a) ** 2 * x) * (
        a * (1.0 + x) + np.sqrt(a * a * (1.0 + x) ** 2 + a * x * (1.0 - a) ** 2)
    )
    return _out(value, s)


def i_curve(x, gas: GasConstants):
    """F = 1 curve in IIIc (0 < x < 1 < y) for gamma > 5/3.

    Constant ``y0`` for ``x <= 1/y0``; for ``1/y0 < x < 1`` the root of
    H(x, .) between ``1/x`` and ``y0``.
    """
    if gas.a <= 0.25 + REGIME_BAND:
        raise DomainError("i exists only for gamma > 5/3")
    x, s = _arr(x)
    if np.any((x <= 0.0) | (x >= 1.0)):
        raise DomainError("i is defined for 0 < x < 1")
    y0 = alpha_roots(gas).y0
    x1 = np.atleast_1d(x).astype(float)
    out = np.full_like(x1, y0)
    traced = x1 > 1.0 / y0
    if traced.any():
        xs = x1[traced]
        # H(x, 1/x) = 0 identically and H > 0 between 1/x and i(x)
        out[traced] = _bisect_sign_change(
            lambda y: H_reflect(xs, y, gas), 1.0 / xs, np.full_like(xs, y0), sign_lo=1.0
        )
    return _out(out.reshape(x.shape), s)


# --- vacuum and Group I/II curves ---------------------------------------------

def V_vacuum_curve(x, gas: GasConstants):
    """Vacuum boundary in IIIb: V(x) = [(1 - v(x)/nu)/2]**(1/zeta), x >= 1."""
    x, s = _arr(x)
    if np.any(x < 1.0):
        raise DomainError("V is defined for x >= 1")
    base = 0.5 * (1.0 - v_fn(x, gas) / gas.nu)
    return _out(np.maximum(base, 0.0) ** (1.0 / gas.zeta), s)


def group1_vacuum_boundary(f, gas: GasConstants):
    """The b with b**zeta + f**-zeta = 1 (Ic vacuum boundary), for f > 1."""
    f, s = _arr(f)
    if np.any(f <= 1.0):
        raise DomainError("the Ic vacuum boundary is defined for f > 1")
    base = -np.expm1(-gas.zeta * np.log(f))
    return _out(base ** (1.0 / gas.zeta), s)


def iic_fstar(c, gas: GasConstants):
    """Vacuum threshold of IIc: f*(c) = (2/(1 - sqrt c))**(1/zeta), 0 < c < 1."""
    c, s = _arr(c)
    if np.any((c <= 0.0) | (c >= 1.0)):
        raise DomainError("f* is defined for 0 < c < 1")
    return _out((2.0 / (1.0 - np.sqrt(c))) ** (1.0 / gas.zeta), s)


def upsilon(B, gas: GasConstants):
    """Upsilon(B) = B**zeta + (psi_f(B) + psi_b(B)) / (nu (sqrt(D(B)) - 1)), B > 1."""
    B, s = _arr(B)
    if np.any(B <= 1.0):
        raise DomainError("Upsilon is defined for B > 1")
    value = B**gas.zeta + (_psi_f(B, gas) + _psi_b(B, gas)) / (
        gas.nu * (np.sqrt(aux_D(B, gas)) - 1.0)
    )
    return _out(value, s)


def iid_contact_transition(c, gas: GasConstants):
    """Incoming forward strength at which the outgoing contact of IId has C = 1.

    With ``delta = D^-1(c)``, the value is
    ``[delta**zeta + (psi_f(delta) + psi_b(delta)) / (nu (sqrt c - 1))]**(1/zeta)``.
    C > 1 below this curve and C < 1 above it.
    """
    c, s = _arr(c)
    if np.any(c <= 1.0):
        raise DomainError("the IId contact transition is defined for c > 1")
    d = aux_D_inverse(c, gas)
    inner = d**gas.zeta + (_psi_f(d, gas) + _psi_b(d, gas)) / (gas.nu * (np.sqrt(c) - 1.0))
    return _out(inner ** (1.0 / gas.zeta), s)


# --- landmarks -----------------------------------------------------------------

@dataclass(frozen=True)
class SpecialPoints:
    """Landmark values; fields that do not apply to the regime are ``None``."""

    y0: float
    x0: float
    yhat: float
    y1: Optional[float]
    xbar: Optional[float]
    ybar: Optional[float]
    ystar: Optional[float]


def special_points(gas: GasConstants) -> SpecialPoints:
    """Compute y0, x0, yhat and the regime-dependent y1, xbar, ybar, ystar.

    Examples
    --------
    >>> from wavelab.gas import derive_constants
    >>> sp = special_points(derive_constants(2.0))
    >>> round(sp.ystar, 12)
    1.0
    """
    a, z = gas.a, gas.zeta
    roots = alpha_roots(gas)
    yhat = (0.5 * (1.0 - math.sqrt(z))) ** (1.0 / z)
    regime = regime_of(gas, REGIME_BAND)
    y1 = xbar = ybar = ystar = None
    if regime is not Regime.ABOVE_FIVE_THIRDS:
        y1 = (3.0 / (4.0 * (1.0 - a))) ** (1.0 / z)
    else:
        ybar = 2.0 * a * math.sqrt(a) / (1.0 - math.sqrt(a)) ** 2
        ystar = 4.0 * a * a / (1.0 - a) ** 2
        if not _at_least_third(gas):
            xbar = 4.0 * a * a / (1.0 - 3.0 * a)
    return SpecialPoints(roots.y0, roots.x0, yhat, y1, xbar, ybar, ystar)


# --- sampling ----------------------------------------------------------------------

class CurveId(enum.Enum):
    K_ZERO = "k"
    H_ZERO = "h"
    J_EXPLICIT = "j"
    I_CURVE = "i"
    V_VACUUM = "V"
    IC_VACUUM = "Ic_vacuum"
    IIC_FSTAR = "fstar"
    IID_CONTACT = "f_transition"


class Panel(enum.Enum):
    GROUP_I = "groupI"
    GROUP_II = "groupII"
    GROUP_III = "groupIII"

    @classmethod
    def parse(cls, label: str) -> "Panel":
        for panel in cls:
            if panel.value.lower() == label.strip().lower():
                return panel
        raise ValueError(f"unknown panel {label!r}; choose from {[p.value for p in cls]}")


@dataclass(frozen=True)
class GridSpec:
    """Number of abscissae per curve and the upper end of the x range."""

    n: int = 200
    x_max: float = 1e3

    def __post_init__(self) -> None:
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 2):
            raise ValueError("grid needs at least 2 points per curve")
        if not (self.x_max > 2.0 and math.isfinite(self.x_max)):
            raise ValueError("x_max must be finite and larger than 2")


@dataclass
class CurveSample:
    curve_id: CurveId
    gamma: float
    x: np.ndarray
    y: np.ndarray
    residual: np.ndarray
    metadata: dict = field(default_factory=dict)

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.x.tolist(), self.y.tolist()))


def curve_residual(curve: CurveId, x, y, gas: GasConstants):
    """Absolute residual of the defining equation of a curve at (x, y)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if curve is CurveId.K_ZERO:
        return np.abs(K_classifier(x, y, gas))
    if curve in (CurveId.H_ZERO, CurveId.J_EXPLICIT, CurveId.I_CURVE):
        return np.abs(H_reflect(x, y, gas))
    if curve is CurveId.V_VACUUM:
        return np.abs(vacuum_residual_III(x, y, gas))
    if curve is CurveId.IC_VACUUM:
        return np.abs(y**gas.zeta + x ** (-gas.zeta) - 1.0)
    if curve is CurveId.IIC_FSTAR:
        return np.abs((1.0 - np.sqrt(x)) * y**gas.zeta - 2.0) / 2.0
    if curve is CurveId.IID_CONTACT:
        # On the curve the IId relation (sqrt(c)-1) f^zeta + 1 = sqrt(c) B^zeta + psi_b(B)/nu
        # holds with D(B) = c.
        d = aux_D_inverse(x, gas)
        lhs = (np.sqrt(x) - 1.0) * y**gas.zeta + 1.0
        rhs = np.sqrt(x) * d**gas.zeta + _psi_b(d, gas) / gas.nu
        return np.maximum(np.abs(lhs - rhs) / np.abs(lhs), np.abs(aux_D(d, gas) - x) / x)
    raise ValueError(f"unknown curve {curve!r}")


def _log_span(lo: float, hi: float, n: int) -> np.ndarray:
    return np.logspace(math.log10(lo), math.log10(hi), n)


def _above_one(x_max: float, n: int, start: float = 1e-6) -> np.ndarray:
    return 1.0 + _log_span(start, x_max - 1.0, n)


def _sample(curve, gas, x, y, **metadata) -> CurveSample:
    keep = np.isfinite(y)
    x, y = x[keep], y[keep]
    order = np.argsort(x, kind="stable")
    x, y = x[order], y[order]
    unique = np.concatenate(([True], np.diff(x) > 0))
    x, y = x[unique], y[unique]
    return CurveSample(curve, gas.gamma, x, y, curve_residual(curve, x, y, gas), metadata)


def _group_three(gas: GasConstants, grid: GridSpec) -> list[CurveSample]:
    sp = special_points(gas)
    n, x_max = grid.n, grid.x_max
    samples = []
    xk = _log_span(1e-2, x_max, n)
    samples.append(_sample(CurveId.K_ZERO, gas, xk, k_curve(xk, gas),
                           x_label="x", y_label="y", asymptote=sp.yhat, passes_through=[1.0, 1.0]))
    regime = regime_of(gas, REGIME_BAND)
    if not _at_least_third(gas):
        if regime is Regime.ABOVE_FIVE_THIRDS:
            xh = np.concatenate(([sp.xbar], sp.xbar + _log_span(1e-6, x_max - sp.xbar, n - 1)))
            start = [sp.xbar, 1.0]
        else:
            xh = _above_one(x_max, n)
            start = [1.0, sp.y1 if sp.y1 is not None else 1.0]
            if regime is Regime.BELOW_FIVE_THIRDS:
                xh = np.union1d(xh, [sp.x0])
        samples.append(_sample(CurveId.H_ZERO, gas, xh, h_curve(xh, gas),
                               x_label="x", y_label="y", start=start, junction=[sp.x0, sp.y0]))
    if regime is Regime.ABOVE_FIVE_THIRDS:
        # For 1/4 < a < 1/3 the closed form describes F = 1 only inside IIIa,
        # i.e. up to its crossing with y = 1 at xbar; beyond that h takes over.
        j_end = x_max if sp.xbar is None else min(sp.xbar, x_max)
        xj = np.concatenate(([1.0], _above_one(j_end, n - 1)))
        samples.append(_sample(CurveId.J_EXPLICIT, gas, xj, j_explicit(xj, gas),
                               x_label="x", y_label="y", start=[1.0, sp.ybar],
                               asymptote=sp.ystar if _at_least_third(gas) else None))
        xi = np.linspace(1e-3, 1.0 - 1e-6, n)
        samples.append(_sample(CurveId.I_CURVE, gas, xi, i_curve(xi, gas),
                               x_label="x", y_label="y", end=[1.0, sp.ybar], plateau=sp.y0))
    xv = _above_one(x_max, n, start=1e-3)
    samples.append(_sample(CurveId.V_VACUUM, gas, xv, V_vacuum_curve(xv, gas),
                           x_label="x", y_label="y", start=[1.0, 0.0], asymptote=sp.yhat))
    return samples


def sample_atlas(gas: GasConstants, panel: Panel | str, grid: GridSpec | None = None) -> list[CurveSample]:
    """Sample every curve that belongs to a figure panel for this gamma.

    Parameters
    ----------
    gas : GasConstants
    panel : Panel or str
        ``groupI``, ``groupII`` or ``groupIII``.
    grid : GridSpec, optional

    Returns
    -------
    list of CurveSample
        Group I: the Ic vacuum boundary b(f).  Group II: the IId contact
        transition f(c) for c > 1 and the IIc vacuum threshold f*(c) for
        c < 1.  Group III: k and V always, h when gamma < 2, j and i when
        gamma > 5/3.
    """
    grid = grid or GridSpec()
    panel = Panel.parse(panel) if isinstance(panel, str) else panel
    n, x_max = grid.n, grid.x_max
    if panel is Panel.GROUP_I:
        f = _above_one(x_max, n, start=1e-3)
        return [_sample(CurveId.IC_VACUUM, gas, f, group1_vacuum_boundary(f, gas),
                        x_label="f", y_label="b", vacuum_side="below")]
    if panel is Panel.GROUP_II:
        c_hi = _above_one(x_max, n, start=1e-3)
        c_lo = np.linspace(1e-3, 1.0 - 1e-3, n)
        return [
            _sample(CurveId.IID_CONTACT, gas, c_hi, iid_contact_transition(c_hi, gas),
                    x_label="c", y_label="f", below="C>1", above="C<1"),
            _sample(CurveId.IIC_FSTAR, gas, c_lo, iic_fstar(c_lo, gas),
                    x_label="c", y_label="f", vacuum_side="above"),
        ]
    return _group_three(gas, grid)
