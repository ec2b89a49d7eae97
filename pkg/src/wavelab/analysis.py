"""Auxiliary analytical functions shared by the interaction engine and the atlas.

Includes the square-root kernels ``M`` and ``N``, their logarithmic
derivatives, the rational helpers ``A``, ``D``, ``E``, the difference
``alpha = psi_f - psi_b`` with its nontrivial root ``y0``, the entropy factor
``Gamma`` with ``Omega = sqrt(Gamma)`` and ``Lambda = xi_b o Omega^-1``, and
the vacuum helper ``v``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import partial

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .gas import GasConstants, Regime, regime_of
from .kernels import Direction, DomainError, gamma_fn
from .roots import solve_increasing
from .waves import TIE_BAND

__all__ = [
    "AlphaRootInfo",
    "aux_M",
    "aux_N",
    "log_derivative_kernels",
    "aux_ell",
    "aux_A",
    "aux_D",
    "aux_E",
    "aux_D_inverse",
    "alpha",
    "alpha_tilde",
    "alpha_roots",
    "alpha_root_count",
    "gamma_fn",
    "omega",
    "omega_inverse",
    "lambda_fn",
    "v_fn",
    "theta",
    "q_theta",
    "q_poly",
    "eta_hyper",
    "z_of_q",
]


def _arr(q):
    arr = np.asarray(q, dtype=float)
    return arr, arr.ndim == 0


def _out(values, scalar):
    return float(values) if scalar else values


def _positive(q, name="q"):
    if not np.all(q > 0.0):
        raise DomainError(f"{name} must be positive")


def aux_M(q, gas: GasConstants):
    """M(q) = sqrt(q phi_b(q)): q**zeta below 1, sqrt((q + a q^2)/(q + a)) above."""
    q, scalar = _arr(q)
    _positive(q)
    return _out(np.sqrt(q * kernels.phi(Direction.BACKWARD, q, gas)), scalar)


def aux_N(q, gas: GasConstants):
    """N(q) = sqrt(q phi_f(q)): sqrt((q + a q^2)/(q + a)) below 1, q**zeta above."""
    q, scalar = _arr(q)
    _positive(q)
    return _out(np.sqrt(q * kernels.phi(Direction.FORWARD, q, gas)), scalar)


def _m(q, a, zeta):
    shock = a * (1.0 + 2.0 * a * q + q * q) / (2.0 * (q + a) * (1.0 + a * q))
    return np.where(q <= 1.0, zeta, shock)


def log_derivative_kernels(q, gas: GasConstants):
    """Logarithmic derivatives m = q M'/M and n(q) = m(1/q).

    ``m`` equals ``zeta`` on (0, 1] and increases towards 1/2 for large q.

    Returns
    -------
    tuple
        ``(m(q), n(q))``.
    """
    q, scalar = _arr(q)
    _positive(q)
    m = _m(q, gas.a, gas.zeta)
    n = _m(1.0 / q, gas.a, gas.zeta)
    return _out(m, scalar), _out(n, scalar)


def aux_ell(q, gas: GasConstants):
    """ell(q) = q psi_b'(q) / psi_b(q), undefined at q = 1 (vertical asymptote)."""
    q, scalar = _arr(q)
    _positive(q)
    if np.any(np.abs(q - 1.0) <= TIE_BAND):
        raise DomainError("ell has a vertical asymptote at q = 1")
    a, z = gas.a, gas.zeta
    with np.errstate(divide="ignore", invalid="ignore"):
        qz = np.exp(z * np.log(q))
        low = z * qz / np.expm1(z * np.log(q))
        high = q * (q + 2.0 * a + 1.0) / (2.0 * (q - 1.0) * (q + a))
    return _out(np.where(q < 1.0, low, high), scalar)


def aux_A(q, xi, gas: GasConstants):
    """A(q, xi) = (1 + a q + a^2 xi) / (a^2 + a q + xi)."""
    q, scalar = _arr(q)
    xi = np.asarray(xi, dtype=float)
    _positive(q)
    _positive(xi, "xi")
    a = gas.a
    return _out((1.0 + a * q + a * a * xi) / (a * a + a * q + xi), scalar and xi.ndim == 0)


def aux_E(q, gas: GasConstants):
    """E(q) = (1 + a q) / (q + a), the shock-branch volume ratio."""
    q, scalar = _arr(q)
    _positive(q)
    return _out((1.0 + gas.a * q) / (q + gas.a), scalar)


def aux_D(q, gas: GasConstants):
    """D(q) = q**(1/gamma) (1 + a q) / (q + a); increasing with D(1) = 1."""
    q, scalar = _arr(q)
    _positive(q)
    a = gas.a
    return _out(np.exp(np.log(q) / gas.gamma) * (1.0 + a * q) / (q + a), scalar)


def _log_D_residual(gas, t, log_d):
    q = np.exp(t)
    return t / gas.gamma + np.log1p(gas.a * q) - np.log(q + gas.a) - log_d


def aux_D_inverse(d, gas: GasConstants, xtol: float = 1e-15):
    """delta = D^-1(d) for d > 0 (D maps (0, inf) onto (0, inf))."""
    d, scalar = _arr(d)
    if not np.all((d > 0.0) & np.isfinite(d)):
        raise DomainError("D^-1 is defined for finite d > 0")
    root = solve_increasing(partial(_log_D_residual, gas), (np.log(d),), start=0.0, xtol=xtol)
    return _out(np.exp(root.x), scalar)


def alpha(q, gas: GasConstants):
    """alpha(q) = psi_f(q) - psi_b(q); vanishes at q = 1 and at q = y0."""
    q, scalar = _arr(q)
    _positive(q)
    value = kernels.psi(Direction.FORWARD, q, gas) - kernels.psi(Direction.BACKWARD, q, gas)
    return _out(value, scalar)


def alpha_tilde(q, gas: GasConstants):
    """kappa (q - 1)/sqrt(q + a) - nu (q**zeta - 1); equals alpha below 1 and -alpha above."""
    q, scalar = _arr(q)
    _positive(q)
    value = gas.kappa * (q - 1.0) / np.sqrt(q + gas.a) - gas.nu * np.expm1(gas.zeta * np.log(q))
    return _out(value, scalar)


@dataclass(frozen=True)
class AlphaRootInfo:
    """Nontrivial root y0 of alpha, its reciprocal x0 and the gamma regime."""

    y0: float
    x0: float
    regime: Regime


def _first_sign_change(f, grid):
    values = f(grid)
    signs = np.sign(values)
    flips = np.flatnonzero(signs[:-1] * signs[1:] < 0)
    return flips, values


def alpha_roots(gas: GasConstants) -> AlphaRootInfo:
    """Locate the root y0 of alpha distinct from 1.

    Below gamma = 5/3 the root lies in (0, 1), above it in (1, inf); at
    gamma = 5/3 (within a 1e-9 band in ``a``) the only root is 1.  The root
    is bracketed by a logarithmic scan and refined with Brent's method.
    """
    regime = regime_of(gas)
    if regime is Regime.AT_FIVE_THIRDS:
        return AlphaRootInfo(1.0, 1.0, regime)
    f = partial(alpha, gas=gas)
    if regime is Regime.BELOW_FIVE_THIRDS:
        grid = np.logspace(-300, np.log10(1.0 - 1e-6), 8000)
    else:
        grid = 1.0 + np.logspace(-6, 300, 8000)
    flips, _ = _first_sign_change(f, grid)
    if flips.size == 0:
        raise RuntimeError(f"no sign change of alpha found for gamma={gas.gamma}")
    # alpha is O(|q - 1|^3) next to 1, where rounding produces spurious flips;
    # the genuine sign change is the one farthest from 1.
    i = flips[-1] if regime is Regime.ABOVE_FIVE_THIRDS else flips[0]
    lo, hi = grid[i], grid[i + 1]
    y0 = brentq(f, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
    return AlphaRootInfo(float(y0), float(1.0 / y0), regime)


def alpha_root_count(gas: GasConstants, points: int = 20000, gap: float = 1e-4) -> int:
    """Count the distinct roots of alpha on (0, inf) by scanning.

    The trivial root at q = 1 (where alpha vanishes identically) is counted
    once; sign changes are then counted separately on (0, 1 - gap] and on
    [1 + gap, inf), which avoids the degenerate neighbourhood of 1 where
    alpha has a zero of order three (order four when gamma = 5/3).
    """
    left = np.logspace(-12, np.log10(1.0 - gap), points)
    right = np.logspace(np.log10(1.0 + gap), 12, points)
    count = 1 if alpha(1.0, gas) == 0.0 else 0
    for grid in (left, right):
        values = np.sign(alpha(grid, gas))
        count += int(np.count_nonzero(values[:-1] * values[1:] < 0))
    return count


def omega(s, gas: GasConstants):
    """Omega(s) = sqrt(Gamma(s)) on a < s < 1; decreasing from inf to 1."""
    s, scalar = _arr(s)
    if not np.all((s > gas.a) & (s < 1.0)):
        raise DomainError("Omega is defined on (a, 1)")
    return _out(np.sqrt(gamma_fn(s, gas)), scalar)


def _omega_residual(gas, t, log_z):
    # s = a + (1 - a) * logistic(t) runs from a to 1 as t increases.
    a = gas.a
    s = a + (1.0 - a) / (1.0 + np.exp(-t))
    s = np.minimum(s, np.nextafter(1.0, 0.0))
    log_gamma = gas.gamma * np.log(s) + np.log1p(-a * s) - np.log(s - a)
    return 2.0 * log_z - log_gamma


def omega_inverse(z, gas: GasConstants, xtol: float = 1e-14):
    """Inverse of Omega: the s in (a, 1) with sqrt(Gamma(s)) = z, for z > 1."""
    z, scalar = _arr(z)
    if not np.all(z > 1.0):
        raise DomainError("Omega^-1 is defined for z > 1")
    root = solve_increasing(
        partial(_omega_residual, gas), (np.log(z),), start=0.0, lower=-700.0, upper=40.0, xtol=xtol
    )
    a = gas.a
    return _out(a + (1.0 - a) / (1.0 + np.exp(-root.x)), scalar)


def lambda_fn(z, gas: GasConstants):
    """Lambda(z) = xi_b(Omega^-1(z)) for z > 1; increasing and concave."""
    z, scalar = _arr(z)
    return _out(kernels.xi(Direction.BACKWARD, omega_inverse(z, gas), gas), scalar)


def v_fn(x, gas: GasConstants):
    """v(x) = (nu sqrt(x + a) + kappa (x - 1)) / sqrt(x + a x^2); v(1) = nu."""
    x, scalar = _arr(x)
    _positive(x, "x")
    a = gas.a
    value = (gas.nu * np.sqrt(x + a) + gas.kappa * (x - 1.0)) / np.sqrt(x + a * x * x)
    return _out(value, scalar)


def z_of_q(q, gas: GasConstants):
    """Change of variable z(q) = (q - 1)/sqrt(q + a) used in the alpha analysis."""
    q, scalar = _arr(q)
    _positive(q)
    return _out((q - 1.0) / np.sqrt(q + gas.a), scalar)


def q_poly(q, gas: GasConstants):
    """(q - 1)(q - qbar) with qbar = 2a(2a + 1)/(1 - a): the sign of beta''."""
    q, scalar = _arr(q)
    a = gas.a
    qbar = 2.0 * a * (2.0 * a + 1.0) / (1.0 - a)
    return _out((q - 1.0) * (q - qbar), scalar)


def theta(z, gas: GasConstants):
    """theta(z) = (z + 2a + 1) z^(1 - zeta) / (z + a)^(3/2) for z > 1."""
    z, scalar = _arr(z)
    a = gas.a
    return _out((z + 2.0 * a + 1.0) * z ** (1.0 - gas.zeta) / (z + a) ** 1.5, scalar)


def q_theta(z, x, gas: GasConstants):
    """Q(z, x) = sqrt(1 + a)/2 * x^zeta / M(x) * theta(z) - 1 for x, z > 1.

    In region IIIb2 the sign of dH/dy at (x, y) equals the sign of Q(xy, x).
    """
    z, scalar = _arr(z)
    x = np.asarray(x, dtype=float)
    value = 0.5 * np.sqrt(1.0 + gas.a) * x ** gas.zeta / aux_M(x, gas) * theta(z, gas) - 1.0
    return _out(value, scalar and x.ndim == 0)


def eta_hyper(y, gas: GasConstants):
    """eta(y) = 2/sqrt(1+a) - ((1-a) y^2 + (5a+1) y + 2a^2) / ((1+a)(y+a)^(3/2)), y >= 1.

    Controls the derivative of H along hyperbolas xy = const in region IIIc.
    Not to be confused with the wave kernel :func:`wavelab.kernels.eta`.
    """
    y, scalar = _arr(y)
    a = gas.a
    value = 2.0 / np.sqrt(1.0 + a) - ((1.0 - a) * y * y + (5.0 * a + 1.0) * y + 2.0 * a * a) / (
        (1.0 + a) * (y + a) ** 1.5
    )
    return _out(value, scalar)
