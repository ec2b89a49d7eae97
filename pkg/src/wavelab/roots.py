"""Vectorized bracketed root finding for strictly increasing scalar functions.

Every nonlinear equation in the package (the Riemann curve function, the
interaction residuals, the implicit transition curves) is monotone in its
unknown.  Unknowns that live on (0, inf) are solved for in logarithmic form,
which turns the geometric bracket expansion into a linear one.  The bracket
is then refined with Chandrupatla's bisection/inverse-quadratic hybrid as
implemented by :func:`scipy.optimize.elementwise.find_root`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import elementwise

__all__ = ["RootResult", "BracketError", "solve_increasing", "LOG_MIN", "LOG_MAX"]

#: Range of the logarithmic unknown; exp() stays finite and nonzero inside it.
LOG_MIN = -740.0
LOG_MAX = 705.0


class BracketError(RuntimeError):
    """No sign change could be found inside the admissible range."""


@dataclass
class RootResult:
    x: np.ndarray
    residual: np.ndarray
    converged: np.ndarray
    iterations: int


def _expand(func, args, lo, hi, lower, upper, max_steps):
    f_lo = func(lo, *args)
    f_hi = func(hi, *args)
    width = np.ones_like(lo)
    for _ in range(max_steps):
        need_lo = (f_lo > 0.0) & (lo > lower)
        need_hi = (f_hi < 0.0) & (hi < upper)
        if not (need_lo.any() or need_hi.any()):
            break
        width = width * 2.0
        if need_lo.any():
            # A point that is too high is still a valid upper end.
            hi = np.where(need_lo, lo, hi)
            f_hi = np.where(need_lo, f_lo, f_hi)
            lo = np.where(need_lo, np.maximum(lo - width, lower), lo)
            idx = np.flatnonzero(need_lo)
            f_lo[idx] = func(lo[idx], *[_take(arg, idx) for arg in args])
        if need_hi.any():
            lo = np.where(need_hi, hi, lo)
            f_lo = np.where(need_hi, f_hi, f_lo)
            hi = np.where(need_hi, np.minimum(hi + width, upper), hi)
            idx = np.flatnonzero(need_hi)
            f_hi[idx] = func(hi[idx], *[_take(arg, idx) for arg in args])
    return lo, hi, f_lo, f_hi


def _take(arg, idx):
    arr = np.asarray(arg)
    return arr if arr.ndim == 0 else arr[idx]


def solve_increasing(
    func: Callable[..., np.ndarray],
    args: tuple = (),
    *,
    start: np.ndarray | float = 0.0,
    lower: float = LOG_MIN,
    upper: float = LOG_MAX,
    xtol: float = 1e-13,
    maxiter: int = 200,
    max_expansions: int = 64,
    raise_on_failure: bool = True,
) -> RootResult:
    """Find ``x`` with ``func(x, *args) == 0`` for each element.

    Parameters
    ----------
    func : callable
        Elementwise, strictly increasing in its first argument.  Additional
        positional arrays in ``args`` must broadcast against ``start``.
    args : tuple
        Extra arrays passed to ``func``.
    start : float or ndarray
        Initial guess; the first bracket is ``[start - 1, start + 1]``.
    lower, upper : float
        Hard limits of the bracket expansion.
    xtol : float
        Absolute tolerance on ``x``.  For a logarithmic unknown this is the
        relative tolerance on the underlying positive quantity.
    raise_on_failure : bool
        Raise :class:`BracketError` when some element has no sign change in
        ``[lower, upper]``; otherwise report it through ``converged``.

    Returns
    -------
    RootResult
    """
    args = tuple(np.asarray(arg, dtype=float) for arg in args)
    shape = np.broadcast_shapes(np.shape(start), *(np.shape(arg) for arg in args))
    start = np.broadcast_to(np.asarray(start, dtype=float), shape).ravel()
    args = tuple(np.broadcast_to(arg, shape).ravel() for arg in args)
    lo = np.clip(start - 1.0, lower, upper)
    hi = np.clip(start + 1.0, lower, upper)
    lo, hi, f_lo, f_hi = _expand(func, args, lo, hi, lower, upper, max_expansions)

    bracketed = (f_lo <= 0.0) & (f_hi >= 0.0)
    if raise_on_failure and not bracketed.all():
        bad = int(np.flatnonzero(~bracketed)[0])
        raise BracketError(
            f"no sign change in [{lower}, {upper}] for element {bad} "
            f"(f_lo={f_lo[bad]!r}, f_hi={f_hi[bad]!r})"
        )

    x = np.where(f_lo == 0.0, lo, hi)
    residual = np.where(f_lo == 0.0, f_lo, f_hi)
    todo = np.flatnonzero(bracketed & (f_lo != 0.0) & (f_hi != 0.0))
    iterations = 0
    if todo.size:
        res = elementwise.find_root(
            func,
            (lo[todo], hi[todo]),
            args=tuple(arg[todo] for arg in args),
            tolerances=dict(xatol=xtol, xrtol=4.0 * np.finfo(float).eps, fatol=0.0, frtol=0.0),
            maxiter=maxiter,
        )
        x[todo] = res.x
        residual[todo] = res.f_x
        iterations = int(np.max(res.nit))
        ok = np.ones(shape, dtype=bool).ravel() & bracketed
        ok[todo] = res.status >= 0
    else:
        ok = bracketed.copy()
    return RootResult(
        x=x.reshape(shape),
        residual=residual.reshape(shape),
        converged=ok.reshape(shape),
        iterations=iterations,
    )
