"""Independent reference implementations used by the tests.

Everything here is written directly from the closed-form wave relations in
arbitrary precision (mpmath), without importing any numerical routine from
``wavelab``.  Tests compare the package against these functions or against
values produced by them and frozen in the test files.
"""
import mpmath as mp

mp.mp.dps = 40


def constants(gamma):
    g = mp.mpf(gamma) if not isinstance(gamma, tuple) else mp.mpf(gamma[0]) / gamma[1]
    a = (g - 1) / (g + 1)
    return {
        "gamma": g,
        "a": a,
        "kappa": mp.sqrt(1 - a),
        "nu": mp.sqrt(1 - a * a) / a,
        "zeta": a / (1 + a),
    }


def phi(direction, q, c):
    q = mp.mpf(q)
    rare = q <= 1 if direction == "B" else q >= 1
    if rare:
        return q ** (-1 / c["gamma"])
    return (1 + c["a"] * q) / (q + c["a"])


def psi(direction, q, c):
    q = mp.mpf(q)
    rare = q <= 1 if direction == "B" else q >= 1
    if rare:
        return c["nu"] * (q ** c["zeta"] - 1)
    return c["kappa"] * (q - 1) / mp.sqrt(q + c["a"])


def log_gamma(s, c):
    s = mp.mpf(s)
    return mp.log(s ** c["gamma"] * (1 - c["a"] * s) / (s - c["a"]))


def apply_wave(direction, q, state, c):
    """State to the right of an acoustic wave of pressure ratio q."""
    tau, u, p = (mp.mpf(v) for v in state)
    du = psi(direction, q, c) * mp.sqrt(tau * p)
    u_r = u - du if direction == "B" else u + du
    return (phi(direction, q, c) * tau, u_r, q * p)


def riemann(left, right, c):
    """Outgoing (B, C, F) of a Riemann problem by high-precision bisection."""
    tau0, p0 = mp.mpf(left[0]), mp.mpf(left[2])
    tau, p = mp.mpf(right[0]), mp.mpf(right[2])
    lo, hi = mp.mpf(-200), mp.mpf(200)
    for _ in range(400):
        mid = (lo + hi) / 2
        if _mismatch(mp.e ** mid, left, right, c) > 0:
            hi = mid
        else:
            lo = mid
    B = mp.e ** ((lo + hi) / 2)
    F = p / (p0 * B)
    C = tau / (tau0 * phi("B", B, c) * phi("F", F, c))
    return B, C, F


def _mismatch(B, left, right, c):
    """u(after B from the left) - u(before F from the right); increasing in B."""
    tau0, u0, p0 = (mp.mpf(v) for v in left)
    tau, u, p = (mp.mpf(v) for v in right)
    pm = B * p0
    ul = u0 - psi("B", B, c) * mp.sqrt(tau0 * p0)
    # forward wave F = p / pm ends at the right state; its left state has
    # pressure pm and tau_m with tau = phi_f(F) tau_m.
    F = p / pm
    tau_m = tau / phi("F", F, c)
    ur = u - psi("F", F, c) * mp.sqrt(tau_m * pm)
    return ur - ul
