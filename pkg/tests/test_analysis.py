import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracle
from wavelab import analysis as an
from wavelab import derive_constants
from wavelab.kernels import Direction, DomainError, psi

G53 = derive_constants(5 / 3)
G14 = derive_constants(1.4)
GAMMAS = [1.2, 1.4, 5 / 3, 1.9, 2.0, 3.0]


def test_square_root_kernels():
    assert an.aux_M(4.0, G53) == pytest.approx(math.sqrt(8 / 4.25), rel=1e-14)
    assert an.aux_N(4.0, G53) == pytest.approx(4 ** 0.2, rel=1e-14)
    # phi_f(q) = 1/phi_b(1/q) gives N(q) M(1/q) = 1
    for q in (0.3, 2.0, 17.0):
        assert an.aux_N(q, G14) * an.aux_M(1 / q, G14) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("gamma", GAMMAS)
def test_log_derivative_matches_finite_difference(gamma):
    g = derive_constants(gamma)
    for q in (0.2, 0.9, 1.5, 40.0):
        m, n = an.log_derivative_kernels(q, g)
        h = 1e-6
        fd = q * (math.log(an.aux_M(q * (1 + h), g)) - math.log(an.aux_M(q * (1 - h), g))) / (2 * q * h)
        assert m == pytest.approx(fd, rel=1e-7)
        assert n == pytest.approx(an.log_derivative_kernels(1 / q, g)[0], rel=1e-15)


def test_m_tends_to_one_half():
    m, _ = an.log_derivative_kernels(1e9, G14)
    assert abs(m - 0.5) < 1e-4
    assert an.log_derivative_kernels(0.5, G14)[0] == pytest.approx(G14.zeta, rel=1e-15)


def test_ell_at_two_is_fourteen_ninths():
    # q (q + 2a + 1) / (2 (q - 1)(q + a)) = 2 * 3.5 / (2 * 2.25) = 14/9 at a = 1/4
    assert an.aux_ell(2.0, G53) == pytest.approx(14 / 9, rel=1e-14)
    c = oracle.constants((5, 3))
    numeric = 2 * mp.diff(lambda q: oracle.psi("B", q, c), 2) / oracle.psi("B", 2, c)
    assert an.aux_ell(2.0, G53) == pytest.approx(float(numeric), rel=1e-13)


@pytest.mark.parametrize("q", [0.01, 0.5, 0.999, 1.001, 3.0, 1e4])
def test_ell_matches_numerical_derivative(q):
    c = oracle.constants(1.4)
    numeric = q * mp.diff(lambda s: oracle.psi("B", s, c), q) / oracle.psi("B", q, c)
    assert an.aux_ell(q, G14) == pytest.approx(float(numeric), rel=1e-10)


@pytest.mark.parametrize("q", [1.0, 1 + 1e-13, 1 - 1e-13])
def test_ell_rejects_one(q):
    with pytest.raises(DomainError):
        an.aux_ell(q, G14)


def test_rational_helpers():
    assert an.aux_D(2.0, G53) == pytest.approx(2 ** 0.6 * 2 / 3, rel=1e-14)
    assert an.aux_E(2.0, G53) == pytest.approx(2 / 3, rel=1e-15)
    assert an.aux_A(1.0, 1.0, G53) == pytest.approx(1.0, rel=1e-15)
    for d in (0.01, 0.9, 1.0, 1.3, 50.0):
        assert an.aux_D(an.aux_D_inverse(d, G14), G14) == pytest.approx(d, rel=1e-12)


@pytest.mark.parametrize("gamma", GAMMAS)
def test_alpha_root_against_mpmath(gamma):
    g = derive_constants(gamma)
    info = an.alpha_roots(g)
    assert info.x0 == pytest.approx(1 / info.y0, rel=1e-15)
    if gamma == 5 / 3:
        assert info.y0 == 1.0 and an.alpha_root_count(g) == 1
        return
    c = oracle.constants(gamma)
    f = lambda q: oracle.psi("F", q, c) - oracle.psi("B", q, c)
    lo, hi = (mp.mpf("1e-6"), mp.mpf("0.999")) if gamma < 5 / 3 else (mp.mpf("1.001"), mp.mpf(1e6))
    s_lo = mp.sign(f(lo))
    assert s_lo == -mp.sign(f(hi))
    for _ in range(200):
        mid = (lo + hi) / 2
        if mp.sign(f(mid)) == s_lo:
            lo = mid
        else:
            hi = mid
    root = (lo + hi) / 2
    assert info.y0 == pytest.approx(float(root), rel=1e-12)
    assert an.alpha_root_count(g) == 2


def test_alpha_root_gamma_three_closed_form():
    # at a = 1/2 the nontrivial root is 10 + 6 sqrt(3)
    info = an.alpha_roots(derive_constants(3.0))
    assert info.y0 == pytest.approx(10 + 6 * math.sqrt(3), rel=1e-13)
    assert abs(an.alpha(info.y0, derive_constants(3.0))) < 1e-12


def test_gamma_omega_lambda():
    assert an.gamma_fn(1.0, G14) == pytest.approx(1.0, rel=1e-15)
    assert an.gamma_fn(0.5, G53) * an.gamma_fn(2.0, G53) == pytest.approx(1.0, rel=1e-14)
    assert an.gamma_fn(0.5, G53) == pytest.approx(1.102431, rel=1e-6)
    s = np.linspace(G14.a + 1e-3, 1 / G14.a - 1e-3, 500)
    assert np.all(np.diff(an.gamma_fn(s, G14)) < 0)
    for z in (1.01, 2.0, 30.0):
        assert an.omega(an.omega_inverse(z, G14), G14) == pytest.approx(z, rel=1e-12)
    small = [an.lambda_fn(1 + e, G14) for e in (1e-3, 1e-6, 1e-9)]
    assert small[0] > small[1] > small[2] > 0
    z1, z2 = 1.5, 2.0
    assert an.lambda_fn(z1, G14) + z1 * an.lambda_fn(z2, G14) >= an.lambda_fn(z1 * z2, G14)


def test_lambda_domain():
    with pytest.raises(DomainError):
        an.omega_inverse(1.0, G14)
    with pytest.raises(DomainError):
        an.omega(1.0, G14)


@pytest.mark.parametrize("gamma", GAMMAS)
def test_v_function(gamma):
    g = derive_constants(gamma)
    assert an.v_fn(1.0, g) == pytest.approx(g.nu, rel=1e-14)
    x = np.logspace(0, 6, 3000)
    assert np.all(np.diff(an.v_fn(x, g)) < 0)


def test_v_large_x_limit():
    # the limit kappa / sqrt(a) is approached like x**(-1/2)
    limit = G14.kappa / math.sqrt(G14.a)
    assert an.v_fn(1e12, G14) == pytest.approx(limit, rel=1e-5)
    assert an.v_fn(1e30, G14) == pytest.approx(limit, rel=1e-13)


def test_q_poly_and_z():
    a = G14.a
    qbar = 2 * a * (2 * a + 1) / (1 - a)
    assert an.q_poly(1.0, G14) == 0.0
    assert an.q_poly(qbar, G14) == pytest.approx(0.0, abs=1e-15)
    assert an.z_of_q(1.0, G14) == 0.0


@given(q=st.floats(1e-3, 1e3), gamma=st.floats(1.05, 5.0))
def test_alpha_tilde_relation(q, gamma):
    g = derive_constants(gamma)
    sign = 1.0 if q < 1 else -1.0
    assert an.alpha_tilde(q, g) == pytest.approx(sign * an.alpha(q, g), rel=1e-9, abs=1e-13)
