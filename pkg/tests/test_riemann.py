import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracle
from wavelab import derive_constants
from wavelab.gas import PrimitiveState
from wavelab.kernels import DomainError
from wavelab.riemann import (
    EntropyJump,
    assemble_fan,
    curve_function,
    solve,
    solve_arrays,
    vacuum_check,
)
from wavelab.waves import WaveFamily, WaveType, apply_wave_primitive

G14 = derive_constants(1.4)
G53 = derive_constants(5 / 3)

states = st.tuples(st.floats(0.05, 20.0), st.floats(-3.0, 3.0), st.floats(0.05, 20.0))


def test_equal_states_give_null_waves():
    s = PrimitiveState(1.0, 0.0, 1.0)
    sol = solve(s, s, G14)
    assert (sol.B, sol.C, sol.F) == (1.0, 1.0, 1.0)
    assert sol.wave_types == (WaveType.NULL,) * 3
    assert sol.entropy_jump is EntropyJump.NONE


def test_two_shock_collision_against_oracle():
    left, right = (1, 0, 1), (1, -2, 1)
    sol = solve(PrimitiveState(*left), PrimitiveState(*right), G53)
    B, C, F = (float(v) for v in oracle.riemann(left, right, oracle.constants((5, 3))))
    assert sol.B > 1 and sol.F < 1
    assert sol.wave_types[0] is WaveType.SHOCK and sol.wave_types[2] is WaveType.SHOCK
    assert (sol.B, sol.C, sol.F) == pytest.approx((B, C, F), rel=1e-12)


def test_sod_tube_frozen():
    # frozen from a 40-digit bisection in tests/oracle.py
    sol = solve(PrimitiveState(1, 0, 1), PrimitiveState(8, 0, 0.1), G14)
    assert sol.B == pytest.approx(0.30313017805064683, rel=1e-12)
    assert sol.C == pytest.approx(1.6052772145292717, rel=1e-12)
    assert sol.F == pytest.approx(0.32989127193826297, rel=1e-12)
    assert sol.wave_types == (WaveType.RAREFACTION, WaveType.CONTACT_UP, WaveType.SHOCK)


@pytest.mark.parametrize("gamma", [1.2, 1.4, 5 / 3, 1.9, 2.0, 3.0])
def test_against_oracle_random(gamma):
    rng = np.random.default_rng(int(gamma * 100))
    c = oracle.constants(gamma)
    g = derive_constants(gamma)
    for _ in range(6):
        left = (float(rng.uniform(0.2, 5)), float(rng.normal()), float(rng.uniform(0.2, 5)))
        right = (float(rng.uniform(0.2, 5)), float(rng.normal()), float(rng.uniform(0.2, 5)))
        if vacuum_check(PrimitiveState(*left), PrimitiveState(*right), g):
            continue
        sol = solve(PrimitiveState(*left), PrimitiveState(*right), g)
        want = [float(v) for v in oracle.riemann(left, right, c)]
        assert [sol.B, sol.C, sol.F] == pytest.approx(want, rel=1e-11)


def test_recomposition_reaches_right_state():
    left, right = PrimitiveState(0.5, 1.0, 3.0), PrimitiveState(2.0, -0.5, 0.4)
    sol = solve(left, right, G14)
    s = apply_wave_primitive(WaveFamily.BACKWARD, sol.B, left, G14)
    assert s.tau == pytest.approx(sol.left_middle.tau, rel=1e-13)
    s = apply_wave_primitive(WaveFamily.CONTACT, sol.C, s, G14)
    s = apply_wave_primitive(WaveFamily.FORWARD, sol.F, s, G14)
    assert s.as_tuple() == pytest.approx(right.as_tuple(), rel=1e-11, abs=1e-11)
    assert sol.residuals["velocity_mismatch"] < 1e-11


def test_curve_function_limits_and_monotonicity():
    left, right = PrimitiveState(1, 0, 1), PrimitiveState(2, 0, 3)
    B = np.logspace(-8, 8, 400)
    vals = curve_function(B, left, right, G14)
    assert np.all(np.diff(vals) > 0)
    limit = -G14.nu * (1 + math.sqrt(6))
    assert curve_function(1e-300, left, right, G14) == pytest.approx(limit, rel=1e-6)
    with pytest.raises(DomainError):
        curve_function(0.0, left, right, G14)


class TestVacuum:
    def test_identical_states(self):
        s = PrimitiveState(1, 0, 1)
        assert not vacuum_check(s, s, G14)

    def test_boundary_counts_as_vacuum(self):
        # evaluated in the same floating-point order as the criterion itself
        c = math.sqrt(G14.gamma)
        gap = 2.0 / (G14.gamma - 1.0) * (c + c)
        assert vacuum_check(PrimitiveState(1, 0, 1), PrimitiveState(1, gap, 1), G14)
        assert not vacuum_check(PrimitiveState(1, 0, 1), PrimitiveState(1, gap * (1 - 1e-12), 1), G14)

    def test_strong_receding_flow(self):
        left, right = PrimitiveState(1, -100, 1), PrimitiveState(1, 100, 1)
        assert vacuum_check(left, right, G14)
        sol = solve(left, right, G14)
        assert sol.vacuum and sol.B is None
        assert sol.wave_types[0] is WaveType.RAREFACTION
        assert sol.fan == pytest.approx((-math.sqrt(1.4), math.sqrt(1.4)))
        assert sol.entropy_jump is EntropyJump.NONE

    def test_fan_bound_and_entropy_direction(self):
        left, right = PrimitiveState(1, -50, 1), PrimitiveState(1, 50, 2)
        sol = assemble_fan(left, right, G53)
        assert sol.fan[0] == pytest.approx(-math.sqrt(5 / 3), rel=1e-15)
        assert sol.entropy_jump is EntropyJump.UP

    def test_fan_requires_vacuum(self):
        with pytest.raises(ValueError):
            assemble_fan(PrimitiveState(1, 0, 1), PrimitiveState(1, 0, 1), G14)

    def test_threshold_continuity(self):
        c = math.sqrt(1.4)
        gap = 2 / 0.4 * (2 * c)
        B_prev = 1.0
        for frac in (0.9, 0.99, 0.999, 0.99999):
            sol = solve(PrimitiveState(1, 0, 1), PrimitiveState(1, gap * frac, 1), G14)
            assert sol.B < B_prev
            B_prev = sol.B
        assert B_prev < 1e-20
        assert sol.left_middle.p < 1e-20


@settings(max_examples=60, deadline=None)
@given(left=states, right=states, gamma=st.floats(1.1, 3.0))
def test_reflection_symmetry(left, right, gamma):
    g = derive_constants(gamma)
    L, R = PrimitiveState(*left), PrimitiveState(*right)
    if vacuum_check(L, R, g):
        return
    sol = solve(L, R, g)
    mirrored = solve(PrimitiveState(R.tau, -R.u, R.p), PrimitiveState(L.tau, -L.u, L.p), g)
    assert mirrored.B == pytest.approx(1 / sol.F, rel=1e-9)
    assert mirrored.F == pytest.approx(1 / sol.B, rel=1e-9)
    assert mirrored.C == pytest.approx(1 / sol.C, rel=1e-9)


def test_batch_matches_scalar():
    tau0 = np.array([1.0, 1.0, 1.0])
    u = np.array([-2.0, 0.0, 100.0])
    batch = solve_arrays(tau0, 0.0, 1.0, 1.0, u, 1.0, G14)
    assert list(batch.vacuum) == [False, False, True]
    assert math.isnan(batch.B[2])
    one = solve(PrimitiveState(1, 0, 1), PrimitiveState(1, -2, 1), G14)
    assert batch.B[0] == one.B


def test_rejects_nonpositive_tolerance():
    s = PrimitiveState(1, 0, 1)
    with pytest.raises(ValueError):
        solve(s, s, G14, tol=0.0)
