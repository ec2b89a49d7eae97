import math
import warnings

import pytest
from hypothesis import given, strategies as st

from wavelab import gas as gm
from wavelab.gas import (
    EntropyState,
    PrimitiveState,
    ReferenceConstants,
    Regime,
    derive_constants,
    entropy_from_primitive,
    primitive_from_entropy,
    sound_speed,
)


def test_constants_at_five_thirds():
    g = derive_constants(5 / 3)
    assert g.a == pytest.approx(0.25, abs=1e-15)
    assert g.kappa == pytest.approx(math.sqrt(3) / 2, rel=1e-14)
    assert g.nu == pytest.approx(math.sqrt(15), rel=1e-14)
    assert g.zeta == pytest.approx(0.2, abs=1e-15)
    assert g.regime is Regime.AT_FIVE_THIRDS


def test_constants_at_two_and_seven_fifths():
    assert derive_constants(2.0).a == pytest.approx(1 / 3, abs=1e-15)
    g = derive_constants(1.4)
    assert g.a == pytest.approx(1 / 6, abs=1e-15)
    assert g.zeta == pytest.approx(1 / 7, abs=1e-15)
    assert g.kappa == pytest.approx(math.sqrt(5 / 6), rel=1e-14)
    assert g.nu == pytest.approx(math.sqrt(35), rel=1e-14)
    assert g.regime is Regime.BELOW_FIVE_THIRDS
    assert derive_constants(3.0).regime is Regime.ABOVE_FIVE_THIRDS


@pytest.mark.parametrize("bad", [1.0, 0.5, -2.0, float("nan"), float("inf")])
def test_rejects_gamma_not_above_one(bad):
    with pytest.raises(ValueError):
        derive_constants(bad)


def test_large_gamma_warns_but_works():
    with pytest.warns(UserWarning):
        g = derive_constants(12.0)
    assert 0 < g.a < 1


@given(st.floats(min_value=1.0001, max_value=10.0))
def test_derived_parameters_are_consistent(gamma):
    g = derive_constants(gamma)
    assert 0 < g.a < 1
    assert g.kappa == pytest.approx(math.sqrt(1 - g.a), rel=1e-14)
    assert g.nu * g.a == pytest.approx(math.sqrt(1 - g.a**2), rel=1e-13)
    assert g.zeta == pytest.approx((gamma - 1) / (2 * gamma), rel=1e-13)


def test_sound_speed():
    assert sound_speed(PrimitiveState(1, 0, 1), derive_constants(5 / 3)) == pytest.approx(
        1.2909944487358056, rel=1e-14)
    assert sound_speed(PrimitiveState(4, 0, 0.25), derive_constants(1.4)) == pytest.approx(
        math.sqrt(1.4), rel=1e-14)
    assert sound_speed(PrimitiveState(1, 0, 1e-300), derive_constants(1.4)) < 1e-149


@pytest.mark.parametrize("state", [(0.0, 0, 1), (-1, 0, 1), (1, 0, 0), (1, 0, -1), (1, float("nan"), 1)])
def test_primitive_state_rejects_bad_input(state):
    with pytest.raises(ValueError):
        PrimitiveState(*state)


def test_entropy_reference_values():
    g = derive_constants(1.4)
    ref = ReferenceConstants(K=2.0, c_v=1.0)
    assert entropy_from_primitive(PrimitiveState(1, 0, 2.0), g, ref).S == 0.0
    s = entropy_from_primitive(PrimitiveState(2, 0, 2.0 * 2**-1.4), g, ref)
    assert abs(s.S) < 1e-15
    s = entropy_from_primitive(PrimitiveState(1, 3, math.e * 2.0), g, ref)
    assert s.S == pytest.approx(1.0, rel=1e-15) and s.u == 3


def test_primitive_from_entropy_values():
    g = derive_constants(5 / 3)
    assert primitive_from_entropy(EntropyState(1, 0, 0), g).p == 1.0
    assert primitive_from_entropy(EntropyState(2, 0, 0), g).p == pytest.approx(2 ** (-5 / 3), rel=1e-14)


def test_entropy_round_trip_example():
    g = derive_constants(1.4)
    s = PrimitiveState(0.3, -2.0, 7.0)
    back = primitive_from_entropy(entropy_from_primitive(s, g), g)
    assert back.tau == s.tau and back.u == s.u
    assert back.p == pytest.approx(s.p, rel=1e-12)


@given(
    tau=st.floats(1e-3, 1e3),
    p=st.floats(1e-3, 1e3),
    u=st.floats(-1e3, 1e3),
    gamma=st.floats(1.05, 4.0),
    K=st.floats(0.1, 10.0),
    cv=st.floats(0.1, 10.0),
)
def test_entropy_round_trip_property(tau, p, u, gamma, K, cv):
    g = derive_constants(gamma)
    ref = ReferenceConstants(K=K, c_v=cv)
    back = primitive_from_entropy(entropy_from_primitive(PrimitiveState(tau, u, p), g, ref), g, ref)
    assert back.p == pytest.approx(p, rel=1e-12)


def test_regime_band():
    assert gm.regime_of(derive_constants(5 / 3 + 1e-12)) is Regime.AT_FIVE_THIRDS
    assert gm.regime_of(derive_constants(1.66)) is Regime.BELOW_FIVE_THIRDS
