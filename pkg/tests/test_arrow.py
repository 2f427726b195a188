"""Coherent families under Frobenius: arithmetic, norms, theta, rigidity."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wittlab.arrow import (
    arrow_add,
    arrow_eq,
    arrow_from_integer,
    arrow_mul,
    arrow_neg,
    arrow_norm,
    arrow_teichmuller,
    arrow_to_json,
    frobenius_arrow,
    inverse_frobenius,
    inverse_frobenius_sandwich,
    lift_arrow_precision,
    make_arrow,
    project,
    rigidity_profile,
    sample_coherent,
    theta,
    theta_series,
)
from wittlab.errors import DepthExceeded, IntegralityViolation, LengthMismatch
from wittlab.norms import NormValue
from wittlab.rings import Integers, ZModPM
from wittlab.witt import WittVec, frobenius, witt_eq, witt_from_integer

import oracles


def _draw(ring, rng):
    return lambda: ring.from_int(rng.randrange(ring.p**ring.M))


def test_integer_family_levels():
    a = arrow_from_integer(Integers(2), 2, 2)
    assert [lv.components for lv in a.levels] == [(2,), (2, -1), (2, -1, -4)]
    assert project(a, 1).components == (2, -1)
    with pytest.raises(DepthExceeded):
        project(a, 3)


def test_integer_family_is_coherent_and_rigid():
    for c in (-5, -2, 0, 3, 7):
        a = arrow_from_integer(Integers(3), c, 3)
        for n in range(a.depth):
            assert witt_eq(frobenius(a.levels[n + 1]), a.levels[n])
        assert all(rigidity_profile(a))


def test_perturbing_a_component_breaks_coherence():
    ring = Integers(2)
    a = arrow_from_integer(ring, 6, 3)
    levels = list(a.levels)
    bad = list(levels[2].components)
    bad[1] += 1
    levels[2] = WittVec(ring, tuple(bad))
    with pytest.raises(IntegralityViolation):
        make_arrow(ring, tuple(levels), validate=True)


def test_norm_of_two_at_full_weight():
    a = arrow_from_integer(Integers(2), 2, 4)
    result = arrow_norm(a, 1)
    assert result.value == NormValue.from_exponent(1)
    assert result.status == "exact"


def test_norm_of_two_at_half_weight():
    a = arrow_from_integer(Integers(2), 2, 4)
    result = arrow_norm(a, Fraction(1, 2))
    assert result.value == NormValue.from_exponent(Fraction(1, 2))
    assert result.status == "exact"
    assert result.attained_at == 1


@given(st.integers(-9, 9), st.sampled_from([2, 3]))
@settings(max_examples=30, deadline=None)
def test_norm_of_integer_constants(c, p):
    # |c|_{W,b} for an ordinary p-adic integer is just p**(-v_p(c)) once b >= 1
    a = arrow_from_integer(Integers(p), c, 3)
    result = arrow_norm(a, 2)
    if c == 0:
        assert result.value.is_zero
    else:
        assert result.value == NormValue.from_exponent(oracles.vp_int(c, p))


def test_arrow_ring_laws_over_truncated_base():
    ring = ZModPM(2, 5)
    rng = random.Random(11)
    for _ in range(10):
        a = sample_coherent(ring, 3, _draw(ring, rng))
        b = sample_coherent(ring, 3, _draw(ring, rng))
        assert arrow_eq(arrow_add(a, b), arrow_add(b, a))
        assert arrow_eq(arrow_mul(a, b), arrow_mul(b, a))
        assert arrow_eq(arrow_add(a, arrow_neg(a)), arrow_from_integer(ring, 0, 3))


def test_depth_mismatch_is_rejected():
    ring = ZModPM(2, 4)
    with pytest.raises(LengthMismatch):
        arrow_add(arrow_from_integer(ring, 1, 2), arrow_from_integer(ring, 1, 3))


def test_frobenius_and_inverse_shift_levels():
    ring = ZModPM(2, 5)
    rng = random.Random(5)
    a = sample_coherent(ring, 3, _draw(ring, rng))
    down = inverse_frobenius(a)
    assert down.depth == a.depth - 1
    # F then F^{-1} round-trips onto the truncated family
    back = inverse_frobenius(frobenius_arrow(a))
    for n in range(back.depth + 1):
        assert witt_eq(back.levels[n], a.levels[n])


def test_theta_fixes_ordinary_integers():
    ring = ZModPM(2, 6)
    for k in (-3, -1, 0, 1, 2, 3):
        a = arrow_from_integer(ring, k, 3)
        assert ring.eq(theta(a), ring.from_int(k))


def test_theta_of_teichmuller_one():
    ring = ZModPM(3, 4)
    a = arrow_teichmuller(ring, [ring.one()] * 3)
    assert ring.eq(theta(a), ring.one())


def test_theta_series_agrees_and_perturbations_stay_small():
    ring = ZModPM(2, 6)
    rng = random.Random(3)
    for _ in range(10):
        a = sample_coherent(ring, 2, _draw(ring, rng))
        tv = theta(a)
        sv, _terms = theta_series(a)
        assert ring.eq(sv, tv)
        # changing the lifts by multiples of p^(M-N) cannot move the series
        pert = [ring.from_int(2 ** (6 - 2) * rng.randrange(4)) for _ in range(3)]
        sv2, _ = theta_series(a, lift_perturbation=lambda i: pert[i])
        assert ring.seminorm(ring.sub(sv2, tv)) <= NormValue.from_exponent(6 - 2)


def test_theta_is_a_ring_map_on_samples():
    ring = ZModPM(3, 5)
    rng = random.Random(9)
    for _ in range(10):
        a = sample_coherent(ring, 2, _draw(ring, rng))
        b = sample_coherent(ring, 2, _draw(ring, rng))
        assert ring.eq(theta(arrow_add(a, b)), ring.add(theta(a), theta(b)))
        assert ring.eq(theta(arrow_mul(a, b)), ring.mul(theta(a), theta(b)))


def test_precision_lift_reproduces_the_washed_family():
    small = ZModPM(2, 2)
    a = arrow_from_integer(small, 3, 5)
    lifted = lift_arrow_precision(a, 1, check=True)
    assert lifted.ring.M == 3
    want = arrow_from_integer(lifted.ring, 3, 1)
    for n in range(2):
        assert witt_eq(lifted.levels[n], want.levels[n])


def test_sandwich_on_integer_families():
    ring = ZModPM(2, 6)
    rng = random.Random(2)
    for b in (1, 2, 4):
        a = sample_coherent(ring, 3, _draw(ring, rng))
        rep = inverse_frobenius_sandwich(a, b)
        assert rep["passed"], rep


def test_json_export_reconstructs_the_family():
    ring = ZModPM(2, 4)
    a = arrow_from_integer(ring, 5, 2)
    data = arrow_to_json(a)
    assert data["ring"] == {"kind": "Zmod", "p": 2, "M": 4}
    levels = tuple(
        WittVec(ring, tuple(ring.elt_from_json(c) for c in row))
        for row in data["levels"]
    )
    back = make_arrow(ring, levels, validate=True)
    assert arrow_eq(back, a)
