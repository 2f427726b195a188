"""Base coefficient rings: exact arithmetic, precision tracking, seminorms."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wittlab.errors import MalformedConfig, NotDivisible, PrecisionExhausted
from wittlab.norms import NormValue
from wittlab.rings import Integers, Rationals, ZModPM, check_prime, vp_fraction, vp_int

import oracles

small_ints = st.integers(min_value=-60, max_value=60)
small_fracs = st.fractions(min_value=-30, max_value=30, max_denominator=24)


def test_check_prime_accepts_primes_and_rejects_composites():
    assert check_prime(2) == 2
    assert check_prime(13) == 13
    for bad in (0, 1, 4, 9, -3, 15):
        with pytest.raises(MalformedConfig):
            check_prime(bad)


@given(small_ints, st.sampled_from([2, 3, 5, 7]))
def test_vp_int_matches_trial_division(n, p):
    if n == 0:
        assert vp_int(n, p) is None
    else:
        assert vp_int(n, p) == oracles.vp_int(n, p)


@given(small_fracs, st.sampled_from([2, 3, 5]))
def test_vp_fraction_matches_trial_division(q, p):
    if q == 0:
        assert vp_fraction(q, p) is None
    else:
        assert vp_fraction(q, p) == oracles.vp_fraction(q, p)


@given(small_ints, small_ints, small_ints, st.sampled_from([2, 3, 5]))
def test_integers_ring_laws(a, b, c, p):
    ring = Integers(p)
    assert ring.add(a, b) == a + b
    assert ring.mul(a, b) == a * b
    assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
    assert ring.sub(a, ring.neg(b)) == a + b


@given(small_ints, st.sampled_from([2, 3, 5]))
def test_integers_seminorm_is_p_adic(n, p):
    ring = Integers(p)
    v = ring.seminorm(n)
    if n == 0:
        assert v.is_zero
    else:
        assert v == NormValue.from_exponent(oracles.vp_int(n, p))


def test_integers_divide_by_p_and_root():
    ring = Integers(3)
    assert ring.exact_divide_by_p(12) == 4
    with pytest.raises(NotDivisible):
        ring.exact_divide_by_p(7)
    for a in range(-5, 6):
        root = ring.pth_root_mod_p(a)
        assert (root**3 - a) % 3 == 0


@given(small_fracs, small_fracs, st.sampled_from([2, 3]))
def test_rationals_arithmetic_and_seminorm(a, b, p):
    ring = Rationals(p)
    assert ring.add(a, b) == a + b
    assert ring.mul(a, b) == a * b
    v = ring.seminorm(a)
    if a == 0:
        assert v.is_zero
    else:
        assert v == NormValue.from_exponent(oracles.vp_fraction(a, p))


def test_rationals_parse_and_capabilities():
    ring = Rationals(2)
    assert ring.parse_elt("3/4") == Fraction(3, 4)
    assert ring.q_algebra
    assert ring.p_torsion_free
    assert not Integers(2).q_algebra


def test_truncated_residues_track_precision():
    ring = ZModPM(2, 5)
    a = ring.from_int(7)
    assert a.prec == 5 and a.value == 7
    b = ring.make(3, 2)
    assert ring.add(a, b).prec == 2
    assert ring.mul(a, b).prec == 2
    assert ring.eq(ring.make(2, 2), ring.make(6, 2))
    assert not ring.eq(ring.make(2, 3), ring.make(6, 3))


def test_truncated_frobenius_power_gains_digits():
    ring = ZModPM(2, 6)
    a = ring.make(3, 2)
    sq = ring.pow_p_tower(a, 1)
    assert sq.prec == 3
    assert sq.value == 9 % 8
    assert ring.pow_p_tower(a, 10).prec == 6


def test_truncated_division_spends_a_digit():
    ring = ZModPM(3, 3)
    a = ring.from_int(6)
    q = ring.exact_divide_by_p(a)
    assert (q.value, q.prec) == (2, 2)
    with pytest.raises(NotDivisible):
        ring.exact_divide_by_p(ring.from_int(5))
    last = ring.make(3, 1)
    with pytest.raises(PrecisionExhausted):
        ring.exact_divide_by_p(last)


def test_truncated_parse_format_roundtrip():
    ring = ZModPM(2, 4)
    a = ring.parse_elt("5~2")
    assert (a.value, a.prec) == (1, 2)
    assert ring.parse_elt(ring.format_elt(a)).value == a.value
    full = ring.parse_elt("11")
    assert (full.value, full.prec) == (11, 4)
    assert ring.format_elt(full) == "11"


@given(st.integers(0, 63), st.integers(0, 63), st.integers(0, 63))
def test_truncated_ring_laws_mod_64(x, y, z):
    ring = ZModPM(2, 6)
    a, b, c = ring.from_int(x), ring.from_int(y), ring.from_int(z)
    assert ring.eq(ring.add(a, b), ring.add(b, a))
    assert ring.eq(ring.mul(a, b), ring.mul(b, a))
    assert ring.eq(
        ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c))
    )
    assert ring.eq(ring.add(a, ring.neg(a)), ring.zero())


def test_truncated_seminorm_reads_the_canonical_lift():
    ring = ZModPM(2, 4)
    assert ring.seminorm(ring.from_int(12)) == NormValue.from_exponent(2)
    assert ring.seminorm(ring.from_int(16)).is_zero
    assert ring.seminorm(ring.from_int(0)).is_zero
