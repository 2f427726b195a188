"""Cyclotomic fields, their truncations, the tower, and the Gaussian field."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wittlab.cyclotomic import (
    CycloModPM,
    CyclotomicTower,
    GaussianField,
    cyclotomic_field,
)
from wittlab.errors import IntegralityViolation
from wittlab.norms import NormValue

import oracles

coeff = st.fractions(min_value=-6, max_value=6, max_denominator=6)


@st.composite
def field_and_pair(draw):
    p, k = draw(st.sampled_from([(2, 2), (2, 3), (3, 2)]))
    field = cyclotomic_field(p, k)
    a = tuple(draw(coeff) for _ in range(field.e))
    b = tuple(draw(coeff) for _ in range(field.e))
    return field, a, b


@given(field_and_pair())
@settings(max_examples=60)
def test_field_multiplication_matches_convolution_oracle(data):
    field, a, b = data
    got = field.mul(a, b)
    want = tuple(oracles.conv_reduce(a, b, field.p, field.k))
    assert got == want


@given(field_and_pair())
@settings(max_examples=40)
def test_field_valuation_matches_determinant_oracle(data):
    field, a, _ = data
    if all(c == 0 for c in a):
        assert field.seminorm(a).is_zero
        return
    v = oracles.cyclotomic_valuation(a, field.p, field.k)
    assert field.valuation(a) == v
    assert field.seminorm(a) == NormValue.from_exponent(v)


@given(field_and_pair())
@settings(max_examples=40)
def test_field_inverse(data):
    field, a, b = data
    if not field.is_zero(a):
        assert field.eq(field.mul(a, field.inv(a)), field.one())
    assert field.eq(field.sub(field.add(a, b), b), a)


def test_uniformizer_valuation_is_one_over_e():
    for p, k in [(2, 2), (2, 3), (3, 2)]:
        field = cyclotomic_field(p, k)
        t = field.uniformizer()
        assert field.valuation(t) == Fraction(1, field.e)
        assert field.valuation(field.from_int(p)) == 1


def test_zeta8_contains_a_square_root_of_two():
    field = cyclotomic_field(2, 3)
    root = field.from_coeffs([0, 1, 0, -1])  # zeta - zeta^3
    assert field.eq(field.mul(root, root), field.from_int(2))


def test_integral_coeffs_rejects_denominators():
    field = cyclotomic_field(2, 2)
    assert field.integral_coeffs(field.from_int(3)) == (3, 0)
    with pytest.raises(IntegralityViolation):
        field.integral_coeffs(field.from_coeffs([Fraction(1, 2), 0]))


def test_truncated_cyclotomic_matches_integer_convolution():
    ring = CycloModPM(2, 3, 4)
    field = cyclotomic_field(2, 3)
    a = ring.make([1, 3, 0, 2])
    b = ring.make([0, 1, 1, 5])
    got = ring.mul(a, b)
    want = oracles.conv_reduce_int([1, 3, 0, 2], [0, 1, 1, 5], 2, 3, 2**4)
    assert list(got.coeffs) == want


def test_truncated_cyclotomic_parse_and_precision():
    ring = CycloModPM(2, 2, 3)
    a = ring.parse_elt("[1, 2]~2")
    assert ring.precision_of(a) == 2
    full = ring.parse_elt("[1, 2]")
    assert ring.precision_of(full) == 3
    assert ring.eq(a, ring.truncate(full, 2))
    sq = ring.pow_p_tower(a, 1)
    assert ring.precision_of(sq) == 3
    # overlong coefficient lists reduce through the relation zeta^2 = -1
    assert ring.parse_elt("[1, 2, 3]").coeffs == ((1 - 3) % 8, 2)


def test_tower_embeddings_commute_with_arithmetic():
    tower = CyclotomicTower(2)
    f1, f2 = tower.field(1), tower.field(2)
    a = f1.from_coeffs([Fraction(1, 2)])
    b = f1.from_coeffs([3])
    up = tower.embed_up(1, 2, f1.mul(a, b))
    assert f2.eq(up, f2.mul(tower.embed_up(1, 2, a), tower.embed_up(1, 2, b)))
    # embeddings preserve the valuation
    t = f1.uniformizer()
    assert f2.valuation(tower.embed_up(1, 2, t)) == f1.valuation(t)


def test_gaussian_multiplication_matches_oracle():
    g = GaussianField(5)
    a = g.from_pair(Fraction(1, 2), 3)
    b = g.from_pair(2, Fraction(-1, 5))
    assert g.mul(a, b) == oracles.gauss_mul(a, b)
    assert g.eq(g.mul(g.from_pair(0, 1), g.from_pair(0, 1)), g.from_int(-1))


def test_gaussian_seminorm_split_and_inert():
    split = GaussianField(5)
    assert split.split
    # both primes above 5 are tracked; the seminorm reads the worst place
    assert split.seminorm(split.from_pair(2, 1)) == NormValue.one()
    assert split.seminorm(split.from_pair(2, -1)) == NormValue.one()
    assert split.seminorm(split.from_int(5)) == NormValue.from_exponent(1)
    inert = GaussianField(3)
    assert not inert.split
    # v(a+bi) = v_3(a^2 + b^2) / 2 at an inert prime
    assert inert.seminorm(inert.from_pair(0, 3)) == NormValue.from_exponent(1)
    assert inert.seminorm(inert.from_pair(1, 1)) == NormValue.one()
    assert inert.seminorm(inert.from_pair(3, 3)) == NormValue.from_exponent(1)


@given(st.integers(-5, 5), st.integers(-5, 5), st.sampled_from([3, 5]))
def test_gaussian_power_multiplicativity(a, b, p):
    g = GaussianField(p)
    x = g.from_pair(a, b)
    if g.is_zero(x):
        return
    assert g.seminorm(g.mul(x, x)) == g.seminorm(x).pow(2)
