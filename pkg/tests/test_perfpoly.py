"""Perfect polynomial rings of characteristic p with p-power-root exponents."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wittlab.errors import CapabilityMissing, NoRoot
from wittlab.norms import NormValue
from wittlab.perfpoly import PerfPolyRing


@st.composite
def ring_and_polys(draw):
    ring = PerfPolyRing(2, 1, 4)
    polys = []
    for _ in range(2):
        terms = ring.zero()
        for _ in range(draw(st.integers(0, 3))):
            num = draw(st.integers(0, 24))
            coeff = draw(st.integers(1, 1))
            terms = ring.add(terms, ring.monomial([Fraction(num, ring.unit)], coeff))
        polys.append(terms)
    return ring, polys[0], polys[1]


@given(ring_and_polys())
@settings(max_examples=60)
def test_char_two_addition_cancels_pairs(data):
    ring, a, b = data
    assert ring.is_zero(ring.add(a, a))
    assert ring.eq(ring.add(a, b), ring.add(b, a))
    assert ring.eq(ring.neg(a), a)


@given(ring_and_polys())
@settings(max_examples=60)
def test_frobenius_is_a_ring_map_with_exact_inverse(data):
    ring, a, b = data
    fa = ring.frobenius_elt(a)
    fb = ring.frobenius_elt(b)
    assert ring.eq(ring.frobenius_elt(ring.mul(a, b)), ring.mul(fa, fb))
    assert ring.eq(ring.frobenius_elt(ring.add(a, b)), ring.add(fa, fb))
    assert ring.eq(ring.pth_root(fa), a)


def test_pth_root_fails_at_the_depth_boundary():
    ring = PerfPolyRing(2, 1, 2)
    deepest = ring.monomial([Fraction(1, 4)])
    with pytest.raises(NoRoot):
        ring.pth_root(deepest)
    assert ring.eq(ring.pth_root(ring.frobenius_elt(deepest)), deepest)


def test_degree_norm_is_multiplicative():
    ring = PerfPolyRing(2, 1, 3)
    a = ring.add(ring.monomial([Fraction(3, 8)]), ring.one())
    b = ring.monomial([Fraction(5, 8)])
    assert ring.degree(a) == Fraction(3, 8)
    assert ring.seminorm(ring.mul(a, b)) == NormValue.p_power(1)
    assert ring.seminorm(a).v == -Fraction(3, 8)
    assert ring.seminorm(ring.zero()).is_zero


def test_no_division_by_p_in_characteristic_p():
    ring = PerfPolyRing(3, 1, 1)
    with pytest.raises(CapabilityMissing):
        ring.exact_divide_by_p(ring.one())
    # 3-fold sums vanish
    x = ring.monomial([Fraction(1, 3)])
    assert ring.is_zero(ring.add(ring.add(x, x), x))


def test_parse_format_roundtrip():
    ring = PerfPolyRing(2, 1, 3)
    a = ring.add(ring.monomial([Fraction(5, 8)]), ring.one())
    text = ring.format_elt(a)
    assert ring.eq(ring.parse_elt(text), a)
