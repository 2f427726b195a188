"""Witt vector arithmetic: ghost transport, operators, norms, serialization."""

import os
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wittlab.cyclotomic import GaussianField, cyclotomic_field
from wittlab.errors import (
    IntegralityViolation,
    LengthMismatch,
    MalformedConfig,
    NotDivisible,
)
from wittlab.norms import NormValue
from wittlab.perfpoly import PerfPolyRing
from wittlab.rings import Integers, Rationals, ZModPM
from wittlab.witt import (
    WittVec,
    format_witt,
    frobenius,
    ghost,
    integer_witt_components,
    mul_by_int,
    parse_witt,
    restrict,
    teich_mul,
    teichmuller,
    unghost,
    verschiebung,
    witt_add,
    witt_eq,
    witt_from_integer,
    witt_from_json,
    witt_mul,
    witt_neg,
    witt_norm,
    witt_one,
    witt_sub,
    witt_to_json,
    witt_vec,
    witt_zero,
)

import oracles

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")

int_vec = st.lists(st.integers(-8, 8), min_size=1, max_size=4)


def _zvec(comps, p=2):
    ring = Integers(p)
    return WittVec(ring, tuple(ring.from_int(c) for c in comps))


def test_ghost_example():
    assert ghost(_zvec([1, 1])).entries == (1, 3)


def test_unghost_example():
    ring = Integers(2)
    x = unghost(ghost(_zvec([3, -2])))
    assert x.components == (3, -2)
    direct = unghost(ghost(WittVec(ring, (3, 5))))
    assert direct.components == (3, 5)


def test_from_integer_two():
    assert witt_from_integer(Integers(2), 2, 2).components == (2, -1)
    assert integer_witt_components(2, 2, 3) == (2, -1, -4)


def test_unghost_rejects_non_integral_targets():
    ring = Integers(2)
    from wittlab.witt import GhostVec

    with pytest.raises((IntegralityViolation, NotDivisible)):
        unghost(GhostVec(ring, (1, 2)))


def test_teichmuller_sum():
    one = teichmuller(Integers(2), 1, 2)
    total = witt_add(one, one)
    assert total.components == (2, -1)


@given(int_vec, st.sampled_from([2, 3]))
def test_ghost_matches_oracle(comps, p):
    x = _zvec(comps, p)
    assert ghost(x).entries == oracles.naive_ghost(p, comps)


@given(int_vec, int_vec, st.sampled_from([2, 3]))
def test_add_and_mul_are_ghost_pointwise(a, b, p):
    n = min(len(a), len(b))
    x, y = _zvec(a[:n], p), _zvec(b[:n], p)
    wx = oracles.naive_ghost(p, a[:n])
    wy = oracles.naive_ghost(p, b[:n])
    assert ghost(witt_add(x, y)).entries == tuple(u + v for u, v in zip(wx, wy))
    assert ghost(witt_mul(x, y)).entries == tuple(u * v for u, v in zip(wx, wy))
    assert ghost(witt_sub(x, y)).entries == tuple(u - v for u, v in zip(wx, wy))
    assert ghost(witt_neg(x)).entries == tuple(-u for u in wx)


@given(int_vec.filter(lambda v: len(v) >= 2), st.sampled_from([2, 3]))
def test_frobenius_shifts_and_verschiebung_scales_ghosts(comps, p):
    x = _zvec(comps, p)
    w = oracles.naive_ghost(p, comps)
    assert ghost(frobenius(x)).entries == w[1:]
    # V prepends a zero component, extending the vector by one level
    wv = ghost(verschiebung(x)).entries
    assert wv[0] == 0
    assert wv[1:] == tuple(p * u for u in w)


@given(int_vec, st.sampled_from([2, 3]))
def test_frobenius_after_verschiebung_is_multiplication_by_p(comps, p):
    x = _zvec(comps, p)
    assert witt_eq(frobenius(verschiebung(x)), mul_by_int(p, x))


def test_mixed_lengths_are_rejected():
    with pytest.raises(LengthMismatch):
        witt_add(_zvec([1, 2]), _zvec([1]))


def test_teichmuller_is_multiplicative():
    ring = Rationals(2)
    for r, s in [(Fraction(3), Fraction(5)), (Fraction(1, 2), Fraction(4))]:
        lhs = witt_mul(teichmuller(ring, r, 3), teichmuller(ring, s, 3))
        assert witt_eq(lhs, teichmuller(ring, r * s, 3))
    x = WittVec(ring, (Fraction(1), Fraction(2), Fraction(-1)))
    assert witt_eq(teich_mul(Fraction(3), x), witt_mul(teichmuller(ring, Fraction(3), 3), x))


def test_truncated_ring_ops_reduce_the_integer_result():
    zring = Integers(2)
    tring = ZModPM(2, 3)
    a, b = [1, 2, 3], [3, 1, 2]
    over_z = witt_mul(_zvec(a), _zvec(b))
    over_t = witt_mul(
        WittVec(tring, tuple(tring.from_int(c) for c in a)),
        WittVec(tring, tuple(tring.from_int(c) for c in b)),
    )
    for zc, tc in zip(over_z.components, over_t.components):
        assert (zc - tc.value) % 2**tc.prec == 0


def test_char_p_frobenius_is_componentwise_power():
    ring = PerfPolyRing(2, 1, 3)
    x = WittVec(
        ring,
        (
            ring.monomial([Fraction(1, 2)]),
            ring.add(ring.one(), ring.monomial([Fraction(3, 4)])),
        ),
    )
    fx = frobenius(restrict(x, 1))
    assert ring.eq(fx.components[0], ring.frobenius_elt(x.components[0]))


def test_witt_norm_is_the_weighted_sup():
    ring = Rationals(2)
    x = WittVec(ring, (Fraction(4), Fraction(1, 2), Fraction(3)))
    # exponents: v(4)/1 = 2, v(1/2)/2 = -1/2, v(3)/4 = 0
    assert witt_norm(x) == NormValue.from_exponent(Fraction(-1, 2))
    assert witt_norm(witt_zero(ring, 3)).is_zero
    assert witt_norm(witt_one(ring, 3)) == NormValue.one()


@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=8), min_size=1, max_size=3))
def test_witt_norm_matches_direct_formula(comps):
    ring = Rationals(3)
    x = WittVec(ring, tuple(comps))
    exps = [
        Fraction(oracles.vp_fraction(c, 3), 3**i)
        for i, c in enumerate(comps)
        if c != 0
    ]
    if not exps:
        assert witt_norm(x).is_zero
    else:
        assert witt_norm(x) == NormValue.from_exponent(min(exps))


def test_text_serialization_roundtrip():
    ring = Integers(2)
    x = witt_vec(ring, (3, -2))
    assert format_witt(x, tagged=True) == "W(p=2; 3, -2)"
    assert parse_witt(ring, "W(p=2; 3, -2)").components == (3, -2)
    assert parse_witt(ring, "(3, -2)").components == (3, -2)
    with pytest.raises(MalformedConfig):
        parse_witt(ring, "W(p=3; 1, 0)")
    with pytest.raises(MalformedConfig):
        parse_witt(ring, "()")


def test_json_roundtrip():
    ring = ZModPM(2, 4)
    x = WittVec(ring, (ring.make(5, 4), ring.make(3, 2)))
    data = witt_to_json(x)
    back = witt_from_json(ring, data)
    assert witt_eq(back, x)
    assert back.components[1].prec == 2


def test_ghost_table_matches_golden():
    ring = Integers(2)
    with open(os.path.join(GOLDEN, "ghost_table_p2.txt"), encoding="utf-8") as fh:
        for line in fh:
            left, right = line.strip().split(" -> ")
            x = parse_witt(ring, left)
            want = tuple(int(tok) for tok in right.strip("()").split(", "))
            assert ghost(x).entries == want


def _cyclo_ghost(p, k, comps):
    """Ghost components over Q(zeta_{p^k}) via the convolution oracle."""
    e = p ** (k - 1) * (p - 1)

    def power(coeffs, n):
        acc = [Fraction(1)] + [Fraction(0)] * (e - 1)
        for _ in range(n):
            acc = oracles.conv_reduce(acc, coeffs, p, k)
        return acc

    out = []
    for m in range(len(comps)):
        acc = [Fraction(0)] * e
        for i in range(m + 1):
            contrib = power(list(comps[i]), p ** (m - i))
            acc = [a + p**i * c for a, c in zip(acc, contrib)]
        out.append(tuple(acc))
    return tuple(out)


def test_q_algebra_cyclotomic_arithmetic_goes_through_ghosts():
    field = cyclotomic_field(2, 2)
    i_unit = field.from_coeffs([0, 1])
    x = WittVec(field, (i_unit, field.one()))
    y = WittVec(field, (field.one(), i_unit))
    total = witt_add(x, y)
    gx = _cyclo_ghost(2, 2, x.components)
    gy = _cyclo_ghost(2, 2, y.components)
    want = tuple(tuple(map(sum, zip(u, v))) for u, v in zip(gx, gy))
    assert tuple(ghost(total).entries) == want


def test_gaussian_vectors_restrict_consistently():
    field = GaussianField(5)
    x = WittVec(field, (field.from_pair(1, 2), field.from_pair(0, 1), field.one()))
    assert restrict(x, 1).components == x.components[:2]
    assert witt_eq(witt_add(restrict(x, 1), witt_zero(field, 2)), restrict(x, 1))
