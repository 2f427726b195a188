"""Tilts over truncated bases and overconvergence in characteristic p."""

import itertools
import random
from fractions import Fraction

import pytest

from wittlab.errors import DepthExceeded, LengthMismatch
from wittlab.norms import NormValue
from wittlab.perfpoly import PerfPolyRing
from wittlab.rings import ZModPM
from wittlab.tilt import (
    TiltElt,
    TiltRing,
    charp_arrow_realization,
    charp_limit_norm,
    charp_overconv_norm,
    enumerate_tilts,
    format_tilt,
    growth_family,
    growth_profile_report,
    make_tilt,
    parse_tilt,
    tilt_add,
    tilt_constant,
    tilt_eq,
    tilt_frobenius,
    tilt_from_json,
    tilt_from_top,
    tilt_is_zero,
    tilt_mul,
    tilt_neg,
    tilt_norm,
    tilt_pth_root,
    tilt_residue,
    tilt_to_json,
    untilt,
    untilt_isometry,
)
from wittlab.witt import WittVec
from wittlab.arrow import arrow_norm


def test_chains_are_pth_power_coherent():
    base = ZModPM(2, 3)
    x = tilt_from_top(base, base.from_int(3), 3)
    for m in range(3):
        assert base.eq(base.mul(x.entries[m + 1], x.entries[m + 1]), x.entries[m])
    bad = list(x.entries)
    bad[0] = base.from_int(5)
    with pytest.raises(LengthMismatch):
        make_tilt(base, bad, validate=True)


def test_enumeration_counts_over_small_bases():
    base = ZModPM(2, 2)
    chains = enumerate_tilts(base, 2)
    # every chain is determined by (top entry, compatible lower entries)
    seen = {tuple(e.value for e in c.entries) for c in chains}
    assert len(seen) == len(chains)
    for c in chains:
        for m in range(2):
            assert base.eq(base.mul(c.entries[m + 1], c.entries[m + 1]), c.entries[m])


def test_ring_laws_on_all_depth_two_chains_mod_four():
    base = ZModPM(2, 2)
    chains = enumerate_tilts(base, 2)
    zero = tilt_constant(base, 0, 2)
    for x, y in itertools.product(chains[:8], chains[:8]):
        assert tilt_eq(tilt_add(x, y), tilt_add(y, x))
        assert tilt_eq(tilt_mul(x, y), tilt_mul(y, x))
    for x in chains:
        assert tilt_eq(tilt_add(x, tilt_neg(x)), zero)
        # characteristic p: the p-fold sum vanishes
        assert tilt_is_zero(tilt_add(x, x))


def test_frobenius_and_root_are_mutual_shifts():
    base = ZModPM(3, 2)
    x = tilt_from_top(base, base.from_int(2), 3)
    trunc = TiltElt(base, x.entries[:-1])
    assert tilt_eq(tilt_pth_root(tilt_frobenius(x)), trunc)
    assert tilt_eq(tilt_frobenius(tilt_pth_root(x)), trunc)
    with pytest.raises(DepthExceeded):
        tilt_pth_root(TiltElt(base, (base.from_int(2),)))


def test_residue_and_norm():
    base = ZModPM(2, 3)
    two = tilt_from_top(base, base.from_int(2), 1)
    # head entry is 2**2 = 4, so the head norm sees exponent 2
    assert tilt_norm(two) == NormValue.from_exponent(2)
    deep = tilt_from_top(base, base.from_int(2), 3)
    assert tilt_norm(deep).is_zero  # 2**8 = 0 mod 8: below resolution
    assert tilt_residue(deep) == deep.entries[0].value % 2


def test_serialization_roundtrips():
    base = ZModPM(2, 3)
    x = tilt_from_top(base, base.from_int(3), 2)
    assert tilt_eq(parse_tilt(base, format_tilt(x)), x)
    assert tilt_eq(tilt_from_json(base, tilt_to_json(x)), x)


def test_tilt_ring_wraps_chains_as_ring_elements():
    base = ZModPM(2, 3)
    tring = TiltRing(base, 2)
    a = tring.from_int(3)
    b = tring.from_int(1)
    assert tring.char_p
    assert tilt_eq(tring.add(a, b), tilt_add(a, b))
    assert tring.is_zero(tring.add(a, a))


def test_overconvergence_formula_agrees_with_truncated_limits():
    ring = PerfPolyRing(2, 1, 6)
    x = WittVec(
        ring,
        (
            ring.monomial([Fraction(3, 4)]),
            ring.monomial([2]),
            ring.add(ring.one(), ring.monomial([Fraction(1, 2)])),
        ),
    )
    for b in (Fraction(1, 2), 1, 2):
        rep = charp_limit_norm(x, b, depth=4)
        assert rep["agree"], rep
        # exported exponents are log_p of the value
        assert charp_overconv_norm(x, b) == NormValue.p_power(
            Fraction(rep["formula_exponent"])
        )


def test_realized_arrow_reproduces_the_formula_norm():
    ring = PerfPolyRing(2, 1, 5)
    x = WittVec(ring, (ring.monomial([Fraction(1, 2)]), ring.monomial([3])))
    a = charp_arrow_realization(x, depth=3)
    got = arrow_norm(a, 1)
    assert got.value == charp_overconv_norm(x, 1)


@pytest.mark.parametrize("C,D", [(0, 0), (1, 0), (1, 2), (2, 1)])
def test_growth_dichotomy(C, D):
    ring = PerfPolyRing(2, 1, 4)
    x = growth_family(ring, C, D, 4)
    for b in (Fraction(1, 2), 1, 2, 3):
        rep = growth_profile_report(x, b, C, D)
        assert rep["degree_bound_holds"]
        assert rep["bounded_predicted"] == (b >= C)
        if b >= C:
            assert rep["sup_exponent"] == str(Fraction(D))


def test_untilt_of_a_teichmuller_chain_is_coherent():
    base = ZModPM(2, 4)
    tring = TiltRing(base, 3)
    chain = tilt_from_top(base, base.from_int(3), 3)
    x = WittVec(tring, (chain,))
    a = untilt(x, 2)
    assert a.depth == 2
    # level n is the Teichmueller lift of the chain entry n levels down
    for n in range(3):
        head = a.levels[n].components[0]
        assert base.eq(head, chain.entries[n])
        for c in a.levels[n].components[1:]:
            assert base.is_zero(c)


def test_untilt_isometry_on_certified_inputs():
    from wittlab.cyclotomic import CycloModPM

    base = CycloModPM(2, 5, 4)
    tring = TiltRing(base, 4)
    t = base.make([1, -1])
    chains = [
        tilt_from_top(base, base.one(), 4),
        tilt_from_top(base, t, 4),
        tilt_from_top(base, base.mul(t, t), 4),
    ]
    for chain in chains:
        x = WittVec(tring, (chain,))
        for b in (Fraction(1, 4), Fraction(1, 2), 1):
            rep = untilt_isometry(x, 2, b)
            assert rep["isometric"], rep
