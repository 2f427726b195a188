"""Witt-perfectness verdicts, root sequences, and both Frobenius solvers."""

import random
from fractions import Fraction

import pytest

from wittlab.errors import (
    CapabilityMissing,
    IntegralityViolation,
    MalformedConfig,
    NoRoot,
)
from wittlab.perfect import (
    build_root_sequence,
    power_ideal_check,
    solve_frobenius,
    solve_frobenius_normed,
    witt_perfect_test,
)
from wittlab.rings import Integers, ZModPM
from wittlab.witt import WittVec, frobenius, witt_eq, witt_norm

import oracles


def test_root_sequence_p2_certificates():
    seq = build_root_sequence(2, 3)
    assert all(seq.verify().values())
    f1 = seq.tower.field(1)
    x1 = seq.value(1)
    assert f1.valuation(x1) == Fraction(1, 2)
    # independent: x1^2 = 2 mod 4 by convolution in the conductor-8 basis
    coeffs = list(f1.integral_coeffs(x1))
    square = oracles.conv_reduce_int(coeffs, coeffs, 2, 3, 4)
    assert square[0] % 4 == 2
    assert all(c % 4 == 0 for c in square[1:])


def test_root_sequence_p3_certificates():
    seq = build_root_sequence(3, 1)
    assert all(seq.verify().values())
    f1 = seq.tower.field(1)
    coeffs = list(f1.integral_coeffs(seq.value(1)))
    cube = oracles.conv_reduce_int(
        coeffs, oracles.conv_reduce_int(coeffs, coeffs, 3, 3, 27), 3, 3, 27
    )
    assert cube[0] % 9 == 3
    assert all(c % 9 == 0 for c in cube[1:])


@pytest.mark.parametrize("p", [2, 3, 5])
def test_integers_are_not_witt_perfect(p):
    report = witt_perfect_test({"instance": "Z", "p": p})
    assert report.verdict == "no"
    assert report.condition_a["holds"]
    assert not report.condition_b["holds"]
    a = report.condition_b["witness_a"]
    # independent recheck: no b has b^p = p*a mod p^2
    assert all(pow(b, p, p * p) != (p * a) % (p * p) for b in range(p * p))


def test_gaussian_integers_fail_at_five():
    report = witt_perfect_test({"instance": "Qi", "p": 5})
    assert report.verdict == "no"
    text = report.condition_b["witness_a"]
    re_txt, im_txt = text.replace("i", "").split("+")
    a = (int(re_txt) % 25, int(im_txt) % 25)
    found = False
    for c in range(25):
        for d in range(25):
            z = (1, 0)
            for _ in range(5):
                z = (
                    (z[0] * c - z[1] * d) % 25,
                    (z[0] * d + z[1] * c) % 25,
                )
            if z == ((5 * a[0]) % 25, (5 * a[1]) % 25):
                found = True
    assert not found


def test_zeta8_ring_contains_a_square_root_of_two():
    report = witt_perfect_test({"instance": "zeta-ring", "p": 2, "k": 3})
    root = report.condition_b["root_of_p"]
    assert root is not None
    square = oracles.conv_reduce_int(list(root), list(root), 2, 3, 4)
    assert square[0] % 4 == 2 and all(c % 4 == 0 for c in square[1:])


def test_zeta9_ring_is_not_witt_perfect():
    report = witt_perfect_test({"instance": "zeta-ring", "p": 3, "k": 2})
    assert report.verdict == "no"
    assert not (report.condition_a["holds"] and report.condition_b["holds"])


def test_tower_is_witt_perfect_up_to_level_two():
    report = witt_perfect_test(
        {"instance": "tower", "p": 2, "levels": 2}, random.Random(0)
    )
    assert report.verdict == "yes-up-to-level-2"
    assert report.condition_a["holds"] and report.condition_b["holds"]
    assert all(report.condition_b["x1_checks"].values())


def test_solve_frobenius_roundtrip_and_precision():
    ring = ZModPM(2, 6)
    rng = random.Random(4)
    for _ in range(25):
        length = rng.randint(2, 4)
        y = WittVec(ring, tuple(ring.from_int(rng.randrange(64)) for _ in range(length)))
        x = frobenius(y)
        y2, rep = solve_frobenius(x)
        assert witt_eq(frobenius(y2), x)
        assert rep["solved"]
        precs = rep["output_precisions"]
        assert precs == sorted(precs, reverse=True)


def test_solve_frobenius_certifies_no_preimage():
    ring = ZModPM(2, 6)
    with pytest.raises(NoRoot):
        solve_frobenius(WittVec(ring, (ring.from_int(3), ring.from_int(0))))


def test_solve_frobenius_needs_a_truncated_base():
    with pytest.raises(CapabilityMissing):
        solve_frobenius(WittVec(Integers(2), (2, 0)))


def test_normed_solver_on_the_integer_two():
    seq = build_root_sequence(2, 6)
    f1 = seq.tower.field(1)
    x = WittVec(f1, (f1.from_int(2),))
    y, rep = solve_frobenius_normed(seq, 1, x)
    assert rep["exact"] and rep["norm_contract"]
    W = seq.tower.field(rep["working_level"])
    X = WittVec(W, (seq.tower.embed_up(1, rep["working_level"], f1.from_int(2)),))
    assert witt_eq(frobenius(y), X)
    assert witt_norm(y).pow(2) <= witt_norm(X)


def test_normed_solver_on_uniformizer_powers():
    seq = build_root_sequence(2, 6)
    f1 = seq.tower.field(1)
    t = f1.uniformizer()
    for j in (1, 2, 3):
        x = WittVec(f1, (f1.pow_(t, j),))
        y, rep = solve_frobenius_normed(seq, 1, x)
        assert rep["exact"] and rep["norm_contract"], (j, rep)


def test_normed_solver_repairs_the_two_digit_branch():
    seq = build_root_sequence(2, 6)
    f1 = seq.tower.field(1)
    t2 = f1.pow_(f1.uniformizer(), 2)
    x = WittVec(f1, (t2, t2))
    y, rep = solve_frobenius_normed(seq, 1, x)
    assert rep["digit_fix"]
    assert rep["exact"] and rep["norm_contract"]
    W = seq.tower.field(rep["working_level"])
    X = WittVec(W, tuple(seq.tower.embed_up(1, rep["working_level"], c) for c in x.components))
    assert witt_eq(frobenius(y), X)


def test_normed_solver_never_returns_a_contract_violation():
    seq = build_root_sequence(2, 6)
    f1 = seq.tower.field(1)
    x = WittVec(f1, (f1.zero(), f1.uniformizer()))
    with pytest.raises(IntegralityViolation):
        solve_frobenius_normed(seq, 1, x)


def test_power_ideal_membership_is_equivalent_both_ways():
    seq = build_root_sequence(2, 2)
    x1 = seq.value(1)
    inside = power_ideal_check(seq, 1, x1, 1, 1)
    assert inside["member"] and inside["forward_in_pm"] and inside["equivalent"]
    assert inside["alpha_integral"] and inside["identity_check"]
    outside = power_ideal_check(seq, 1, x1, 1, 2)
    assert not outside["member"] and not outside["forward_in_pm"]
    assert outside["equivalent"]
    assert "nonmember_certificate" in outside


def test_power_ideal_check_validates_its_exponents():
    seq = build_root_sequence(2, 2)
    x1 = seq.value(1)
    with pytest.raises(MalformedConfig):
        power_ideal_check(seq, 1, x1, 1, 0)
    with pytest.raises(MalformedConfig):
        power_ideal_check(seq, 1, x1, 1, 3)
    with pytest.raises(MalformedConfig):
        power_ideal_check(seq, 1, x1, 5, 1)


def test_unknown_instance_is_rejected():
    with pytest.raises(MalformedConfig):
        witt_perfect_test({"instance": "nope", "p": 2})
