"""Named verification suites behind the ``verify`` subcommand.

Each suite bundles executable checks of the library's mathematical
guarantees into a reproducible report.  All randomness flows from a single
seed (every check derives its own stream from seed and check name, so suites
are pure functions of their configuration), and the JSON form of a report is
byte-stable: cases are keyed and sorted on emission and the wall-clock field
is nulled out there.  Failing cases always carry the exact rational-exponent
values of both sides in their detail string.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .arrow import (
    ArrowElt,
    arrow_add,
    arrow_eq,
    arrow_from_integer,
    arrow_mul,
    arrow_norm,
    arrow_teichmuller,
    inverse_frobenius_sandwich,
    lift_arrow_precision,
    make_arrow,
    map_components,
    rigidity_profile,
    sample_coherent,
    theta,
    theta_series,
)
from .artin import (
    ghost_constant_profile,
    invariant_classify,
    teichmuller_phi_invariance,
)
from .cyclotomic import CycloModPM, CyclotomicField, GaussianField, cyclotomic_field
from .errors import (
    IntegralityViolation,
    MalformedConfig,
    NoRoot,
    UnknownSuite,
    WittError,
)
from .kernelnorm import (
    kernel_element_from_w1,
    symbolic_kernel_identity,
    verify_kernel_norm,
)
from .norms import NormValue, norm_max
from .perfect import (
    build_root_sequence,
    solve_frobenius,
    solve_frobenius_normed,
    witt_perfect_test,
)
from .perfpoly import PerfPolyRing
from .rings import Integers, Rationals, Ring, ZModPM
from .tilt import (
    TiltElt,
    TiltRing,
    charp_limit_norm,
    enumerate_tilts,
    growth_family,
    growth_profile_report,
    tilt_add,
    tilt_eq,
    tilt_frobenius,
    tilt_from_top,
    tilt_is_zero,
    tilt_mul,
    tilt_neg,
    tilt_pth_root,
    untilt_isometry,
)
from .univ import UPoly, ghost_poly, structure_cap, structure_poly
from .witt import (
    WittVec,
    frobenius,
    ghost,
    teichmuller,
    verschiebung,
    witt_add,
    witt_eq,
    witt_from_integer,
    witt_mul,
    witt_neg,
    witt_norm,
    witt_one,
    witt_zero,
)

__all__ = [
    "CaseResult",
    "SuiteReport",
    "SUITE_NAMES",
    "run_suite",
    "check_structure_polynomials",
    "check_witt_ring_laws",
    "check_norm_laws",
    "check_mul_by_p_norm",
    "check_depth_lifting",
    "check_theta_map",
    "check_integer_rigidity",
    "check_kernel_norm",
    "check_perfect_verdicts",
    "check_frobenius_solving",
    "check_tilt_ring_laws",
    "check_charp_overconvergence",
    "check_untilt_isometry",
    "check_inverse_frobenius_sandwich",
    "check_invariant_profiles",
]


# ---------------------------------------------------------------------------
# report containers
# ---------------------------------------------------------------------------


@dataclass
class CaseResult:
    """One named check: pass/fail plus the evidence string.

    ``inconclusive`` marks evidence-only cases (finite sampling of an
    infinite claim); it refines a pass and never masks a failure.
    """

    name: str
    passed: bool
    detail: str = ""
    inconclusive: bool = False

    @property
    def status(self) -> str:
        if not self.passed:
            return "fail"
        return "inconclusive" if self.inconclusive else "pass"

    def to_dict(self) -> dict:
        return {
            "detail": self.detail,
            "name": self.name,
            "status": self.status,
        }


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: List[CaseResult] = field(default_factory=list)
    elapsed_s: Optional[float] = None

    @property
    def failures(self) -> int:
        return sum(1 for c in self.cases if not c.passed)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        """JSON form; byte-stable, so the wall clock is reported as null."""
        return {
            "cases": [c.to_dict() for c in sorted(self.cases, key=lambda c: c.name)],
            "cases_run": len(self.cases),
            "elapsed_s": None,
            "failures": self.failures,
            "passed": self.passed,
            "schema": 1,
            "seed": self.seed,
            "suite": self.suite,
        }


def _case(name: str, passed: bool, detail: str = "", inconclusive: bool = False) -> CaseResult:
    return CaseResult(name=name, passed=bool(passed), detail=detail, inconclusive=inconclusive)


def _exp(v: NormValue) -> str:
    """A norm value as p^e text with a rational e (or 0)."""
    return "0" if v.is_zero else f"p^{-v.v}"


# ---------------------------------------------------------------------------
# random element draws
# ---------------------------------------------------------------------------

_DENOMS = (1, 1, 2, 3, 4)


def _draw_elt(rng: random.Random, ring: Ring) -> Any:
    if isinstance(ring, Integers):
        return ring.from_int(rng.randint(-9, 9))
    if isinstance(ring, Rationals):
        return Fraction(rng.randint(-24, 24), rng.choice(_DENOMS + (ring.p, ring.p * ring.p)))
    if isinstance(ring, GaussianField):
        return ring.from_pair(
            Fraction(rng.randint(-9, 9), rng.choice(_DENOMS)),
            Fraction(rng.randint(-9, 9), rng.choice(_DENOMS)),
        )
    if isinstance(ring, CyclotomicField):
        return ring.from_coeffs(
            [
                Fraction(rng.randint(-4, 4), rng.choice((1, 1, 2, ring.p)))
                for _ in range(ring.e)
            ]
        )
    raise MalformedConfig(f"no draw strategy for ring kind {ring.kind!r}")


def _draw_vec(rng: random.Random, ring: Ring, length: int) -> WittVec:
    return WittVec(ring, tuple(_draw_elt(rng, ring) for _ in range(length)))


def _filter_grid(grid: Sequence, p: Optional[int], key=lambda item: item) -> List:
    if p is None:
        return list(grid)
    kept = [item for item in grid if key(item) == p]
    return kept or list(grid)


# ---------------------------------------------------------------------------
# structure polynomials (suite: universal)
# ---------------------------------------------------------------------------


def _pair_lift(s: UPoly, i: int, m: int) -> UPoly:
    """Reinterpret an index-i two-block polynomial over the index-m split."""
    nv = 2 * (m + 1)
    remap = {}
    for exps, c in s.terms.items():
        xs, ys = exps[: i + 1], exps[i + 1 :]
        remap[xs + (0,) * (m - i) + ys + (0,) * (m - i)] = c
    return UPoly(nv, remap)


def _tail_lift(s: UPoly, nv: int) -> UPoly:
    return UPoly(nv, {e + (0,) * (nv - s.nvars): c for e, c in s.terms.items()})


def _ghost_compose(polys: Sequence[UPoly], p: int) -> UPoly:
    """w_{p^m} evaluated on component polynomials, as a polynomial."""
    m = len(polys) - 1
    acc = UPoly(polys[0].nvars)
    for i, s in enumerate(polys):
        acc = acc.add(s.pow(p ** (m - i)).scale(p ** i))
    return acc


def check_structure_polynomials(rng: random.Random, p: Optional[int] = None) -> List[CaseResult]:
    """Exact polynomial identities and weighted homogeneity of the cached
    sum/prod/frob component polynomials."""
    del rng  # fully deterministic
    cases: List[CaseResult] = []
    for q in _filter_grid((2, 3, 5), p):
        cap = structure_cap(q)
        ghost_ok: List[str] = []
        homog_ok = True
        carry_ok = True
        for m in range(cap + 1):
            nv = 2 * (m + 1)
            sums = [_pair_lift(structure_poly(q, i, "sum"), i, m) for i in range(m + 1)]
            prods = [_pair_lift(structure_poly(q, i, "prod"), i, m) for i in range(m + 1)]
            wx = ghost_poly(q, m, nv, offset=0)
            wy = ghost_poly(q, m, nv, offset=m + 1)
            if _ghost_compose(sums, q) != wx.add(wy):
                ghost_ok.append(f"sum index {m}")
            if _ghost_compose(prods, q) != wx.mul(wy):
                ghost_ok.append(f"prod index {m}")
            frobs = [_tail_lift(structure_poly(q, i, "frob"), m + 2) for i in range(m + 1)]
            if _ghost_compose(frobs, q) != ghost_poly(q, m + 1, m + 2):
                ghost_ok.append(f"frob index {m}")
            # frob_m = x_m^p + p*x_{m+1} + p*f_m with f_m the carry part
            recomposed = (
                UPoly.variable(m + 2, m, q)
                .add(UPoly.variable(m + 2, m + 1).scale(q))
                .add(_tail_lift(structure_poly(q, m, "frob_f"), m + 2).scale(q))
            )
            if recomposed != structure_poly(q, m, "frob"):
                carry_ok = False
            pair_w = [q ** j for j in range(m + 1)] * 2
            single_w = [q ** j for j in range(m + 2)]
            homog_ok = (
                homog_ok
                and set(sums[m].weighted_degrees(pair_w)) <= {q ** m}
                and set(prods[m].weighted_degrees(pair_w)) <= {2 * q ** m}
                and set(structure_poly(q, m, "frob").weighted_degrees(single_w)) <= {q ** (m + 1)}
                and set(
                    structure_poly(q, m, "frob_f").weighted_degrees(single_w[: m + 1])
                )
                <= {q ** (m + 1)}
            )
        cases.append(
            _case(
                f"ghost_identities_p{q}",
                not ghost_ok,
                f"indices 0..{cap}: w(sum)=w(x)+w(y), w(prod)=w(x)w(y), "
                f"w(frob)=shifted ghost, all as exact polynomial identities"
                + (f"; FAILED at {ghost_ok}" if ghost_ok else ""),
            )
        )
        cases.append(
            _case(
                f"carry_decomposition_p{q}",
                carry_ok,
                f"frob_i = x_i^{q} + {q}*x_(i+1) + {q}*f_i for i <= {cap}",
            )
        )
        cases.append(
            _case(
                f"weighted_homogeneity_p{q}",
                homog_ok,
                f"deg s_i = {q}^i, deg m_i = 2*{q}^i, deg frob_i = deg f_i = {q}^(i+1) "
                f"under weights {q}^j, i <= {cap}",
            )
        )
    return cases


# ---------------------------------------------------------------------------
# Witt ring laws (suite: ghost)
# ---------------------------------------------------------------------------


def _law_rings(p: Optional[int]) -> List[Ring]:
    if p is None:
        return [
            Integers(2),
            Rationals(3),
            GaussianField(5),
            cyclotomic_field(2, 3),
        ]
    return [
        Integers(p),
        Rationals(p),
        GaussianField(p),
        cyclotomic_field(p, 3 if p == 2 else 2),
    ]


def check_witt_ring_laws(
    rng: random.Random, p: Optional[int] = None, per_law: int = 500
) -> List[CaseResult]:
    """Commutative-ring axioms and ghost-homomorphism identities, randomized
    over exact base rings; ghost injectivity makes componentwise equality the
    right notion of truth on all of them."""
    rings = _law_rings(p)
    names = ", ".join(r.kind for r in rings)

    def vec(ring: Ring, length: int) -> WittVec:
        return _draw_vec(rng, ring, length)

    def ghost_matches(z: WittVec, expected) -> bool:
        got = ghost(z)
        return all(z.ring.eq(a, b) for a, b in zip(got.entries, expected.entries))

    laws: Dict[str, Callable[[Ring], bool]] = {}

    def law(name: str):
        def bind(fn):
            laws[name] = fn
            return fn

        return bind

    @law("ghost_additive")
    def _(r: Ring) -> bool:
        L = rng.randint(1, 3)
        x, y = vec(r, L), vec(r, L)
        return ghost_matches(witt_add(x, y), ghost(x).add(ghost(y)))

    @law("ghost_multiplicative")
    def _(r: Ring) -> bool:
        L = rng.randint(1, 3)
        x, y = vec(r, L), vec(r, L)
        return ghost_matches(witt_mul(x, y), ghost(x).mul(ghost(y)))

    @law("ghost_negation")
    def _(r: Ring) -> bool:
        x = vec(r, rng.randint(1, 3))
        return ghost_matches(witt_neg(x), ghost(x).neg())

    @law("add_commutative")
    def _(r: Ring) -> bool:
        L = rng.randint(1, 3)
        x, y = vec(r, L), vec(r, L)
        return witt_eq(witt_add(x, y), witt_add(y, x))

    @law("add_associative")
    def _(r: Ring) -> bool:
        L = rng.randint(1, 3)
        x, y, z = vec(r, L), vec(r, L), vec(r, L)
        return witt_eq(witt_add(witt_add(x, y), z), witt_add(x, witt_add(y, z)))

    @law("mul_commutative")
    def _(r: Ring) -> bool:
        L = rng.randint(1, 3)
        x, y = vec(r, L), vec(r, L)
        return witt_eq(witt_mul(x, y), witt_mul(y, x))

    @law("mul_associative")
    def _(r: Ring) -> bool:
        L = rng.randint(1, 3)
        x, y, z = vec(r, L), vec(r, L), vec(r, L)
        return witt_eq(witt_mul(witt_mul(x, y), z), witt_mul(x, witt_mul(y, z)))

    @law("distributive")
    def _(r: Ring) -> bool:
        L = rng.randint(1, 3)
        x, y, z = vec(r, L), vec(r, L), vec(r, L)
        return witt_eq(
            witt_mul(x, witt_add(y, z)), witt_add(witt_mul(x, y), witt_mul(x, z))
        )

    @law("additive_inverse")
    def _(r: Ring) -> bool:
        x = vec(r, rng.randint(1, 3))
        return witt_eq(witt_add(x, witt_neg(x)), witt_zero(r, x.length))

    @law("identities")
    def _(r: Ring) -> bool:
        x = vec(r, rng.randint(1, 3))
        return witt_eq(witt_add(x, witt_zero(r, x.length)), x) and witt_eq(
            witt_mul(x, witt_one(r, x.length)), x
        )

    cases = []
    for name, fn in laws.items():
        bad = 0
        for i in range(per_law):
            if not fn(rings[i % len(rings)]):
                bad += 1
        cases.append(
            _case(
                f"law_{name}",
                bad == 0,
                f"{per_law} randomized cases over {names}; {bad} failures",
            )
        )
    return cases


# ---------------------------------------------------------------------------
# norm laws (suite: norms)
# ---------------------------------------------------------------------------


def check_norm_laws(
    rng: random.Random, p: Optional[int] = None, samples: int = 500
) -> List[CaseResult]:
    """Ultrametric/submultiplicative bounds, the exact Verschiebung identity,
    and the power-multiplicative lower bound for the componentwise norm."""
    instances = _filter_grid(
        [Rationals(2), Rationals(3), GaussianField(5), cyclotomic_field(2, 3)],
        p,
        key=lambda r: r.p,
    )
    counts = {
        "ultrametric": 0,
        "submultiplicative": 0,
        "frobenius_contraction": 0,
        "verschiebung_exact": 0,
        "power_lower_bound": 0,
    }
    witness = {k: "" for k in counts}
    for ring in instances:
        q = ring.p
        for _ in range(samples):
            L = rng.randint(2, 3)
            x, y = _draw_vec(rng, ring, L), _draw_vec(rng, ring, L)
            nx, ny = witt_norm(x), witt_norm(y)
            if not witt_norm(witt_add(x, y)) <= norm_max([nx, ny]):
                counts["ultrametric"] += 1
                witness["ultrametric"] = (
                    f"|x+y|={_exp(witt_norm(witt_add(x, y)))} > max({_exp(nx)},{_exp(ny)})"
                )
            if not witt_norm(witt_mul(x, y)) <= nx.mul(ny):
                counts["submultiplicative"] += 1
                witness["submultiplicative"] = (
                    f"|xy|={_exp(witt_norm(witt_mul(x, y)))} > {_exp(nx.mul(ny))}"
                )
            if not witt_norm(frobenius(x)) <= nx.pow(q):
                counts["frobenius_contraction"] += 1
                witness["frobenius_contraction"] = (
                    f"|F(x)|={_exp(witt_norm(frobenius(x)))} > {_exp(nx.pow(q))}"
                )
            if not witt_norm(verschiebung(x)) == nx.pow(Fraction(1, q)):
                counts["verschiebung_exact"] += 1
                witness["verschiebung_exact"] = (
                    f"|V(x)|={_exp(witt_norm(verschiebung(x)))} != {_exp(nx.pow(Fraction(1, q)))}"
                )
            if ring.power_multiplicative_norm:
                padded = WittVec(ring, x.components + tuple(ring.zero() for _ in range(x.top_index)))
                if not witt_norm(witt_mul(padded, padded)) >= nx.pow(2):
                    counts["power_lower_bound"] += 1
                    witness["power_lower_bound"] = (
                        f"|x^2|={_exp(witt_norm(witt_mul(padded, padded)))} < {_exp(nx.pow(2))}"
                    )
    names = ", ".join(f"{r.kind}(p={r.p})" for r in instances)
    return [
        _case(
            f"norm_{law}",
            bad == 0,
            f"{samples} samples per instance over {names}; {bad} failures"
            + (f"; first: {witness[law]}" if bad else ""),
        )
        for law, bad in counts.items()
    ]


# ---------------------------------------------------------------------------
# multiplication-by-p norm (suite: arrow)
# ---------------------------------------------------------------------------


def check_mul_by_p_norm(rng: random.Random, p: Optional[int] = None) -> List[CaseResult]:
    """|p^m|_{W,b} = p^(-min(b,1)m) exactly, sup attained within depth m+1."""
    del rng
    bs = (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2))
    cases = []
    for q in _filter_grid((2, 3), p):
        ring = Integers(q)
        bad: List[str] = []
        for m in range(4):
            a = arrow_from_integer(ring, q ** m, m + 1)
            for b in bs:
                r = arrow_norm(a, b)
                expect = NormValue.from_exponent(min(b, Fraction(1)) * m)
                if not (
                    r.value == expect
                    and r.status == "exact"
                    and r.attained_at is not None
                    and r.attained_at <= m + 1
                ):
                    bad.append(
                        f"m={m},b={b}: got {_exp(r.value)} ({r.status}, at {r.attained_at}), "
                        f"want {_exp(expect)}"
                    )
        golden = arrow_norm(arrow_from_integer(ring, q, 2), Fraction(1, 2))
        cases.append(
            _case(
                f"mul_by_p_norm_p{q}",
                not bad and golden.value == NormValue.from_exponent(Fraction(1, 2)),
                f"m<=3, b in (1/4,1/2,1,2), all exact; "
                f"|{q}|_(W,1/2) = {_exp(golden.value)} (expect p^-1/2)"
                + ("; " + "; ".join(bad) if bad else ""),
            )
        )
    return cases


# ---------------------------------------------------------------------------
# depth lifting (suite: arrow)
# ---------------------------------------------------------------------------

_FROB_F2 = None


def _int_frobenius_p2(vals: Tuple[int, ...], mod: int) -> Tuple[int, ...]:
    """Frobenius on integer component tuples at p=2, reduced mod ``mod``."""
    global _FROB_F2
    if _FROB_F2 is None:
        _FROB_F2 = [structure_poly(2, i, "frob_f").compiled() for i in range(4)]
    out = []
    for i in range(len(vals) - 1):
        carry = _FROB_F2[i](vals[: i + 1]) if i else 0
        out.append((vals[i] ** 2 + 2 * vals[i + 1] + 2 * carry) % mod)
    return tuple(out)


def _int_chain_p2(top: Tuple[int, ...], mod: int) -> List[Tuple[int, ...]]:
    levels = [tuple(v % mod for v in top)]
    for _ in range(len(top) - 1):
        levels.append(_int_frobenius_p2(levels[-1], mod))
    levels.reverse()
    return levels


def _machine_chain(ring: Ring, top_vals: Sequence[int]) -> ArrowElt:
    levels = [WittVec(ring, tuple(ring.from_int(v) for v in top_vals))]
    for _ in range(len(top_vals) - 1):
        levels.append(frobenius(levels[-1]))
    levels.reverse()
    return make_arrow(ring, levels, tail_bound=NormValue.one(), validate=False)


def check_depth_lifting(rng: random.Random, p: Optional[int] = None) -> List[CaseResult]:
    """Exhaustive reduction/lift analysis between depth-4 families mod 4 and
    depth-1 families mod 2: the induced depth-1 data mod 4 depends only on
    the mod-2 reduction (uniqueness), every mod-2 family is hit (existence),
    and the precision-lifting construction reproduces the same values."""
    del p  # the exhaustive instance is p=2 by design
    r4, r2 = ZModPM(2, 2), ZModPM(2, 1)
    fibers: Dict[Tuple[int, ...], set] = {}
    hit: set = set()
    for top in itertools.product(range(4), repeat=5):
        levels = _int_chain_p2(top, 4)
        induced = (levels[0][0], levels[1][0], levels[1][1])
        cls = tuple(v % 2 for v in top)
        fibers.setdefault(cls, set()).add(induced)
        hit.add(tuple(v % 2 for v in induced))
    unique_ok = all(len(vals) == 1 for vals in fibers.values())
    targets = set()
    for t1 in itertools.product(range(2), repeat=2):
        levels = _int_chain_p2(t1, 2)
        targets.add((levels[0][0], levels[1][0], levels[1][1]))
    exist_ok = targets == hit

    # the library's precision lift must reproduce the washed values
    lift_ok = True
    cross_ok = True
    for cls, vals in fibers.items():
        a2 = _machine_chain(r2, cls)
        lifted = lift_arrow_precision(a2, 1, check=True)
        got = (
            lifted.levels[0].components[0].value,
            lifted.levels[1].components[0].value,
            lifted.levels[1].components[1].value,
        )
        if got != next(iter(vals)):
            lift_ok = False
        # tie the fast integer path to the Witt machinery on the class rep
        a4 = _machine_chain(r4, cls)
        mach = (
            a4.levels[0].components[0].value,
            a4.levels[1].components[0].value,
            a4.levels[1].components[1].value,
        )
        if mach not in fibers[cls]:
            cross_ok = False

    int_ok = True
    for k in range(-8, 9):
        a4 = arrow_from_integer(r4, k, 4)
        a2 = arrow_from_integer(r2, k, 4)
        reduced = map_components(
            a4, r2, lambda c: r2.from_int(c.value), tail_bound=NormValue.one(), validate=False
        )
        if not arrow_eq(reduced, a2):
            int_ok = False
        if not arrow_eq(lift_arrow_precision(a2, 1, check=True), arrow_from_integer(r4, k, 1)):
            int_ok = False

    return [
        _case(
            "lift_washing_unique",
            unique_ok,
            "1024 depth-4 families mod 4 in 32 mod-2 classes; every class induces "
            "exactly one depth-1 family mod 4",
        ),
        _case(
            "lift_existence",
            exist_ok,
            f"all {len(targets)} coherent depth-1 families mod 2 are hit by reduction",
        ),
        _case(
            "lift_precision_construction",
            lift_ok,
            "lift_arrow_precision on all 32 mod-2 classes reproduces the washed depth-1 values",
        ),
        _case(
            "lift_machinery_crosscheck",
            cross_ok,
            "compiled integer Frobenius and the generic Witt Frobenius agree on all class reps",
        ),
        _case(
            "lift_integer_consistency",
            int_ok,
            "from_integer(k) for k in [-8,8]: reduction mod 2 and the precision lift "
            "agree with the directly built families",
        ),
    ]


# ---------------------------------------------------------------------------
# theta map (suite: arrow)
# ---------------------------------------------------------------------------


def check_theta_map(
    rng: random.Random, p: Optional[int] = None, samples: int = 100, pairs: int = 100
) -> List[CaseResult]:
    """The projection theta against the classical partial series, lift
    stability at the p^(M-N) scale, and the ring-homomorphism property."""
    cases = []
    M = 6
    for q in _filter_grid((2, 3), p):
        ring = ZModPM(q, M)

        def draw():
            return ring.from_int(rng.randrange(q ** M))

        agree = stability = 0
        for _ in range(samples):
            N = rng.randint(1, 3)
            a = sample_coherent(ring, N, draw)
            tv = theta(a)
            sv, _terms = theta_series(a)
            if not ring.eq(tv, sv):
                agree += 1
            pert = [
                ring.from_int(q ** (M - N) * rng.randrange(q ** N)) for _ in range(N + 1)
            ]
            sv2, _terms = theta_series(a, lift_perturbation=lambda i: pert[i])
            if not ring.seminorm(ring.sub(sv2, tv)) <= NormValue.from_exponent(M - N):
                stability += 1
        hom = 0
        for _ in range(pairs):
            N = rng.randint(1, 3)
            a = sample_coherent(ring, N, draw)
            b = sample_coherent(ring, N, draw)
            if not ring.eq(theta(arrow_add(a, b)), ring.add(theta(a), theta(b))):
                hom += 1
            if not ring.eq(theta(arrow_mul(a, b)), ring.mul(theta(a), theta(b))):
                hom += 1
        golden = all(
            ring.eq(theta(arrow_from_integer(ring, k, 2)), ring.from_int(k))
            for k in range(-3, 4)
        ) and ring.eq(
            theta(arrow_teichmuller(ring, [ring.one()] * 3)), ring.one()
        )
        cases.append(
            _case(
                f"theta_projection_equals_series_p{q}",
                agree == 0,
                f"{samples} coherent samples over Z/{q}^{M}, N<=3; projection == "
                f"telescoped partial series exactly; {agree} failures",
            )
        )
        cases.append(
            _case(
                f"theta_lift_stability_p{q}",
                stability == 0,
                f"perturbing level-N lifts by multiples of {q}^(M-N) moves the series "
                f"by at most {q}^-(M-N); {stability} failures",
            )
        )
        cases.append(
            _case(
                f"theta_ring_hom_p{q}",
                hom == 0,
                f"{pairs} sampled pairs: theta(a+b)=theta(a)+theta(b), "
                f"theta(ab)=theta(a)theta(b), exactly; {hom} failures",
            )
        )
        cases.append(
            _case(
                f"theta_integer_golden_p{q}",
                golden,
                "theta(from_integer(k)) = k for |k|<=3 and theta([1]) = 1",
            )
        )
    return cases


# ---------------------------------------------------------------------------
# integer rigidity (suite: arrow)
# ---------------------------------------------------------------------------


def check_integer_rigidity(
    rng: random.Random,
    p: Optional[int] = None,
    bound: int = 8,
    perturbations: int = 200,
    cross: int = 300,
) -> List[CaseResult]:
    """Exhaustive ghost-congruence check for integer families at p=2, depth 3.

    For the family generated by a top vector z, the chain value at index
    p^-i equals the ghost coordinate w_(N-i)(z), so the congruence chain
    w_m = w_(m-1) mod 2^m over all tops is exactly the family statement;
    the sampled cross-check below re-derives it through the arrow machinery.
    """
    del p
    N = 3
    rng_local = rng
    span = range(-bound, bound + 1)
    bad = 0
    for x0 in span:
        for x1 in span:
            w1 = x0 * x0 + 2 * x1
            if (w1 - x0) % 2:
                bad += 1
                continue
            for x2 in span:
                w2 = x0 ** 4 + 2 * x1 * x1 + 4 * x2
                if (w2 - w1) % 4:
                    bad += 1
                    continue
                for x3 in span:
                    w3 = x0 ** 8 + 2 * x1 ** 4 + 4 * x2 * x2 + 8 * x3
                    if (w3 - w2) % 8:
                        bad += 1
    total = (2 * bound + 1) ** 4

    ring = Integers(2)
    cross_bad = 0
    for _ in range(cross):
        top = tuple(rng_local.randint(-bound, bound) for _ in range(N + 1))
        a = _machine_chain(ring, top)
        profile = rigidity_profile(a)
        w = [
            top[0],
            top[0] ** 2 + 2 * top[1],
            top[0] ** 4 + 2 * top[1] ** 2 + 4 * top[2],
            top[0] ** 8 + 2 * top[1] ** 4 + 4 * top[2] ** 2 + 8 * top[3],
        ]
        heads = [a.levels[i].components[0] for i in range(N + 1)]
        if not all(profile) or any(heads[i] != w[N - i] for i in range(N + 1)):
            cross_bad += 1

    fail_to_fail = 0
    for _ in range(perturbations):
        top = tuple(rng_local.randint(-bound, bound) for _ in range(N + 1))
        a = _machine_chain(ring, top)
        lvl = rng_local.randint(0, N - 1)
        pos = rng_local.randint(0, lvl)
        delta = rng_local.choice([-2, -1, 1, 2, 3])
        mutated = list(a.levels)
        comps = list(mutated[lvl].components)
        comps[pos] += delta
        mutated[lvl] = WittVec(ring, tuple(comps))
        try:
            make_arrow(ring, mutated, validate=True)
            fail_to_fail += 1
        except IntegralityViolation:
            pass

    return [
        _case(
            "rigidity_exhaustive",
            bad == 0,
            f"all {total} integer tops with components in [-{bound},{bound}]: "
            f"w_m = w_(m-1) mod 2^m for m=1..3; {bad} failures",
        ),
        _case(
            "rigidity_machinery_crosscheck",
            cross_bad == 0,
            f"{cross} random tops: arrow rigidity profile true and chain heads equal "
            f"the ghost coordinates; {cross_bad} failures",
        ),
        _case(
            "rigidity_perturbations_fail",
            fail_to_fail == 0,
            f"{perturbations} random single-component perturbations of non-top levels "
            f"all violate coherence; {fail_to_fail} slipped through",
        ),
    ]


# ---------------------------------------------------------------------------
# kernel norm (suite: kernel)
# ---------------------------------------------------------------------------


def _unit_times_power(rng: random.Random, ring: Ring, val_steps: int) -> Any:
    """A random element with prescribed valuation val_steps (in uniformizer
    steps for cyclotomic fields, in powers of p over Q)."""
    if isinstance(ring, Rationals):
        units = [u for u in (1, -1, 3, 5, 7, -5, 11) if u % ring.p]
        t = Fraction(rng.choice(units), rng.choice([u for u in (1, 3, 5, 7) if u % ring.p]))
        return t * Fraction(ring.p) ** val_steps
    unit = ring.add(
        ring.one(),
        ring.scalar_mul(
            ring.p, ring.from_coeffs([rng.randint(0, ring.p - 1) for _ in range(ring.e)])
        ),
    )
    t_pow = ring.pow_(ring.uniformizer(), abs(val_steps))
    if val_steps >= 0:
        return ring.mul(unit, t_pow)
    return ring.div(unit, t_pow)


def check_kernel_norm(
    rng: random.Random, p: Optional[int] = None, samples: int = 50
) -> List[CaseResult]:
    """|w_1(x)| = p^(-1/p-...-1/p^j) |x|_W for the Frobenius-kernel family."""
    cases = []
    closed_ok = True
    for q in (2, 3):
        for j in (1, 2):
            if not symbolic_kernel_identity(q, j)["identity_holds"]:
                closed_ok = False
    cases.append(
        _case(
            "kernel_closed_form",
            closed_ok,
            "generic-valuation identity holds with unique leading terms, p in {2,3}, j <= 2",
        )
    )
    golden = kernel_element_from_w1(Rationals(2), Fraction(4), 2)
    cases.append(
        _case(
            "kernel_golden_components",
            tuple(golden.components) == (Fraction(4), Fraction(-8), Fraction(-96)),
            f"unghost of (4,0,0) at p=2: {tuple(str(c) for c in golden.components)} "
            "(expect (4, -8, -96))",
        )
    )
    grid: List[Tuple[int, Ring, str]] = [
        (2, Rationals(2), "Q"),
        (2, cyclotomic_field(2, 3), "Q(zeta8)"),
        (3, Rationals(3), "Q"),
        (3, cyclotomic_field(3, 2), "Q(zeta9)"),
    ]
    if p is not None:
        grid = [g for g in grid if g[0] == p] or grid
    for q, ring, label in grid:
        steps = 1 if isinstance(ring, Rationals) else ring.e
        bad = 0
        detail = ""
        for j in (1, 2):
            for s in range(samples):
                v = (s % (4 * steps + 1)) - 2 * steps
                t = ring.zero() if s == samples - 1 else _unit_times_power(rng, ring, v)
                rep = verify_kernel_norm(ring, t, j, assert_equality=False)
                if not (rep["kernel_ok"] and rep["equal"]):
                    bad += 1
                    detail = (
                        f"j={j}, |w1|=p^{rep['w1_exponent']}, "
                        f"c|x|=p^{rep['scaled_sup_exponent']}"
                    )
        cases.append(
            _case(
                f"kernel_norm_{label.replace('(', '_').replace(')', '')}_p{q}",
                bad == 0,
                f"{samples} samples per j in {{1,2}} spanning valuations [-2,2] over {label}; "
                f"F(x)=0 and exact equality; {bad} failures"
                + (f"; first: {detail}" if bad else ""),
            )
        )
    return cases


# ---------------------------------------------------------------------------
# Witt-perfectness verdicts (suite: perfect)
# ---------------------------------------------------------------------------


def _conv_reduce_cyclotomic(a: Sequence[int], b: Sequence[int], p: int, k: int, q: int) -> List[int]:
    """Independent multiplication in Z[zeta_{p^k}]/q on coefficient vectors,
    reducing with x^e = -(x^((p-2)step) + ... + x^step + 1) * x^(e-step*(p-1))
    ... i.e. the minimal-polynomial relation sum_{i<p} x^(i*step) = 0."""
    step = p ** (k - 1)
    e = step * (p - 1)
    out = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for jj, y in enumerate(b):
                if y:
                    out[i + jj] += x * y
    for idx in range(len(out) - 1, e - 1, -1):
        c = out[idx]
        if c:
            out[idx] = 0
            for i in range(p - 1):
                out[idx - e + i * step] -= c
    return [c % q for c in out[:e]]


def _independent_pth_power_set(p: int, k: int, q: int) -> Dict[Tuple[int, ...], None]:
    """All p-th powers of residue vectors mod q in Z[zeta_{p^k}], computed
    with the standalone convolution arithmetic above."""
    step = p ** (k - 1)
    e = step * (p - 1)
    seen: Dict[Tuple[int, ...], None] = {}
    for coeffs in itertools.product(range(q), repeat=e):
        acc = [1] + [0] * (e - 1)
        for _ in range(p):
            acc = _conv_reduce_cyclotomic(acc, coeffs, p, k, q)
        seen[tuple(acc)] = None
    return seen


def check_perfect_verdicts(rng: random.Random, p: Optional[int] = None) -> List[CaseResult]:
    """Witt-perfectness yes/no verdicts with independently re-verified
    witnesses: plain residue rings fail, the small cyclotomic rings behave as
    recorded, and the towers pass up to level 2."""
    del p
    cases = []

    z_ok = True
    z_detail = []
    for q in (2, 3, 5):
        rep = witt_perfect_test({"instance": "Z", "p": q})
        a = rep.condition_b["witness_a"]
        indep = a is not None and all(
            pow(b, q, q * q) != (q * a) % (q * q) for b in range(q * q)
        )
        z_ok = z_ok and rep.verdict == "no" and indep
        z_detail.append(f"p={q}: a={a}")
    cases.append(
        _case(
            "integers_not_perfect",
            z_ok,
            "no b has b^p = p*a mod p^2; witnesses re-verified by direct powering: "
            + ", ".join(z_detail),
        )
    )

    rep = witt_perfect_test({"instance": "Qi", "p": 5})
    wa = rep.condition_b["witness_a"]
    indep = False
    if wa is not None:
        aa, bb = int(wa.split("+")[0]), int(wa.split("+")[1][:-1])
        target = ((5 * aa) % 25, (5 * bb) % 25)
        indep = True
        for c in range(25):
            for d in range(25):
                re_, im = 1, 0
                for _ in range(5):
                    re_, im = (re_ * c - im * d) % 25, (re_ * d + im * c) % 25
                if (re_, im) == target:
                    indep = False
    cases.append(
        _case(
            "gaussian_not_perfect",
            rep.verdict == "no" and indep,
            f"Z[i] at p=5: verdict {rep.verdict}; witness a={wa} re-verified over all "
            "625 candidates mod 25",
        )
    )

    rep8 = witt_perfect_test({"instance": "zeta-ring", "p": 2, "k": 3})
    root = rep8.condition_b.get("root_of_p")
    root_ok = False
    if root is not None:
        sq = _conv_reduce_cyclotomic(root, root, 2, 3, 4)
        root_ok = sq[0] % 4 == 2 and all(c % 4 == 0 for c in sq[1:])
    cases.append(
        _case(
            "zeta8_square_root_of_two",
            root is not None and root_ok,
            f"Z[zeta_8] contains b={root} with b^2 = 2 mod 4, re-verified by "
            "standalone convolution arithmetic",
        )
    )

    rep3 = witt_perfect_test({"instance": "zeta-ring", "p": 3, "k": 1})
    indep3 = False
    if rep3.condition_b["witness_a"] is not None:
        text = rep3.condition_b["witness_a"].strip("[]")
        coeffs = [int(s) for s in text.split(",")]
        target3 = tuple((3 * c) % 9 for c in coeffs)
        cubes = _independent_pth_power_set(3, 1, 9)
        indep3 = target3 not in cubes
    elif rep3.condition_a.get("witness") is not None:
        indep3 = True  # condition (a) failure alone already decides the verdict
    cases.append(
        _case(
            "zeta3_ring_not_perfect",
            rep3.verdict == "no" and indep3,
            f"Z[zeta_3] at p=3: verdict {rep3.verdict}; witness a={rep3.condition_b['witness_a']} "
            "has no cube root among all 729 residues mod 9 (independent enumeration)",
        )
    )

    for q, samples in ((2, None), (3, 20)):
        config = {"instance": "tower", "p": q, "levels": 2}
        if samples:
            config["samples"] = samples
        rept = witt_perfect_test(config, rng)
        seq_ok = all(rept.condition_b["x1_checks"].values())
        sampled = any("sampled" in lvl["mode"] for lvl in rept.condition_a["levels"].values())
        cases.append(
            _case(
                f"tower_p{q}_level2",
                rept.verdict == "yes-up-to-level-2" and seq_ok,
                f"purity certificates and x_1^{q} = {q} mod {q}^2 hold; "
                f"levels checked {'with sampling' if sampled else 'exhaustively'}",
                inconclusive=sampled,
            )
        )

    seq = build_root_sequence(3, 2)
    f1 = seq.tower.field(1)
    x1 = seq.value(1)
    cube = _conv_reduce_cyclotomic(
        f1.integral_coeffs(x1),
        _conv_reduce_cyclotomic(
            f1.integral_coeffs(x1), f1.integral_coeffs(x1), 3, 3, 27
        ),
        3,
        3,
        27,
    )
    cases.append(
        _case(
            "tower_p3_seed_independent",
            cube[0] % 9 == 3 and all(c % 9 == 0 for c in cube[1:]),
            "the constructed x_1 in Z[zeta_27] satisfies x_1^3 = 3 mod 9 under "
            "standalone convolution arithmetic",
        )
    )
    return cases


# ---------------------------------------------------------------------------
# Frobenius solving (suite: perfect)
# ---------------------------------------------------------------------------


def check_frobenius_solving(
    rng: random.Random, p: Optional[int] = None, fuzz: int = 100
) -> List[CaseResult]:
    """Greedy digit solving round-trips over Z/p^M and the normed tower
    solver's exact contract |y|^p <= |x|."""
    cases = []
    for q, M in [(2, 6), (3, 5)]:
        if p is not None and q != p:
            continue
        ring = ZModPM(q, M)
        cap_len = min(structure_cap(q) + 1, M - 1)
        bad = 0
        for _ in range(fuzz):
            L = rng.randint(1, cap_len)
            y = WittVec(ring, tuple(ring.from_int(rng.randrange(q ** M)) for _ in range(L + 1)))
            x = frobenius(y)
            y2, _rep = solve_frobenius(x)
            if not witt_eq(frobenius(y2), x):
                bad += 1
        cases.append(
            _case(
                f"solve_roundtrip_p{q}",
                bad == 0,
                f"{fuzz} fuzzed images x = F(y) over Z/{q}^{M}: solver output satisfies "
                f"F(y') = x at the tracked precision; {bad} failures",
            )
        )

    wrong = 0
    solved = refused = 0
    ring = ZModPM(2, 6)
    for _ in range(40):
        L = rng.randint(1, 3)
        x = WittVec(ring, tuple(ring.from_int(rng.randrange(2 ** 6)) for _ in range(L)))
        try:
            y2, _rep = solve_frobenius(x)
            solved += 1
            if not witt_eq(frobenius(y2), x):
                wrong += 1
        except NoRoot:
            refused += 1
    cases.append(
        _case(
            "solve_total_correctness",
            wrong == 0,
            f"40 direct draws over Z/2^6: {solved} solved and verified, {refused} "
            f"certified no-preimage, {wrong} wrong answers",
        )
    )

    if p in (None, 2):
        seq2 = build_root_sequence(2, 6)
        t2 = seq2.tower
        bad2 = 0
        golden_detail = ""
        shapes: List[Tuple[int, Any]] = []
        f1, f2 = t2.field(1), t2.field(2)
        for c in (2, 3, 6, 10):
            shapes.append((1, f1.from_int(c)))
        for _ in range(28):
            lvl = rng.choice((1, 2))
            fld = t2.field(lvl)
            j = rng.randint(1, 2 * fld.e - 1)
            u = fld.add(
                fld.one(),
                fld.scalar_mul(2, fld.from_coeffs([rng.randint(0, 1) for _ in range(fld.e)])),
            )
            shapes.append((lvl, fld.mul(u, fld.pow_(fld.uniformizer(), j))))
        for _ in range(8):
            j = rng.randint(1, f2.e - 1)
            shapes.append((2, f2.scalar_mul(Fraction(1, 2), f2.pow_(f2.uniformizer(), j))))
        for lvl, head in shapes:
            fld = t2.field(lvl)
            x = WittVec(fld, (head,))
            try:
                y, rep = solve_frobenius_normed(seq2, lvl, x)
                okc = rep["exact"] and rep["norm_contract"]
                W = t2.field(rep["working_level"])
                X = WittVec(W, (t2.embed_up(lvl, rep["working_level"], head),))
                okc = okc and witt_eq(frobenius(y), X)
            except WittError:
                okc = False
            if not okc:
                bad2 += 1
        xg = WittVec(f1, (f1.from_int(2),))
        yg, repg = solve_frobenius_normed(seq2, 1, xg)
        golden_detail = (
            f"x=(2): window n={repg['n']}, m={repg['m']}, working level "
            f"{repg['working_level']}, |y|^2<=|x| exact"
        )
        cases.append(
            _case(
                "solve_normed_contract_p2",
                bad2 == 0 and repg["exact"] and repg["norm_contract"],
                f"{len(shapes)} single-component tower inputs at levels 1-2 "
                f"(integers, uniformizer powers, halves): F(y)=x and |y|^2<=|x| exact; "
                f"{bad2} failures; {golden_detail}",
            )
        )

    if p in (None, 3):
        seq3 = build_root_sequence(3, 3)
        t3 = seq3.tower
        f1 = t3.field(1)
        bad3 = 0
        for _ in range(10):
            # exponents below e/3 keep the rescale window at its first level,
            # so the solver works inside conductor 3^5 instead of 3^6 and up
            j = rng.randint(1, 5)
            u = f1.add(
                f1.one(),
                f1.scalar_mul(3, f1.from_coeffs([rng.randint(0, 2) for _ in range(f1.e)])),
            )
            head = f1.mul(u, f1.pow_(f1.uniformizer(), j))
            x = WittVec(f1, (head,))
            try:
                y, rep = solve_frobenius_normed(seq3, 1, x)
                okc = rep["exact"] and rep["norm_contract"]
            except WittError:
                okc = False
            if not okc:
                bad3 += 1
        cases.append(
            _case(
                "solve_normed_contract_p3",
                bad3 == 0,
                "10 single-component inputs over the level-1 field of the p=3 tower "
                f"(unit times uniformizer power): exact contract; {bad3} failures",
            )
        )
    return cases


# ---------------------------------------------------------------------------
# tilt ring laws (suite: tilt)
# ---------------------------------------------------------------------------


def check_tilt_ring_laws(rng: random.Random, p: Optional[int] = None) -> List[CaseResult]:
    """Exhaustive ring laws for chain arithmetic over Z/2^3 and Z/3^2,
    the characteristic-p identity, and Frobenius bijectivity at the
    precision the chains actually certify."""
    del rng
    cases = []
    for q, M in _filter_grid(((2, 3), (3, 2)), p, key=lambda t: t[0]):
        base = ZModPM(q, M)
        D = 3
        chains = enumerate_tilts(base, D)
        n = len(chains)

        add_ok = mul_ok = char_ok = frob_ok = True
        for x, y in itertools.product(chains, repeat=2):
            if not tilt_eq(tilt_add(x, y), tilt_add(y, x)):
                add_ok = False
            if not tilt_eq(tilt_mul(x, y), tilt_mul(y, x)):
                mul_ok = False
        for x, y, z in itertools.product(chains, repeat=3):
            if not tilt_eq(tilt_add(tilt_add(x, y), z), tilt_add(x, tilt_add(y, z))):
                add_ok = False
            if not tilt_eq(tilt_mul(tilt_mul(x, y), z), tilt_mul(x, tilt_mul(y, z))):
                mul_ok = False
            if not tilt_eq(
                tilt_mul(x, tilt_add(y, z)), tilt_add(tilt_mul(x, y), tilt_mul(x, z))
            ):
                mul_ok = False
        for x in chains:
            if not tilt_is_zero(tilt_add(x, tilt_neg(x))):
                add_ok = False
            acc = x
            for _ in range(q - 1):
                acc = tilt_add(acc, x)
            if not tilt_is_zero(acc):
                char_ok = False

            trunc = TiltElt(base, x.entries[:-1])
            if not tilt_eq(tilt_pth_root(tilt_frobenius(x)), trunc):
                frob_ok = False
            if not tilt_eq(tilt_frobenius(tilt_pth_root(x)), trunc):
                frob_ok = False
        # injectivity at matched precision (one level down); surjectivity is
        # the exact shift preimage F(root(y)) = trunc(y) verified above, and
        # distinct images biject with distinct truncations
        for x, y in itertools.combinations(chains, 2):
            if tilt_eq(tilt_frobenius(x), tilt_frobenius(y)) and not tilt_eq(
                TiltElt(base, x.entries[:-1]), TiltElt(base, y.entries[:-1])
            ):
                frob_ok = False
        trunc_keys = {tuple(base.format_elt(c) for c in x.entries[:-1]) for x in chains}
        image_keys = {
            tuple(base.format_elt(c) for c in tilt_frobenius(x).entries) for x in chains
        }
        if len(trunc_keys) != len(image_keys):
            frob_ok = False

        label = f"Z/{q}^{M}"
        cases.append(
            _case(
                f"tilt_add_laws_p{q}",
                add_ok,
                f"all {n} coherent depth-{D} chains over {label}: commutativity, "
                "associativity, additive inverse at certified precision",
            )
        )
        cases.append(
            _case(
                f"tilt_mul_laws_p{q}",
                mul_ok,
                f"multiplicative commutativity/associativity/distributivity over {label}",
            )
        )
        cases.append(
            _case(
                f"tilt_char_p_p{q}",
                char_ok,
                f"{q}*x = 0 for every chain (characteristic {q})",
            )
        )
        cases.append(
            _case(
                f"tilt_frobenius_bijective_p{q}",
                frob_ok,
                "p-th root undoes Frobenius exactly and the shifted chain is the exact "
                "Frobenius preimage one level down; injective at matched precision, "
                "with distinct images in bijection with distinct truncations",
            )
        )
    return cases


# ---------------------------------------------------------------------------
# char-p overconvergence (suite: tilt)
# ---------------------------------------------------------------------------


def check_charp_overconvergence(
    rng: random.Random, p: Optional[int] = None, samples: int = 100
) -> List[CaseResult]:
    """Inverse-limit norm equals the closed sup formula over a perfected
    polynomial ring, and the degree-growth dichotomy is two-sided."""
    del p
    ring = PerfPolyRing(2, 1, 8)
    bs = (Fraction(1, 2), Fraction(1), Fraction(2))
    bad = 0
    for s in range(samples):
        comps = []
        for _ in range(5):
            roll = rng.random()
            if roll < 0.15:
                comps.append(ring.zero())
            elif roll < 0.75:
                comps.append(ring.monomial([rng.randint(0, 6)]))
            else:
                comps.append(
                    ring.add(
                        ring.monomial([rng.randint(0, 6)]),
                        ring.monomial([rng.randint(7, 9)]),
                    )
                )
        x = WittVec(ring, tuple(comps))
        rep = charp_limit_norm(x, bs[s % 3], depth=4)
        if not rep["agree"]:
            bad += 1
    cases = [
        _case(
            "charp_limit_vs_formula",
            bad == 0,
            f"{samples} vectors over F_2[x^(1/2^oo)] at depth 4, b in (1/2,1,2): "
            f"coherent-family norm == sup formula exactly; {bad} failures",
        )
    ]

    growth_bad: List[str] = []
    for C in (0, 1, 2):
        for D in (0, 1, 2):
            x = growth_family(ring, C, D, 5)
            for b in (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3)):
                rep = growth_profile_report(x, b, C, D)
                ok = rep["degree_bound_holds"] and rep["bounded_predicted"] == (b >= C)
                if b >= C:
                    ok = (
                        ok
                        and rep["nonincreasing"]
                        and rep["sup_at_head"]
                        and rep["sup_exponent"] == str(Fraction(D))
                    )
                else:
                    ok = ok and rep["strictly_increasing"]
                if not ok:
                    growth_bad.append(f"(C,D,b)=({C},{D},{b})")
    cases.append(
        _case(
            "charp_growth_dichotomy",
            not growth_bad,
            "families with degree profile (C*j+D)*2^j for (C,D) in {0,1,2}^2: "
            "b >= C gives a nonincreasing profile with sup 2^D at the head, "
            "b < C a strictly increasing profile"
            + ("; failed " + ", ".join(growth_bad) if growth_bad else ""),
        )
    )
    return cases


# ---------------------------------------------------------------------------
# untilt isometry (suite: tilt)
# ---------------------------------------------------------------------------


def check_untilt_isometry(rng: random.Random, p: Optional[int] = None) -> List[CaseResult]:
    """arrow_norm(untilt(x), b) == charp norm of x for b <= 1 on certified
    chain vectors over the conductor-32 truncated cyclotomic base."""
    del p
    base = CycloModPM(2, 5, 4)
    D = 4
    tring = TiltRing(base, D)
    t = base.make([1, -1])
    zeta = base.make([0, 1])
    tops = [
        base.one(),
        t,
        base.mul(t, t),
        base.mul(base.mul(t, t), t),
        zeta,
        base.add(t, base.one()),
        base.add(base.mul(t, t), t),
        base.mul(zeta, t),
        base.add(base.mul(t, t), base.one()),
        # the top must keep head valuation below the base precision: the
        # chain head is top**(p**D), so t**4 and beyond would truncate to 0
        # while the deeper slots stay visible, leaving the certified regime
        base.mul(zeta, base.mul(t, t)),
    ]
    chains = [tilt_from_top(base, top, D) for top in tops]
    zero_chain = tilt_from_top(base, base.zero(), D)
    inputs: List[WittVec] = []
    for c in chains:
        inputs.append(WittVec(tring, (c,)))
    for i in range(8):
        inputs.append(WittVec(tring, (chains[i], chains[(i + 3) % 10])))
    for i in range(8):
        inputs.append(
            WittVec(tring, (chains[i], zero_chain, chains[(i + 5) % 10]))
        )
    for i in range(4):
        inputs.append(WittVec(tring, (zero_chain, chains[i])))
    bad: List[str] = []
    for idx, x in enumerate(inputs):
        for b in (Fraction(1, 4), Fraction(1, 2), Fraction(1)):
            rep = untilt_isometry(x, 2, b)
            if not rep["isometric"]:
                bad.append(
                    f"input {idx}, b={b}: family p^{rep['family_exponent']} vs "
                    f"charp p^{rep['charp_exponent']}"
                )
    return [
        _case(
            "untilt_isometry",
            not bad,
            f"{len(inputs)} certified chain vectors (uniformizer powers, sums, "
            "shifted components) x b in (1/4,1/2,1): exact norm agreement"
            + ("; failed " + "; ".join(bad[:3]) if bad else ""),
        )
    ]


# ---------------------------------------------------------------------------
# inverse-Frobenius sandwich (suite: arrow)
# ---------------------------------------------------------------------------


def check_inverse_frobenius_sandwich(
    rng: random.Random, p: Optional[int] = None, samples: int = 100
) -> List[CaseResult]:
    """Both displayed inequalities tying |x|_{W,b} to the shifted family."""
    rings: List[Ring] = [ZModPM(2, 6), ZModPM(3, 4), CycloModPM(2, 3, 4)]
    if p is not None:
        rings = [r for r in rings if r.p == p] or rings
    bs = (Fraction(1), Fraction(2), Fraction(4))
    bad = 0
    first = ""
    for s in range(samples):
        ring = rings[s % len(rings)]
        depth = rng.randint(2, 4)
        if isinstance(ring, ZModPM):
            draw = lambda: ring.from_int(rng.randrange(ring.p ** ring.M))
        else:
            draw = lambda: ring.make(
                [rng.randrange(ring.p ** ring.M) for _ in range(ring.e)]
            )
        a = sample_coherent(ring, depth, draw)
        rep = inverse_frobenius_sandwich(a, bs[(s // len(rings)) % len(bs)])
        if not rep["passed"]:
            bad += 1
            if not first:
                first = (
                    f"b={rep['b']}: lower p^{rep['lower_exponent']} <= "
                    f"value p^{rep['value_exponent']} <= upper p^{rep['upper_exponent']}"
                )
    return [
        _case(
            "inverse_frobenius_sandwich",
            bad == 0,
            f"{samples} certified coherent samples over Z/2^6, Z/3^4, "
            f"Z[zeta_8]/2^4 with b in (1,2,4); {bad} failures"
            + (f"; first: {first}" if bad else ""),
        )
    ]


# ---------------------------------------------------------------------------
# invariant profiles (suite: artin)
# ---------------------------------------------------------------------------


def check_invariant_profiles(rng: random.Random, p: Optional[int] = None) -> List[CaseResult]:
    """Bounded/unbounded constant-ghost profiles over Q(i) against the
    localized-subring prediction, plus the Teichmueller fixed-point test."""
    del rng, p
    f5, f3 = GaussianField(5), GaussianField(3)
    cases = []

    grid_bad = 0
    n_grid = 0
    for a_num in range(-3, 4):
        for b_num in range(-3, 4):
            for da in (1, 2, 3):
                for db in (1, 2, 3):
                    f = f5.from_pair(Fraction(a_num, da), Fraction(b_num, db))
                    rep = invariant_classify(f5, f, 2)
                    n_grid += 1
                    if not rep["match"]:
                        grid_bad += 1
    cases.append(
        _case(
            "invariant_grid_split_p5",
            grid_bad == 0,
            f"{n_grid} samples a+bi with |a|,|b|<=3 and denominators in {{1,2,3}} "
            f"over Q(i) at p=5: observed boundedness matches the two-place "
            f"valuation prediction; {grid_bad} mismatches",
            inconclusive=True,
        )
    )

    named_ok = True
    details = []
    i5, i3 = f5.imag_unit(), f3.imag_unit()
    for fld, f, want_bounded, label in [
        (f5, i5, True, "i at p=5 (split)"),
        (f5, f5.from_pair(Fraction(0), Fraction(1, 5)), False, "i/5 at p=5"),
        (f5, f5.from_pair(Fraction(1, 5), Fraction(0)), False, "1/5 at p=5"),
        (f3, i3, False, "i at p=3 (inert)"),
        (f3, f3.from_int(2), True, "2 at p=3"),
        (f3, f3.from_pair(Fraction(1, 2), Fraction(0)), True, "1/2 at p=3"),
        (f3, f3.from_pair(Fraction(1, 3), Fraction(0)), False, "1/3 at p=3"),
    ]:
        rep = invariant_classify(fld, f, 3)
        ok = rep["bounded"] == want_bounded and rep["match"]
        named_ok = named_ok and ok
        details.append(f"{label}: {'bounded' if rep['bounded'] else 'unbounded'}")
    cases.append(
        _case(
            "invariant_named_cases",
            named_ok,
            "; ".join(details),
        )
    )

    stable_ok = True
    for fld, f in [(f3, i3), (f5, f5.from_pair(Fraction(1, 5), Fraction(0)))]:
        r2 = ghost_constant_profile(fld, f, 2)
        r3 = ghost_constant_profile(fld, f, 3)
        stable_ok = stable_ok and not r2["bounded"] and not r3["bounded"]
        stable_ok = stable_ok and r2["first_unbounded_index"] == r3["first_unbounded_index"]
    cases.append(
        _case(
            "profile_stability",
            stable_ok,
            "once a profile goes unbounded it stays unbounded as the depth grows "
            "(first unbounded index stable from N=2 to N=3)",
        )
    )

    teich_ok = (
        teichmuller_phi_invariance(f5, i5)
        and not teichmuller_phi_invariance(f3, i3)
        and teichmuller_phi_invariance(f5, f5.one())
        and teichmuller_phi_invariance(Rationals(7), Fraction(1))
    )
    cases.append(
        _case(
            "teichmuller_fixed_points",
            teich_ok,
            "i^5 = i makes [i] shift-invariant at p=5; i^3 = -i breaks it at p=3; "
            "1 is invariant at every p",
        )
    )
    return cases


# ---------------------------------------------------------------------------
# suite registry and runner
# ---------------------------------------------------------------------------

Check = Callable[..., List[CaseResult]]

_SUITES: Dict[str, List[Tuple[str, Check]]] = {
    "universal": [("structure_polynomials", check_structure_polynomials)],
    "ghost": [("witt_ring_laws", check_witt_ring_laws)],
    "norms": [("norm_laws", check_norm_laws)],
    "arrow": [
        ("mul_by_p_norm", check_mul_by_p_norm),
        ("depth_lifting", check_depth_lifting),
        ("theta_map", check_theta_map),
        ("integer_rigidity", check_integer_rigidity),
        ("inverse_frobenius_sandwich", check_inverse_frobenius_sandwich),
    ],
    "perfect": [
        ("perfect_verdicts", check_perfect_verdicts),
        ("frobenius_solving", check_frobenius_solving),
    ],
    "tilt": [
        ("tilt_ring_laws", check_tilt_ring_laws),
        ("charp_overconvergence", check_charp_overconvergence),
        ("untilt_isometry", check_untilt_isometry),
    ],
    "kernel": [("kernel_norm", check_kernel_norm)],
    "artin": [("invariant_profiles", check_invariant_profiles)],
}

SUITE_NAMES = tuple(_SUITES) + ("all",)


def run_suite(name: str, seed: int = 0, p: Optional[int] = None) -> SuiteReport:
    """Execute a named suite; deterministic given (name, seed, p)."""
    if not isinstance(name, str) or name not in SUITE_NAMES:
        raise UnknownSuite(
            f"unknown suite {name!r}; available: {', '.join(SUITE_NAMES)}"
        )
    if p is not None and (not isinstance(p, int) or p < 2):
        raise MalformedConfig(f"p must be a prime integer, got {p!r}")
    started = time.monotonic()
    report = SuiteReport(suite=name, seed=seed)
    if name == "all":
        for sub in _SUITES:
            sub_report = run_suite(sub, seed=seed, p=p)
            for case in sub_report.cases:
                report.cases.append(
                    CaseResult(
                        name=f"{sub}.{case.name}",
                        passed=case.passed,
                        detail=case.detail,
                        inconclusive=case.inconclusive,
                    )
                )
    else:
        for check_name, fn in _SUITES[name]:
            rng = random.Random(f"{seed}|{name}|{check_name}")
            report.cases.extend(fn(rng, p=p))
    report.elapsed_s = time.monotonic() - started
    return report
