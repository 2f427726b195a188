"""Finite-precision tilting of truncated rings, and the comparison map back.

A ``TiltElt`` over a truncated base A (p**M digits) is a coherent p-power-root
chain (x_0, ..., x_D) with x_{m+1}**p = x_m at the stored precision.  Chains
form a ring of characteristic p:

  multiplication is componentwise, and the sum of two chains has component

      z_m = (x_{m+l} + y_{m+l}) ** (p**l),        l = min(M, D - m),

  truncated to l+1 digits.  The fixed power replaces a limit: successive
  choices of l agree mod p**(l+1), because the component sums s_l satisfy
  s_{l+1}**p = s_l mod p and a**(p**l) mod p**(l+1) depends only on a mod p.
  No iteration to convergence is needed, and the precision profile
  min(D - m + 1, M) is stable under repeated addition (the p**l-th power
  regains every digit the inputs lost).

The same mod-p dependence shows the whole ring structure is the perfection of
A/p presented at finite depth; over Z/p**M every chain collapses to the
Teichmueller chain of its residue, so that tilt is F_p.

``charp_overconv_norm`` and ``charp_limit_norm`` compute the b-weighted norm
of a finite vector over a char-p perfect ring two ways: by the closed formula

    sup_j  p**(-b*j) * |x_{p^j}| ** (1/p**j)

and through the coherent-family realization z_n = restrict(F**(-n) x, n).
For a finite vector the family's terms at depths beyond the stored length
repeat an already-seen prefix maximum with a strictly smaller weight, so the
finite supremum is the true one and the two computations agree exactly.

``untilt`` sends a vector over the tilt back to a coherent family over A,
component p^j contributing p**j times the Teichmueller family of its chain
shifted by j.  The comparison is isometric for weights 0 < b <= 1 only; the
checker refuses larger b.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, List, Optional, Sequence, Tuple

from .arrow import ArrowElt, arrow_add, arrow_from_integer, arrow_mul, arrow_norm, arrow_teichmuller, make_arrow
from .cyclotomic import CycloModPM
from .errors import (
    BOutOfRange,
    CapabilityMissing,
    DepthExceeded,
    InsufficientDepth,
    LengthMismatch,
    MalformedConfig,
    NotEnumerable,
    RingMismatch,
)
from .norms import NormValue, norm_max
from .perfpoly import PerfPolyRing
from .rings import Ring, ZModPM
from .witt import WittVec, frobenius, witt_norm

__all__ = [
    "TiltElt",
    "make_tilt",
    "tilt_from_top",
    "tilt_constant",
    "tilt_add",
    "tilt_mul",
    "tilt_neg",
    "tilt_sub",
    "tilt_eq",
    "tilt_is_zero",
    "tilt_frobenius",
    "tilt_pth_root",
    "tilt_norm",
    "tilt_residue",
    "enumerate_tilts",
    "tilt_to_json",
    "tilt_from_json",
    "format_tilt",
    "parse_tilt",
    "TiltRing",
    "charp_overconv_profile",
    "charp_overconv_norm",
    "charp_arrow_realization",
    "charp_limit_norm",
    "growth_family",
    "growth_profile_report",
    "untilt",
    "untilt_isometry",
]


def _truncated_modulus(ring: Ring) -> int:
    if isinstance(ring, (ZModPM, CycloModPM)):
        return ring.M
    raise CapabilityMissing(
        f"tilting needs a truncated base with a digit budget; got {ring.kind}"
    )


@dataclass(frozen=True)
class TiltElt:
    """A coherent chain (x_0, ..., x_D) over a truncated base, x_{m+1}**p = x_m."""

    base: Ring
    entries: Tuple[Any, ...]

    @property
    def depth(self) -> int:
        return len(self.entries) - 1

    def __repr__(self) -> str:
        return f"TiltElt(depth={self.depth}, base={self.base!r})"


def check_chain(base: Ring, entries: Sequence[Any]) -> None:
    for m in range(len(entries) - 1):
        if not base.eq(base.pow_p_tower(entries[m + 1], 1), entries[m]):
            raise LengthMismatch(
                f"chain entries {m}/{m + 1} are not p-th-power coherent"
            )


def make_tilt(base: Ring, entries: Sequence[Any], validate: bool = True) -> TiltElt:
    _truncated_modulus(base)
    if not entries:
        raise LengthMismatch("a tilt element needs at least one chain entry")
    if validate:
        check_chain(base, entries)
    return TiltElt(base, tuple(entries))


def tilt_from_top(base: Ring, top: Any, depth: int) -> TiltElt:
    """The chain determined by its deepest entry: x_m = top ** (p**(D-m))."""
    entries = [top]
    for _ in range(depth):
        entries.append(base.pow_p_tower(entries[-1], 1))
    entries.reverse()
    return TiltElt(base, tuple(entries))


def tilt_constant(base: Ring, c: int, depth: int) -> TiltElt:
    """The stable chain of an integer: its Teichmueller value repeated.

    omega = c**(p**M) is fixed by the p-th power map mod p**M (the iterates
    of an integer stabilize after M - 1 steps), so the constant chain is
    coherent at full precision.
    """
    M = _truncated_modulus(base)
    omega = base.pow_p_tower(base.from_int(c), M)
    return TiltElt(base, tuple(omega for _ in range(depth + 1)))


def _check_pair(x: TiltElt, y: TiltElt) -> Ring:
    x.base.require_same(y.base)
    if x.depth != y.depth:
        raise LengthMismatch(f"tilt depths differ: {x.depth} vs {y.depth}")
    return x.base


def tilt_add(
    x: TiltElt,
    y: TiltElt,
    out_depth: Optional[int] = None,
    min_prec: Optional[int] = None,
) -> TiltElt:
    """Chain sum, each component as a fixed p**l-th power of a deeper sum.

    Component m is certified to min(D - m + 1, M) digits.  Passing
    ``min_prec`` asks that every returned component carry at least
    min(min_prec, M) digits, which needs stored depth D >= out_depth +
    min_prec - 1; ``InsufficientDepth`` reports the shortfall.
    """
    base = _check_pair(x, y)
    M = _truncated_modulus(base)
    D = x.depth
    if out_depth is None:
        out_depth = D
    if out_depth < 0 or out_depth > D:
        raise InsufficientDepth(
            f"cannot emit depth {out_depth} from stored depth {D}"
        )
    if min_prec is not None:
        need = min(min_prec, M)
        have = min(D - out_depth + 1, M)
        if have < need:
            raise InsufficientDepth(
                f"deepest requested component is certified to {have} digits; "
                f"{need} need stored depth >= {out_depth + need - 1}"
            )
    entries = []
    for m in range(out_depth + 1):
        l = min(M, D - m)
        s = base.add(x.entries[m + l], y.entries[m + l])
        entries.append(base.truncate(base.pow_p_tower(s, l), l + 1))
    return make_tilt(base, entries, validate=False)


def tilt_mul(x: TiltElt, y: TiltElt) -> TiltElt:
    base = _check_pair(x, y)
    entries = tuple(base.mul(a, b) for a, b in zip(x.entries, y.entries))
    return TiltElt(base, entries)


def tilt_neg(x: TiltElt) -> TiltElt:
    """Additive inverse: the chain itself at p = 2 (characteristic 2), the
    componentwise negation at odd p (where (-a)**p = -(a**p))."""
    if x.base.p == 2:
        return x
    return TiltElt(x.base, tuple(x.base.neg(e) for e in x.entries))


def tilt_sub(x: TiltElt, y: TiltElt) -> TiltElt:
    return tilt_add(x, tilt_neg(y))


def tilt_eq(x: TiltElt, y: TiltElt) -> bool:
    base = _check_pair(x, y)
    return all(base.eq(a, b) for a, b in zip(x.entries, y.entries))


def tilt_is_zero(x: TiltElt) -> bool:
    return all(x.base.is_zero(e) for e in x.entries)


def tilt_frobenius(x: TiltElt) -> TiltElt:
    """x -> x**p: one slot down the chain, with x_0**p as the new head."""
    head = x.base.pow_p_tower(x.entries[0], 1)
    return TiltElt(x.base, (head,) + x.entries[:-1])


def tilt_pth_root(x: TiltElt) -> TiltElt:
    """The exact p-th root: drop the head.  Costs one level of depth."""
    if x.depth < 1:
        raise DepthExceeded("a p-th root consumes one chain level; depth 0 given")
    return TiltElt(x.base, x.entries[1:])


def tilt_norm(x: TiltElt) -> NormValue:
    """The norm of a chain is the norm of its head entry."""
    return x.base.seminorm(x.entries[0])


def tilt_residue(x: TiltElt):
    """The mod-p class of the head, which determines the chain up to the
    stable precision profile."""
    base = x.base
    head = x.entries[0]
    if isinstance(base, ZModPM):
        return head.value % base.p
    if isinstance(base, CycloModPM):
        return tuple(c % base.p for c in head.coeffs)
    raise CapabilityMissing(f"no residue extraction for base {base.kind}")


def enumerate_tilts(base: Ring, depth: int, limit: int = 100000) -> List[TiltElt]:
    """Every coherent chain of the given depth: one per choice of deepest
    entry, since the rest of the chain is determined by powering down."""
    if isinstance(base, ZModPM):
        tops = [base.make(v) for v in range(base.p ** base.M)]
    elif isinstance(base, CycloModPM):
        count = base.p ** (base.M * base.field.e)
        if count > limit:
            raise NotEnumerable(
                f"{count} chain tops exceed the enumeration limit {limit}"
            )
        span = base.p ** base.M
        tops = [
            base.make(list(vec))
            for vec in product(range(span), repeat=base.field.e)
        ]
    else:
        raise NotEnumerable(f"base {base.kind} is not a finite truncated ring")
    if len(tops) > limit:
        raise NotEnumerable(f"{len(tops)} chain tops exceed the enumeration limit {limit}")
    return [tilt_from_top(base, top, depth) for top in tops]


def format_tilt(x: TiltElt) -> str:
    return "[" + "; ".join(x.base.format_elt(e) for e in x.entries) + "]"


def parse_tilt(base: Ring, text: str) -> TiltElt:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise MalformedConfig(f"a tilt element looks like '[x0; x1; ...]', got {text!r}")
    parts = [p.strip() for p in body[1:-1].split(";") if p.strip()]
    if not parts:
        raise MalformedConfig("a tilt element needs at least one chain entry")
    return make_tilt(base, [base.parse_elt(p) for p in parts])


def tilt_to_json(x: TiltElt) -> dict:
    return {
        "base": x.base.to_config(),
        "entries": [x.base.elt_to_json(e) for e in x.entries],
    }


def tilt_from_json(base: Ring, data: dict) -> TiltElt:
    if "base" in data and data["base"] != base.to_config():
        raise MalformedConfig(
            f"chain was serialized over {data['base']}, not {base.to_config()}"
        )
    return make_tilt(base, [base.elt_from_json(v) for v in data["entries"]])


class TiltRing(Ring):
    """The tilt of a truncated base, as a ring of coherent chains at a fixed
    depth.  Characteristic p; the norm of a chain is the norm of its head."""

    kind = "tilt"
    char_p = True
    q_algebra = False
    p_torsion_free = False
    truncated = False

    def __init__(self, base: Ring, depth: int):
        self.M = _truncated_modulus(base)
        if not isinstance(depth, int) or depth < 0:
            raise MalformedConfig(f"tilt depth must be a non-negative integer, got {depth!r}")
        self.base = base
        self.depth = depth
        self.p = base.p
        self.multiplicative_norm = base.multiplicative_norm
        self.power_multiplicative_norm = base.power_multiplicative_norm

    def to_config(self) -> dict:
        return {"kind": self.kind, "base": self.base.to_config(), "depth": self.depth}

    def _own(self, x: TiltElt) -> TiltElt:
        if not isinstance(x, TiltElt) or not self.base.same_ring(x.base):
            raise RingMismatch("element does not belong to this tilt ring")
        if x.depth != self.depth:
            raise LengthMismatch(
                f"this tilt ring holds depth-{self.depth} chains, got depth {x.depth}"
            )
        return x

    def from_int(self, n: int) -> TiltElt:
        return tilt_constant(self.base, n, self.depth)

    def add(self, a: TiltElt, b: TiltElt) -> TiltElt:
        return tilt_add(self._own(a), self._own(b))

    def neg(self, a: TiltElt) -> TiltElt:
        return tilt_neg(self._own(a))

    def mul(self, a: TiltElt, b: TiltElt) -> TiltElt:
        return tilt_mul(self._own(a), self._own(b))

    def eq(self, a: TiltElt, b: TiltElt) -> bool:
        return tilt_eq(self._own(a), self._own(b))

    def is_zero(self, a: TiltElt) -> bool:
        return tilt_is_zero(self._own(a))

    def pow_p_tower(self, a: TiltElt, l: int) -> TiltElt:
        out = self._own(a)
        for _ in range(l):
            out = tilt_frobenius(out)
        return out

    def seminorm(self, a: TiltElt) -> NormValue:
        return tilt_norm(self._own(a))

    def pth_root_mod_p(self, a: TiltElt) -> TiltElt:
        raise CapabilityMissing(
            "chains lose a level per root; use tilt_pth_root explicitly"
        )

    def format_elt(self, a: TiltElt) -> str:
        return format_tilt(self._own(a))

    def parse_elt(self, text: str) -> TiltElt:
        return self._own(parse_tilt(self.base, text))

    def elt_to_json(self, a: TiltElt) -> Any:
        return [self.base.elt_to_json(e) for e in self._own(a).entries]

    def elt_from_json(self, value: Any) -> TiltElt:
        return self._own(make_tilt(self.base, [self.base.elt_from_json(v) for v in value]))


# -- norms over characteristic-p perfect rings ------------------------------------------


def _require_char_p(ring: Ring) -> None:
    if not ring.char_p:
        raise CapabilityMissing(
            f"this norm is for vectors over characteristic-p rings; got {ring.kind}"
        )


def charp_overconv_profile(x: WittVec, b) -> List[NormValue]:
    """Per-index values p**(-b*j) * |x_{p^j}| ** (1/p**j)."""
    _require_char_p(x.ring)
    b = Fraction(b)
    if b <= 0:
        raise BOutOfRange(f"the weight b must be positive, got {b}")
    ring = x.ring
    return [
        ring.seminorm(c).pow(Fraction(1, ring.p ** j)).scale_exponent(b * j)
        for j, c in enumerate(x.components)
    ]


def charp_overconv_norm(x: WittVec, b) -> NormValue:
    """sup_j p**(-b*j) |x_{p^j}|**(1/p**j), exact for a stored finite vector."""
    return norm_max(charp_overconv_profile(x, b))


def charp_arrow_realization(x: WittVec, depth: Optional[int] = None) -> ArrowElt:
    """The coherent family of a finite vector over a char-p perfect ring.

    Frobenius is the componentwise p-th power there, so level n is the
    componentwise p**n-th root of the first n+1 components (zero-padded past
    the stored length).  Root extraction may refuse (NoRoot) when the ring
    cannot divide exponents by p any further; callers pick representable
    inputs.
    """
    ring = x.ring
    _require_char_p(ring)
    N = x.top_index if depth is None else depth
    chains: List[List[Any]] = []
    for c in x.components[: N + 1]:
        chain = [c]
        for _ in range(N):
            chain.append(ring.pth_root_mod_p(chain[-1]))
        chains.append(chain)
    zero = ring.zero()
    levels = []
    for n in range(N + 1):
        comps = tuple(
            chains[i][n] if i < len(chains) else zero for i in range(n + 1)
        )
        levels.append(WittVec(ring, comps))
    return make_arrow(ring, levels)


def charp_limit_norm(x: WittVec, b, depth: Optional[int] = None) -> dict:
    """The b-weighted norm through the coherent-family realization, compared
    with the closed sup-formula.

    Past the deepest stored level every term repeats an already-attained
    prefix maximum under a strictly smaller weight p**(-b*n), so the finite
    supremum is the true limit value and the two must agree exactly.
    """
    realization = charp_arrow_realization(x, depth)
    p = x.ring.p
    b = Fraction(b)
    if b <= 0:
        raise BOutOfRange(f"the weight b must be positive, got {b}")
    terms = [
        witt_norm(z).pow(p ** n).scale_exponent(b * n)
        for n, z in enumerate(realization.levels)
    ]
    limit_value = norm_max(terms)
    formula = charp_overconv_norm(x, b)
    return {
        "limit_exponent": None if limit_value.is_zero else str(-limit_value.v),
        "formula_exponent": None if formula.is_zero else str(-formula.v),
        "agree": limit_value == formula,
        "depth": realization.depth,
        "b": str(b),
    }


# -- growth families ---------------------------------------------------------------------


def growth_family(ring: PerfPolyRing, C: int, D: int, length: int) -> WittVec:
    """The vector with components x0**((C*j + D) * p**j), the stock family
    whose degrees meet the bound deg f_{p^j} <= C*j*p**j + D*p**j with
    equality."""
    if not isinstance(ring, PerfPolyRing):
        raise CapabilityMissing("growth families live over perfected polynomial rings")
    comps = []
    for j in range(length):
        deg = (C * j + D) * ring.p ** j
        exps = [deg] + [0] * (ring.nvars - 1)
        comps.append(ring.monomial(exps))
    return WittVec(ring, tuple(comps))


def growth_profile_report(x: WittVec, b, C: int, D: int) -> dict:
    """Check the degree bound against the declared (C, D) and classify the
    b-weighted profile.

    With equality degrees the j-th term is p**((C - b)*j + D): for b >= C the
    profile is non-increasing and the supremum p**D sits at j = 0; for b < C
    it is strictly increasing, which certifies divergence as the length grows.
    """
    ring = x.ring
    if not isinstance(ring, PerfPolyRing):
        raise CapabilityMissing("growth families live over perfected polynomial rings")
    b = Fraction(b)
    degree_ok = True
    for j, c in enumerate(x.components):
        deg = ring.degree(c)
        if deg is not None and deg > (C * j + D) * ring.p ** j:
            degree_ok = False
    profile = charp_overconv_profile(x, b)
    value = norm_max(profile)
    nonincreasing = all(
        not (profile[j] < profile[j + 1]) for j in range(len(profile) - 1)
    )
    increasing = all(
        profile[j] < profile[j + 1] for j in range(len(profile) - 1)
    )
    return {
        "degree_bound_holds": degree_ok,
        "b": str(b),
        "C": C,
        "D": D,
        "sup_exponent": None if value.is_zero else str(-value.v),
        "sup_at_head": bool(profile) and profile[0] == value,
        "nonincreasing": nonincreasing,
        "strictly_increasing": increasing,
        "bounded_predicted": b >= C,
    }


# -- the comparison map ------------------------------------------------------------------


def untilt(x: WittVec, N: int) -> ArrowElt:
    """Send a vector over the tilt of A back to a coherent family over A.

    Component p^j contributes p**j times the Teichmueller family of its
    chain shifted j slots down (the shift supplies the p**j-th roots the
    j-th summand needs), so the stored chains must reach depth N + j.
    """
    ring = x.ring
    if not isinstance(ring, TiltRing):
        raise CapabilityMissing("untilt expects a vector over a tilt ring")
    base = ring.base
    need = N + x.top_index
    if ring.depth < need:
        raise InsufficientDepth(
            f"component p^{x.top_index} at family depth {N} reads chain slot "
            f"{need}; stored chains have depth {ring.depth}"
        )
    total = arrow_from_integer(base, 0, N)
    for j, chain in enumerate(x.components):
        roots = [chain.entries[j + n] for n in range(N + 1)]
        term = arrow_teichmuller(base, roots)
        if j:
            term = arrow_mul(term, arrow_from_integer(base, base.p ** j, N))
        total = arrow_add(total, term)
    return total


def untilt_isometry(x: WittVec, N: int, b) -> dict:
    """Compare the family norm of untilt(x) with the char-p formula.

    The comparison is an isometry only for 0 < b <= 1; larger weights are
    refused rather than extrapolated (the two sides genuinely differ there).
    """
    b = Fraction(b)
    if b <= 0 or b > 1:
        raise BOutOfRange(
            f"the untilt comparison is isometric only for 0 < b <= 1, got {b}"
        )
    family = untilt(x, N)
    lhs = arrow_norm(family, b)
    rhs = charp_overconv_norm(x, b)
    return {
        "b": str(b),
        "family_exponent": None if lhs.value.is_zero else str(-lhs.value.v),
        "family_status": lhs.status,
        "charp_exponent": None if rhs.is_zero else str(-rhs.v),
        "isometric": lhs.value == rhs,
    }
