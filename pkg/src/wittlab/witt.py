"""Truncated p-typical vectors and their ring operations.

A vector of length n+1 over a coefficient ring R is written
(x_1, x_p, ..., x_{p**n}).  Operations are defined through ghost coordinates
and dispatch on the ring's capabilities:

  * characteristic p     -- cached structure polynomials (componentwise
                            Frobenius, etc.); lengths beyond the cached range
                            are refused rather than approximated;
  * Q-algebras           -- ghost transport, any length;
  * everything else      -- lift to the ring's p-torsion-free cover, transport
                            there, reduce back; the reduction asserts
                            integrality, and over truncated rings the result
                            carries the minimum precision of the inputs.

Ghost coordinates are injective over p-torsion-free rings, which is what makes
the transport well-defined; the integrality assertions turn that theorem into
a runtime check.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, List, Optional, Sequence, Tuple

from .errors import (
    CapabilityMissing,
    IntegralityViolation,
    LengthMismatch,
    MalformedConfig,
)
from .norms import NormValue, norm_max
from .rings import Rationals, Ring
from .univ import structure_cap, structure_poly

__all__ = [
    "WittVec",
    "GhostVec",
    "witt_vec",
    "witt_zero",
    "witt_one",
    "ghost",
    "unghost",
    "witt_add",
    "witt_sub",
    "witt_neg",
    "witt_mul",
    "frobenius",
    "verschiebung",
    "teichmuller",
    "teich_mul",
    "restrict",
    "integer_witt_components",
    "witt_from_integer",
    "mul_by_int",
    "witt_norm",
    "witt_norm_attained",
    "witt_to_json",
    "witt_from_json",
    "format_witt",
    "parse_witt",
    "split_top_level",
]


@dataclass(frozen=True)
class WittVec:
    ring: Ring
    components: Tuple[Any, ...]

    def __post_init__(self):
        if len(self.components) == 0:
            raise LengthMismatch("vectors must have at least one component")

    @property
    def length(self) -> int:
        return len(self.components)

    @property
    def top_index(self) -> int:
        """n, for a vector (x_1, ..., x_{p**n})."""
        return len(self.components) - 1

    def __repr__(self) -> str:
        return f"WittVec({self.ring!r}, {format_witt(self)})"


@dataclass(frozen=True)
class GhostVec:
    ring: Ring
    entries: Tuple[Any, ...]

    def pointwise(self, other: "GhostVec", op: Callable) -> "GhostVec":
        if len(self.entries) != len(other.entries):
            raise LengthMismatch("ghost vectors of different lengths")
        return GhostVec(self.ring, tuple(op(a, b) for a, b in zip(self.entries, other.entries)))

    def add(self, other: "GhostVec") -> "GhostVec":
        return self.pointwise(other, self.ring.add)

    def mul(self, other: "GhostVec") -> "GhostVec":
        return self.pointwise(other, self.ring.mul)

    def neg(self) -> "GhostVec":
        return GhostVec(self.ring, tuple(self.ring.neg(a) for a in self.entries))


def witt_vec(ring: Ring, components: Sequence) -> WittVec:
    return WittVec(ring, tuple(components))


def witt_zero(ring: Ring, length: int) -> WittVec:
    return WittVec(ring, tuple(ring.zero() for _ in range(length)))


def witt_one(ring: Ring, length: int) -> WittVec:
    return WittVec(ring, (ring.one(),) + tuple(ring.zero() for _ in range(length - 1)))


# -- ghost coordinates ---------------------------------------------------------


def ghost(x: WittVec) -> GhostVec:
    ring, p = x.ring, x.ring.p
    entries = []
    for m in range(x.length):
        acc = ring.zero()
        for i in range(m + 1):
            term = ring.pow_(x.components[i], p ** (m - i))
            if i:
                term = ring.mul(ring.from_int(p ** i), term)
            acc = ring.add(acc, term)
        entries.append(acc)
    return GhostVec(ring, tuple(entries))


def unghost(g: GhostVec) -> WittVec:
    """Invert the ghost map; exact divisions must succeed (NotDivisible
    otherwise), which over a p-torsion-free ring certifies the preimage."""
    ring, p = g.ring, g.ring.p
    if not (ring.q_algebra or ring.p_torsion_free):
        raise CapabilityMissing(
            f"{ring.kind}: ghost coordinates are not injective over rings with "
            "p-torsion; transport through the cover instead"
        )
    comps: List[Any] = []
    for m, w in enumerate(g.entries):
        acc = w
        for i in range(m):
            term = ring.pow_(comps[i], p ** (m - i))
            if i:
                term = ring.mul(ring.from_int(p ** i), term)
            acc = ring.sub(acc, term)
        for _ in range(m):
            acc = ring.exact_divide_by_p(acc)
        comps.append(acc)
    return WittVec(ring, tuple(comps))


# -- operation dispatch ---------------------------------------------------------


def _min_precision(ring: Ring, vecs: Sequence[WittVec]) -> Optional[int]:
    if not ring.truncated:
        return None
    return min(ring.precision_of(c) for v in vecs for c in v.components)


def _cover_lift(x: WittVec) -> GhostVec:
    ring = x.ring
    cover = ring.cover_ring()
    lifted = WittVec(cover, tuple(ring.lift_to_cover(c) for c in x.components))
    return ghost(lifted)


def _reduce_back(ring: Ring, z: WittVec, prec: Optional[int]) -> WittVec:
    return WittVec(ring, tuple(ring.reduce_from_cover(c, prec) for c in z.components))


def _same_shape(x: WittVec, y: WittVec) -> None:
    x.ring.require_same(y.ring)
    if x.length != y.length:
        raise LengthMismatch(f"vector lengths differ: {x.length} vs {y.length}")


def _binary_char_p(x: WittVec, y: WittVec, kind: str) -> WittVec:
    ring = x.ring
    n = x.top_index
    if n > structure_cap(ring.p):
        raise CapabilityMissing(
            f"characteristic-p {kind} is cached up to length {structure_cap(ring.p) + 1} "
            f"at p={ring.p}; got length {x.length}"
        )
    comps = []
    for i in range(x.length):
        poly = structure_poly(ring.p, i, kind)
        values = list(x.components[: i + 1]) + list(y.components[: i + 1])
        comps.append(poly.evaluate(ring, values))
    return WittVec(ring, tuple(comps))


def _binary_op(x: WittVec, y: WittVec, kind: str) -> WittVec:
    _same_shape(x, y)
    ring = x.ring
    if ring.char_p:
        return _binary_char_p(x, y, kind)
    cover = ring.cover_ring()
    gx, gy = _cover_lift(x), _cover_lift(y)
    gz = gx.add(gy) if kind == "sum" else gx.mul(gy)
    z = unghost(gz)
    return _reduce_back(ring, z, _min_precision(ring, (x, y)))


def witt_add(x: WittVec, y: WittVec) -> WittVec:
    return _binary_op(x, y, "sum")


def witt_mul(x: WittVec, y: WittVec) -> WittVec:
    return _binary_op(x, y, "prod")


def witt_neg(x: WittVec) -> WittVec:
    ring = x.ring
    if ring.char_p:
        if ring.p != 2:
            return WittVec(ring, tuple(ring.neg(c) for c in x.components))
        n = x.top_index
        if n > structure_cap(2):
            raise CapabilityMissing(
                f"characteristic-2 negation is cached up to length {structure_cap(2) + 1}"
            )
        comps = [
            structure_poly(2, i, "neg").evaluate(ring, list(x.components[: i + 1]))
            for i in range(x.length)
        ]
        return WittVec(ring, tuple(comps))
    gx = _cover_lift(x)
    z = unghost(gx.neg())
    return _reduce_back(ring, z, _min_precision(ring, (x,)))


def witt_sub(x: WittVec, y: WittVec) -> WittVec:
    return witt_add(x, witt_neg(y))


def witt_eq(x: WittVec, y: WittVec) -> bool:
    _same_shape(x, y)
    return all(x.ring.eq(a, b) for a, b in zip(x.components, y.components))


# -- Frobenius, Verschiebung, Teichmueller ------------------------------------------


def frobenius(x: WittVec) -> WittVec:
    """F: length n+1 -> length n; ghost(F(x))_m = ghost(x)_{m+1}."""
    ring = x.ring
    if x.length < 2:
        raise LengthMismatch("frobenius shortens a vector; need at least 2 components")
    if ring.char_p:
        return WittVec(ring, tuple(ring.pow_(c, ring.p) for c in x.components[:-1]))
    p = ring.p
    if x.length - 2 <= structure_cap(p):
        p_elt = ring.from_int(p)
        comps = []
        for i in range(x.length - 1):
            acc = ring.pow_(x.components[i], p)
            acc = ring.add(acc, ring.mul(p_elt, x.components[i + 1]))
            if i:
                carry = structure_poly(p, i, "frob_f").evaluate(
                    ring, list(x.components[: i + 1])
                )
                acc = ring.add(acc, ring.mul(p_elt, carry))
            comps.append(acc)
        return WittVec(ring, tuple(comps))
    gx = _cover_lift(x)
    z = unghost(GhostVec(gx.ring, gx.entries[1:]))
    return _reduce_back(ring, z, _min_precision(ring, (x,)))


def frobenius_iter(x: WittVec, k: int) -> WittVec:
    for _ in range(k):
        x = frobenius(x)
    return x


def verschiebung(x: WittVec) -> WittVec:
    return WittVec(x.ring, (x.ring.zero(),) + x.components)


def teichmuller(ring: Ring, r, length: int) -> WittVec:
    return WittVec(ring, (r,) + tuple(ring.zero() for _ in range(length - 1)))


def teich_mul(r, x: WittVec) -> WittVec:
    """[r] * x = (r*x_1, r**p * x_p, ...), exact in any ring."""
    ring = x.ring
    comps = []
    for i, c in enumerate(x.components):
        comps.append(ring.mul(ring.pow_(r, ring.p ** i), c))
    return WittVec(ring, tuple(comps))


def restrict(x: WittVec, top_index: int) -> WittVec:
    if top_index + 1 > x.length:
        raise LengthMismatch(
            f"cannot restrict a length-{x.length} vector to length {top_index + 1}"
        )
    return WittVec(x.ring, x.components[: top_index + 1])


# -- integer constants ------------------------------------------------------------


@lru_cache(maxsize=None)
def integer_witt_components(p: int, c: int, length: int) -> Tuple[int, ...]:
    """Components of the vector with all ghost coordinates equal to c.

    These are integers for every integer c (a classical divisibility fact);
    the computation runs over Q and the conversion asserts it.
    """
    ring = Rationals(p)
    g = GhostVec(ring, tuple(Fraction(c) for _ in range(length)))
    x = unghost(g)
    out = []
    for q in x.components:
        if q.denominator != 1:
            raise IntegralityViolation(
                f"constant ghost vector {c} failed integrality at p={p}"
            )
        out.append(int(q))
    return tuple(out)


def witt_from_integer(ring: Ring, c: int, length: int) -> WittVec:
    comps = integer_witt_components(ring.p, c, length)
    return WittVec(ring, tuple(ring.from_int(v) for v in comps))


def mul_by_int(c: int, x: WittVec) -> WittVec:
    return witt_mul(witt_from_integer(x.ring, c, x.length), x)


# -- norms ----------------------------------------------------------------------------


def witt_norm_profile(x: WittVec) -> List[NormValue]:
    """The per-component values |x_{p**i}| ** (1/p**i)."""
    ring = x.ring
    return [
        ring.seminorm(c).pow(Fraction(1, ring.p ** i)) for i, c in enumerate(x.components)
    ]


def witt_norm(x: WittVec) -> NormValue:
    return norm_max(witt_norm_profile(x))


def witt_norm_attained(x: WittVec) -> Tuple[NormValue, Optional[int]]:
    profile = witt_norm_profile(x)
    value = norm_max(profile)
    if value.is_zero:
        return value, None
    for i, term in enumerate(profile):
        if term == value:
            return value, i
    return value, None


# -- serialization ----------------------------------------------------------------------


def witt_to_json(x: WittVec) -> dict:
    return {
        "ring": x.ring.to_config(),
        "components": [x.ring.elt_to_json(c) for c in x.components],
    }


def witt_from_json(ring: Ring, data: dict) -> WittVec:
    if "ring" in data and data["ring"] != ring.to_config():
        raise MalformedConfig(
            f"vector was serialized over {data['ring']}, not {ring.to_config()}"
        )
    return WittVec(ring, tuple(ring.elt_from_json(v) for v in data["components"]))


def format_witt(x: WittVec, tagged: bool = False) -> str:
    body = ", ".join(x.ring.format_elt(c) for c in x.components)
    if tagged:
        return f"W(p={x.ring.p}; {body})"
    return "(" + body + ")"


def split_top_level(text: str, sep: str = ",") -> List[str]:
    """Split on separators not nested inside (), [], or {}."""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
            if depth < 0:
                raise MalformedConfig(f"unbalanced brackets in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth:
        raise MalformedConfig(f"unbalanced brackets in {text!r}")
    parts.append("".join(current))
    return parts


_TAGGED = re.compile(r"^W\(\s*p\s*=\s*(\d+)\s*;(.*)\)$", re.DOTALL)


def parse_witt(ring: Ring, text: str) -> WittVec:
    """Parse either the bare tuple form ``(3, -2)`` or the tagged form
    ``W(p=2; 3, -2)``; the tag's prime must match the ring."""
    body = text.strip()
    tagged = _TAGGED.match(body)
    if tagged:
        if int(tagged.group(1)) != ring.p:
            raise MalformedConfig(
                f"vector tagged p={tagged.group(1)} but the ring has p={ring.p}"
            )
        body = tagged.group(2).strip()
    elif body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = [s.strip() for s in split_top_level(body)]
    if parts == [""]:
        raise MalformedConfig(f"empty vector: {text!r}")
    return WittVec(ring, tuple(ring.parse_elt(s) for s in parts))
