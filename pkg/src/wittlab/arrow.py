"""Coherent towers of vectors under Frobenius, and their limit norms.

An ``ArrowElt`` of depth N over R stores levels (z_0, ..., z_N) with z_n of
length n+1 and F(z_{n+1}) = z_n exactly.  It is the finite-depth model of an
element of the inverse limit of the truncated vector rings along Frobenius;
operations are levelwise, and inverse Frobenius is the cheap shift
z'_n = restrict(z_{n+1}, n).

The b-weighted limit norm is

    |a|_b = sup_n  p**(-b*n) * |z_n| ** (p**n),     b > 0.

A finite depth can only ever certify a supremum from below, so the result
carries a status flag.  When the element comes with a *tail bound* B <= 1 (a
certificate that it extends coherently with all level norms <= B), the terms
beyond depth N are bounded by p**(-b*(N+1)) * B**(p**(N+1)), and whenever the
stored maximum dominates that bound the supremum is exact.

``lift_arrow_precision`` trades depth for digits over a truncated base: each
new level is computed as F**(m+1) of a digit-extended lift two-plus-m levels
up, which washes out the lift ambiguity (a mod-p**m class lifts to mod
p**(m+1) only up to p**m * delta, and one application of F shrinks that
ambiguity by a factor of p).  The result is exactly coherent at the higher
precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence, Tuple

from .cyclotomic import CycloModPM
from .errors import (
    BOutOfRange,
    CapabilityMissing,
    DepthExceeded,
    InsufficientDepth,
    IntegralityViolation,
    LengthMismatch,
)
from .norms import NormValue, norm_max
from .rings import Ring, ZModPM
from .witt import (
    WittVec,
    frobenius,
    frobenius_iter,
    restrict,
    teichmuller,
    witt_add,
    witt_eq,
    witt_from_integer,
    witt_mul,
    witt_neg,
    witt_norm,
    witt_to_json,
    witt_zero,
)

__all__ = [
    "ArrowElt",
    "make_arrow",
    "check_coherence",
    "arrow_add",
    "arrow_mul",
    "arrow_neg",
    "arrow_sub",
    "arrow_eq",
    "arrow_from_integer",
    "arrow_teichmuller",
    "project",
    "inverse_frobenius",
    "inverse_frobenius_sandwich",
    "frobenius_arrow",
    "theta",
    "theta_series",
    "ArrowNorm",
    "arrow_norm",
    "lift_arrow_precision",
    "map_components",
    "sample_coherent",
    "rigidity_profile",
    "arrow_to_json",
]


@dataclass(frozen=True)
class ArrowElt:
    ring: Ring
    levels: Tuple[WittVec, ...]
    tail_bound: Optional[NormValue] = None

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def __repr__(self) -> str:
        return f"ArrowElt(depth={self.depth}, ring={self.ring!r})"


def check_coherence(ring: Ring, levels: Sequence[WittVec]) -> None:
    for n, z in enumerate(levels):
        if z.length != n + 1:
            raise LengthMismatch(
                f"level {n} must have length {n + 1}, got {z.length}"
            )
    for n in range(len(levels) - 1):
        if not witt_eq(frobenius(levels[n + 1]), levels[n]):
            raise IntegralityViolation(
                f"levels {n}/{n + 1} are not Frobenius-coherent"
            )


def make_arrow(
    ring: Ring,
    levels: Sequence[WittVec],
    tail_bound: Optional[NormValue] = None,
    validate: bool = True,
) -> ArrowElt:
    if not levels:
        raise LengthMismatch("an arrow element needs at least one level")
    if validate:
        check_coherence(ring, levels)
    return ArrowElt(ring, tuple(levels), tail_bound)


def _integral_tail_bound(ring: Ring) -> Optional[NormValue]:
    """Over truncated integral bases every coherent family has level norms
    <= 1, so the unit tail bound is always a valid certificate."""
    if isinstance(ring, (ZModPM, CycloModPM)):
        return NormValue.one()
    return None


def _combine_tail(a: ArrowElt, b: ArrowElt, how: str) -> Optional[NormValue]:
    if a.tail_bound is None or b.tail_bound is None:
        return None
    if how == "add":
        return norm_max([a.tail_bound, b.tail_bound])
    return a.tail_bound.mul(b.tail_bound)


def _check_depths(a: ArrowElt, b: ArrowElt) -> None:
    a.ring.require_same(b.ring)
    if a.depth != b.depth:
        raise LengthMismatch(f"arrow depths differ: {a.depth} vs {b.depth}")


def arrow_add(a: ArrowElt, b: ArrowElt) -> ArrowElt:
    _check_depths(a, b)
    levels = tuple(witt_add(x, y) for x, y in zip(a.levels, b.levels))
    return ArrowElt(a.ring, levels, _combine_tail(a, b, "add"))


def arrow_mul(a: ArrowElt, b: ArrowElt) -> ArrowElt:
    _check_depths(a, b)
    levels = tuple(witt_mul(x, y) for x, y in zip(a.levels, b.levels))
    return ArrowElt(a.ring, levels, _combine_tail(a, b, "mul"))


def arrow_neg(a: ArrowElt) -> ArrowElt:
    return ArrowElt(a.ring, tuple(witt_neg(x) for x in a.levels), a.tail_bound)


def arrow_sub(a: ArrowElt, b: ArrowElt) -> ArrowElt:
    return arrow_add(a, arrow_neg(b))


def arrow_eq(a: ArrowElt, b: ArrowElt) -> bool:
    _check_depths(a, b)
    return all(witt_eq(x, y) for x, y in zip(a.levels, b.levels))


def arrow_from_integer(ring: Ring, c: int, depth: int) -> ArrowElt:
    """The constant-ghost integer c at every level; coherent because the
    ghost of F is the shift and constant families are shift-invariant."""
    levels = tuple(witt_from_integer(ring, c, n + 1) for n in range(depth + 1))
    bound = norm_max([ring.seminorm(ring.from_int(c)), NormValue.one()])
    if NormValue.one() < bound:
        raise IntegralityViolation(
            f"integer image of {c} has seminorm above 1; tail certificate invalid"
        )
    return make_arrow(ring, levels, tail_bound=NormValue.one())


def arrow_teichmuller(ring: Ring, roots: Sequence, validate: bool = True) -> ArrowElt:
    """Arrow element ([r_n])_n from a sequence with r_{n+1}**p = r_n.

    Level norms are |r_0| ** (1/p**n), whose supremum over all n is at most
    max(1, |r_0|); for |r_0| <= 1 the unit tail bound applies.
    """
    if validate:
        for n in range(len(roots) - 1):
            if not ring.eq(ring.pow_(roots[n + 1], ring.p), roots[n]):
                raise IntegralityViolation(f"roots {n}/{n + 1} are not p-power coherent")
    levels = tuple(teichmuller(ring, r, n + 1) for n, r in enumerate(roots))
    bound = None
    if not NormValue.one() < ring.seminorm(roots[0]):
        bound = NormValue.one()
    return make_arrow(ring, levels, tail_bound=bound, validate=validate)


def project(a: ArrowElt, n: int) -> WittVec:
    """Level n of the family (length n+1); its first component is w_{p^-n}."""
    if n < 0 or n > a.depth:
        raise DepthExceeded(f"level {n} of a depth-{a.depth} element")
    return a.levels[n]


def inverse_frobenius(a: ArrowElt) -> ArrowElt:
    """Shift: level n of the result is the truncation of level n+1."""
    if a.depth < 1:
        raise DepthExceeded("inverse Frobenius consumes one level; depth 0 given")
    levels = tuple(restrict(a.levels[n + 1], n) for n in range(a.depth))
    return ArrowElt(a.ring, levels, a.tail_bound)


def frobenius_arrow(a: ArrowElt) -> ArrowElt:
    if a.depth < 1:
        raise DepthExceeded("Frobenius consumes one level; depth 0 given")
    return ArrowElt(a.ring, a.levels[:-1], a.tail_bound)


def theta(a: ArrowElt) -> Any:
    """Evaluation: the first component of level 0.

    Only meaningful over a truncated base (the finite digit budget is what
    models the completeness needed for the limit to evaluate)."""
    if not a.ring.truncated:
        raise CapabilityMissing(
            "theta is defined over truncated bases; this ring is exact"
        )
    return a.levels[0].components[0]


def theta_series(a: ArrowElt, lift_perturbation: Optional[Callable[[int], Any]] = None):
    """The partial sums sum_i p**i * y_i ** (p**(N-i)) with y_i level-N
    components (optionally perturbed by a caller-supplied lift change).

    For a coherent element this telescopes to theta(a) exactly: the sum is the
    top ghost coordinate of level N, and ghost coordinates are constant along
    the tower.  Returns (value, terms).
    """
    ring = a.ring
    N = a.depth
    top = a.levels[N]
    terms = []
    acc = ring.zero()
    for i in range(N + 1):
        y = top.components[i]
        if lift_perturbation is not None:
            y = ring.add(y, lift_perturbation(i))
        term = ring.mul(ring.from_int(ring.p ** i), ring.pow_p_tower(y, N - i))
        terms.append(term)
        acc = ring.add(acc, term)
    return acc, terms


@dataclass(frozen=True)
class ArrowNorm:
    value: NormValue
    status: str  # "exact" or "lower-bound"
    attained_at: Optional[int]
    b: Fraction
    term_exponents: Tuple[Optional[Fraction], ...]
    tail_exponent: Optional[Fraction]

    def to_dict(self) -> dict:
        return {
            "exponent": None if self.value.is_zero else str(-self.value.v),
            "status": self.status,
            "attained_at": self.attained_at,
            "b": str(self.b),
            "terms": [None if e is None else str(e) for e in self.term_exponents],
            "tail": None if self.tail_exponent is None else str(self.tail_exponent),
        }


def arrow_norm(a: ArrowElt, b) -> ArrowNorm:
    """sup_n p**(-b*n) |z_n| ** (p**n) over the stored levels, with an
    exactness certificate when the tail bound dominates."""
    b = Fraction(b)
    if b <= 0:
        raise BOutOfRange(f"the weight b must be positive, got {b}")
    p = a.ring.p
    terms = []
    for n, z in enumerate(a.levels):
        terms.append(witt_norm(z).pow(p ** n).scale_exponent(b * n))
    value = norm_max(terms)
    attained = None
    for n, t in enumerate(terms):
        if not t.is_zero and t == value:
            attained = n
            break
    status = "lower-bound"
    tail = None
    B = a.tail_bound
    if B is not None:
        if B.is_zero:
            status = "exact"
        elif not NormValue.one() < B:
            N = a.depth
            tail_value = B.pow(p ** (N + 1)).scale_exponent(b * (N + 1))
            tail = None if tail_value.is_zero else -tail_value.v
            if tail_value <= value:
                status = "exact"
    if value.is_zero and B is not None and B.is_zero:
        status = "exact"
    return ArrowNorm(
        value=value,
        status=status,
        attained_at=attained,
        b=b,
        term_exponents=tuple(None if t.is_zero else -t.v for t in terms),
        tail_exponent=tail,
    )


def inverse_frobenius_sandwich(a: ArrowElt, b) -> dict:
    """Both inequalities tying |x|_{W,b} to the shifted element, for b >= 1:

        max(|x_1|, p**-b * |Fi(x)|_{W,b/p} ** p)
            <= |x|_{W,b} <=
        max(|x_1|, |Fi(x)|_{W,b/p} ** p)

    where Fi is the inverse Frobenius and x_1 the level-0 component.
    """
    b = Fraction(b)
    if b < 1:
        raise BOutOfRange(f"the sandwich needs b >= 1, got {b}")
    p = a.ring.p
    head = witt_norm(a.levels[0])
    full = arrow_norm(a, b)
    shifted = arrow_norm(inverse_frobenius(a), Fraction(b, p))
    powered = shifted.value.pow(p)
    lower = norm_max([head, powered.scale_exponent(b)])
    upper = norm_max([head, powered])
    return {
        "b": str(b),
        "value_exponent": None if full.value.is_zero else str(-full.value.v),
        "lower_exponent": None if lower.is_zero else str(-lower.v),
        "upper_exponent": None if upper.is_zero else str(-upper.v),
        "lower_holds": lower <= full.value,
        "upper_holds": full.value <= upper,
        "value_status": full.status,
        "shifted_status": shifted.status,
        "passed": lower <= full.value <= upper,
    }


def _reinterpret(ring: Ring, target: Ring, c: Any) -> Any:
    """Value-preserving lift of a truncated element into a ring with one more
    digit; the lifted element is a *chosen* representative, hence exact."""
    if isinstance(ring, ZModPM) and isinstance(target, ZModPM):
        return target.make(c.value)
    if isinstance(ring, CycloModPM) and isinstance(target, CycloModPM):
        return target.make(c.coeffs)
    raise CapabilityMissing(f"no digit lift from {ring.kind} to {target.kind}")


def lift_arrow_precision(a: ArrowElt, N: int, check: bool = True) -> ArrowElt:
    """Rebuild levels 0..N at one more digit of base precision.

    Requires depth >= N + m + 2 where p**m is the base modulus: level n of the
    result is F**(m+1) applied to the digit-lift of stored level n + m + 2,
    restricted to length n+1.  Coherence of the result is exact, because the
    lift ambiguity p**m * delta is killed by a single extra Frobenius.
    """
    ring = a.ring
    if not isinstance(ring, (ZModPM, CycloModPM)):
        raise CapabilityMissing("precision lifting needs a truncated base ring")
    m = ring.M
    if a.depth < N + m + 2:
        raise InsufficientDepth(
            f"lifting to depth {N} at base modulus exponent {m} needs stored "
            f"depth >= {N + m + 2}, got {a.depth}"
        )
    target = ring.with_precision(m + 1)
    new_levels = []
    for n in range(N + 1):
        src = a.levels[n + m + 2]
        lifted = WittVec(target, tuple(_reinterpret(ring, target, c) for c in src.components))
        pushed = frobenius_iter(lifted, m + 1)
        new_levels.append(restrict(pushed, n))
    result = make_arrow(target, new_levels, tail_bound=_integral_tail_bound(target))
    if check:
        for n in range(N + 1):
            back = WittVec(
                ring,
                tuple(
                    _reinterpret(target, ring, target.truncate(c, m))
                    for c in result.levels[n].components
                ),
            )
            if not witt_eq(back, a.levels[n]):
                raise IntegralityViolation(
                    f"precision lift does not reduce to the original at level {n}"
                )
    return result


def map_components(
    a: ArrowElt,
    target: Ring,
    fn: Callable[[Any], Any],
    tail_bound: Optional[NormValue] = None,
    validate: bool = True,
) -> ArrowElt:
    levels = tuple(WittVec(target, tuple(fn(c) for c in z.components)) for z in a.levels)
    return make_arrow(target, levels, tail_bound=tail_bound, validate=validate)


def sample_coherent(ring: Ring, depth: int, draw: Callable[[], Any]) -> ArrowElt:
    """A random coherent element: draw a top level, then push down with F."""
    top = WittVec(ring, tuple(draw() for _ in range(depth + 1)))
    levels: List[WittVec] = [top]
    for _ in range(depth):
        levels.append(frobenius(levels[-1]))
    levels.reverse()
    return make_arrow(ring, levels, tail_bound=_integral_tail_bound(ring))


def rigidity_profile(a: ArrowElt) -> List[bool]:
    """Check |z_{i+1,1} - z_{i,1}| <= p**-(N-i): first components of a
    coherent family agree to p-power precision increasing with distance from
    the top level."""
    ring, N = a.ring, a.depth
    out = []
    for i in range(N):
        diff = ring.sub(a.levels[i + 1].components[0], a.levels[i].components[0])
        out.append(ring.seminorm(diff) <= NormValue.from_exponent(N - i))
    return out


def arrow_to_json(a: ArrowElt) -> dict:
    return {
        "ring": a.ring.to_config(),
        "levels": [witt_to_json(z)["components"] for z in a.levels],
        "tail_bound_exponent": None
        if a.tail_bound is None or a.tail_bound.is_zero
        else str(a.tail_bound.v),
    }
