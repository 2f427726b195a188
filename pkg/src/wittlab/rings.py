"""Base coefficient rings.

Everything downstream manipulates ring elements only through the `Ring`
interface, so vectors never need to know whether a component is an `int`, a
`Fraction`, a truncated residue, or a cyclotomic coefficient vector.  A ring
instance fixes the prime p once; the prime is part of the ring, not of the
element.

Capability flags drive dispatch:

  * `char_p`            -- p = 0 in the ring (componentwise Frobenius etc.)
  * `q_algebra`         -- division by p is exact and total
  * `p_torsion_free`    -- multiplication by p is injective
  * `truncated`         -- elements carry a finite digit budget

Truncated rings use per-element precision: an element "known mod p**k" records
k, binary operations take the minimum of the budgets, exact division by p
costs one digit, and p-power maps a -> a**(p**l) gain l digits (a value known
mod p**k determines its p**l-th power mod p**(k+l)).  Operations raise
`PrecisionExhausted` rather than produce an element with no digits at all.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional, Tuple

from .errors import (
    CapabilityMissing,
    IntegralityViolation,
    MalformedConfig,
    NotDivisible,
    PrecisionExhausted,
    RingMismatch,
)
from .norms import NormValue


def check_prime(p: int) -> int:
    if not isinstance(p, int) or p < 2:
        raise MalformedConfig(f"p must be an integer >= 2, got {p!r}")
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise MalformedConfig(f"p must be prime, got {p} = {d}*{p // d}")
        d += 1
    return p


def vp_int(n: int, p: int) -> Optional[int]:
    """p-adic valuation of an integer, None for 0."""
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_fraction(q: Fraction, p: int) -> Optional[int]:
    if q == 0:
        return None
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


class Ring(ABC):
    """Abstract coefficient ring at a fixed prime p."""

    p: int
    kind: str = "abstract"
    char_p: bool = False
    q_algebra: bool = False
    p_torsion_free: bool = True
    truncated: bool = False
    multiplicative_norm: bool = False
    power_multiplicative_norm: bool = False

    # -- element constructors ---------------------------------------------

    @abstractmethod
    def from_int(self, n: int) -> Any: ...

    def zero(self) -> Any:
        return self.from_int(0)

    def one(self) -> Any:
        return self.from_int(1)

    # -- arithmetic ---------------------------------------------------------

    @abstractmethod
    def add(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def neg(self, a: Any) -> Any: ...

    @abstractmethod
    def mul(self, a: Any, b: Any) -> Any: ...

    def sub(self, a: Any, b: Any) -> Any:
        return self.add(a, self.neg(b))

    def pow_(self, a: Any, n: int) -> Any:
        if n < 0:
            raise CapabilityMissing(f"{self.kind}: negative powers not supported")
        result = self.one()
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def pow_p_tower(self, a: Any, l: int) -> Any:
        """a ** (p ** l); truncated rings override this to gain l digits."""
        return self.pow_(a, self.p ** l)

    @abstractmethod
    def eq(self, a: Any, b: Any) -> bool: ...

    def is_zero(self, a: Any) -> bool:
        return self.eq(a, self.zero())

    # -- p-structure ---------------------------------------------------------

    @abstractmethod
    def seminorm(self, a: Any) -> NormValue: ...

    def exact_divide_by_p(self, a: Any) -> Any:
        raise CapabilityMissing(f"{self.kind}: exact division by p not supported")

    def pth_root_mod_p(self, a: Any) -> Any:
        raise CapabilityMissing(f"{self.kind}: p-th roots mod p not supported")

    # -- torsion-free cover (for ghost transport) ----------------------------

    def cover_ring(self) -> "Ring":
        if self.q_algebra:
            return self
        raise CapabilityMissing(f"{self.kind}: no p-torsion-free cover available")

    def lift_to_cover(self, a: Any) -> Any:
        if self.q_algebra:
            return a
        raise CapabilityMissing(f"{self.kind}: no p-torsion-free cover available")

    def reduce_from_cover(self, a: Any, prec: Optional[int] = None) -> Any:
        if self.q_algebra:
            return a
        raise CapabilityMissing(f"{self.kind}: no p-torsion-free cover available")

    # -- precision bookkeeping (trivial unless truncated) ---------------------

    def precision_of(self, a: Any) -> Optional[int]:
        return None

    def truncate(self, a: Any, k: int) -> Any:
        return a

    # -- formatting / serialization -------------------------------------------

    @abstractmethod
    def format_elt(self, a: Any) -> str: ...

    @abstractmethod
    def parse_elt(self, text: str) -> Any: ...

    def elt_to_json(self, a: Any) -> Any:
        return self.format_elt(a)

    def elt_from_json(self, value: Any) -> Any:
        return self.parse_elt(str(value))

    def to_config(self) -> dict:
        return {"kind": self.kind, "p": self.p}

    def same_ring(self, other: "Ring") -> bool:
        return self.to_config() == other.to_config()

    def require_same(self, other: "Ring") -> None:
        if not self.same_ring(other):
            raise RingMismatch(
                f"operands live in different rings: {self.to_config()} vs {other.to_config()}"
            )

    def __repr__(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.to_config().items() if k != "kind")
        return f"{self.kind}({params})"


class Integers(Ring):
    """The ring of integers, with the p-adic seminorm for the chosen p."""

    kind = "Z"
    p_torsion_free = True
    multiplicative_norm = True
    power_multiplicative_norm = True

    def __init__(self, p: int):
        self.p = check_prime(p)

    def from_int(self, n: int) -> int:
        return int(n)

    def add(self, a: int, b: int) -> int:
        return a + b

    def neg(self, a: int) -> int:
        return -a

    def mul(self, a: int, b: int) -> int:
        return a * b

    def eq(self, a: int, b: int) -> bool:
        return a == b

    def seminorm(self, a: int) -> NormValue:
        v = vp_int(a, self.p)
        return NormValue.zero() if v is None else NormValue.from_exponent(v)

    def exact_divide_by_p(self, a: int) -> int:
        if a % self.p:
            raise NotDivisible(f"{a} is not divisible by {self.p}")
        return a // self.p

    def pth_root_mod_p(self, a: int) -> int:
        # Fermat: a itself is a p-th root of a modulo p; pick the canonical
        # residue as the returned representative.
        return a % self.p

    def cover_ring(self) -> "Ring":
        return Rationals(self.p)

    def lift_to_cover(self, a: int) -> Fraction:
        return Fraction(a)

    def reduce_from_cover(self, a: Fraction, prec: Optional[int] = None) -> int:
        if a.denominator != 1:
            raise IntegralityViolation(f"expected an integer, got {a}")
        return int(a)

    def format_elt(self, a: int) -> str:
        return str(a)

    def parse_elt(self, text: str) -> int:
        try:
            return int(text.strip())
        except ValueError as exc:
            raise MalformedConfig(f"not an integer: {text!r}") from exc


class Rationals(Ring):
    """The rational numbers, with the p-adic seminorm for the chosen p."""

    kind = "Q"
    q_algebra = True
    p_torsion_free = True
    multiplicative_norm = True
    power_multiplicative_norm = True

    def __init__(self, p: int):
        self.p = check_prime(p)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def eq(self, a: Fraction, b: Fraction) -> bool:
        return a == b

    def seminorm(self, a: Fraction) -> NormValue:
        v = vp_fraction(a, self.p)
        return NormValue.zero() if v is None else NormValue.from_exponent(v)

    def exact_divide_by_p(self, a: Fraction) -> Fraction:
        return a / self.p

    def format_elt(self, a: Fraction) -> str:
        return str(a)

    def parse_elt(self, text: str) -> Fraction:
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedConfig(f"not a rational number: {text!r}") from exc


@dataclass(frozen=True)
class TruncInt:
    """A residue known modulo p**prec, stored canonically in [0, p**prec)."""

    value: int
    prec: int


class ZModPM(Ring):
    """The quotient Z / p**M with per-element precision tracking.

    Fresh elements carry the full budget M.  The seminorm is the quotient
    seminorm p**(-v) of the canonical lift; the class of 0 has seminorm 0.
    This ring has p-torsion, so Witt operations over it transport through the
    rational cover and reduce back at the minimum input precision.
    """

    kind = "Zmod"
    p_torsion_free = False
    truncated = True

    def __init__(self, p: int, M: int):
        self.p = check_prime(p)
        if not isinstance(M, int) or M < 1:
            raise MalformedConfig(f"modulus exponent M must be a positive integer, got {M!r}")
        self.M = M

    def to_config(self) -> dict:
        return {"kind": self.kind, "p": self.p, "M": self.M}

    def with_precision(self, M: int) -> "ZModPM":
        return ZModPM(self.p, M)

    def make(self, value: int, prec: Optional[int] = None) -> TruncInt:
        if prec is None:
            prec = self.M
        if prec < 1:
            raise PrecisionExhausted("cannot build a residue with no significant digits")
        if prec > self.M:
            raise MalformedConfig(f"precision {prec} exceeds ring modulus exponent {self.M}")
        return TruncInt(value % self.p ** prec, prec)

    def from_int(self, n: int) -> TruncInt:
        return self.make(n, self.M)

    def _join(self, a: TruncInt, b: TruncInt) -> int:
        return min(a.prec, b.prec)

    def add(self, a: TruncInt, b: TruncInt) -> TruncInt:
        k = self._join(a, b)
        return self.make(a.value + b.value, k)

    def neg(self, a: TruncInt) -> TruncInt:
        return self.make(-a.value, a.prec)

    def mul(self, a: TruncInt, b: TruncInt) -> TruncInt:
        k = self._join(a, b)
        return self.make(a.value * b.value, k)

    def pow_(self, a: TruncInt, n: int) -> TruncInt:
        if n < 0:
            raise CapabilityMissing("Zmod: negative powers not supported")
        if n == 0:
            return self.make(1, self.M)
        return self.make(pow(a.value, n, self.p ** a.prec), a.prec)

    def pow_p_tower(self, a: TruncInt, l: int) -> TruncInt:
        """a ** (p**l), gaining l digits (capped at M)."""
        if l < 0:
            raise CapabilityMissing("Zmod: negative Frobenius powers not supported")
        k = min(a.prec + l, self.M)
        return self.make(pow(a.value, self.p ** l, self.p ** k), k)

    def eq(self, a: TruncInt, b: TruncInt) -> bool:
        k = self._join(a, b)
        return (a.value - b.value) % self.p ** k == 0

    def is_zero(self, a: TruncInt) -> bool:
        return a.value == 0

    def seminorm(self, a: TruncInt) -> NormValue:
        v = vp_int(a.value, self.p)
        return NormValue.zero() if v is None else NormValue.from_exponent(v)

    def exact_divide_by_p(self, a: TruncInt) -> TruncInt:
        if a.value % self.p:
            raise NotDivisible(
                f"{a.value} is not divisible by {self.p} (mod {self.p}^{a.prec})"
            )
        if a.prec - 1 < 1:
            raise PrecisionExhausted(
                "dividing by p would leave no significant digits"
            )
        return TruncInt(a.value // self.p, a.prec - 1)

    def pth_root_mod_p(self, a: TruncInt) -> TruncInt:
        # The canonical residue of a mod p is itself a p-th root of a mod p.
        return self.make(a.value % self.p, self.M)

    def cover_ring(self) -> Ring:
        return Rationals(self.p)

    def lift_to_cover(self, a: TruncInt) -> Fraction:
        return Fraction(a.value)

    def reduce_from_cover(self, a: Fraction, prec: Optional[int] = None) -> TruncInt:
        if a.denominator != 1:
            raise IntegralityViolation(f"expected an integer, got {a}")
        return self.make(int(a), self.M if prec is None else prec)

    def precision_of(self, a: TruncInt) -> int:
        return a.prec

    def truncate(self, a: TruncInt, k: int) -> TruncInt:
        if k >= a.prec:
            return a
        return self.make(a.value, k)

    def format_elt(self, a: TruncInt) -> str:
        if a.prec == self.M:
            return str(a.value)
        return f"{a.value}~{a.prec}"

    def parse_elt(self, text: str) -> TruncInt:
        text = text.strip()
        try:
            if "~" in text:
                value, prec = text.split("~", 1)
                return self.make(int(value), int(prec))
            return self.make(int(text))
        except (ValueError, PrecisionExhausted) as exc:
            raise MalformedConfig(f"not a truncated residue: {text!r}") from exc

    def elt_to_json(self, a: TruncInt) -> Any:
        if a.prec == self.M:
            return a.value
        return {"value": a.value, "prec": a.prec}

    def elt_from_json(self, value: Any) -> TruncInt:
        if isinstance(value, dict):
            return self.make(int(value["value"]), int(value["prec"]))
        return self.make(int(value))
