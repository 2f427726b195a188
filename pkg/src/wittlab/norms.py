"""Exact norm values of the form p**(-v) with v a rational number or +infinity.

A norm value never stores p itself and never touches floating point: all
comparisons, products, and powers happen on the exponent v, which is a
`Fraction`.  The additive convention is

    value = p**(-v),   v = None  <=>  value = 0  (v = +infinity).

Larger norm means smaller v, so the comparison operators below are reversed
relative to the exponent order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import WittError

RatLike = Union[int, Fraction]


@dataclass(frozen=True, order=False)
class NormValue:
    """An element of p**Q united with 0, ordered as a norm."""

    v: Optional[Fraction]  # None encodes +infinity, i.e. the norm value 0

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_exponent(v: RatLike) -> "NormValue":
        return NormValue(Fraction(v))

    @staticmethod
    def zero() -> "NormValue":
        return NormValue(None)

    @staticmethod
    def one() -> "NormValue":
        return NormValue(Fraction(0))

    @staticmethod
    def p_power(e: RatLike) -> "NormValue":
        """The norm value p**e (so the stored exponent is -e)."""
        return NormValue(-Fraction(e))

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.v is None

    # -- arithmetic --------------------------------------------------------

    def mul(self, other: "NormValue") -> "NormValue":
        if self.v is None or other.v is None:
            return NormValue(None)
        return NormValue(self.v + other.v)

    def pow(self, r: RatLike) -> "NormValue":
        r = Fraction(r)
        if self.v is None:
            if r <= 0:
                raise WittError("0 cannot be raised to a non-positive power")
            return NormValue(None)
        return NormValue(self.v * r)

    def scale_exponent(self, c: RatLike) -> "NormValue":
        """Multiply the value by p**(-c)."""
        if self.v is None:
            return self
        return NormValue(self.v + Fraction(c))

    # -- order (as norms: 0 is the minimum) --------------------------------

    def __lt__(self, other: "NormValue") -> bool:
        if self.v is None:
            return other.v is not None
        if other.v is None:
            return False
        return self.v > other.v

    def __le__(self, other: "NormValue") -> bool:
        return self == other or self < other

    def __gt__(self, other: "NormValue") -> bool:
        return other < self

    def __ge__(self, other: "NormValue") -> bool:
        return other <= self

    def __repr__(self) -> str:
        if self.v is None:
            return "|0|"
        if self.v == 0:
            return "p^0"
        return f"p^({-self.v})"


def norm_max(values: Iterable[NormValue]) -> NormValue:
    """Supremum of finitely many norm values (0 if the iterable is empty)."""
    best = NormValue.zero()
    for val in values:
        if best < val:
            best = val
    return best


def norm_min(values: Iterable[NormValue]) -> NormValue:
    vals = list(values)
    if not vals:
        raise WittError("minimum of an empty family of norm values")
    best = vals[0]
    for val in vals[1:]:
        if val < best:
            best = val
    return best
