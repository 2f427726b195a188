"""Finite-depth perfections of polynomial rings over F_p.

``PerfPolyRing(p, nvars, depth)`` models the subring of
F_p[x_0**(1/p**oo), ..., x_{nvars-1}**(1/p**oo)] spanned by monomials whose
exponents have denominator dividing p**depth.  Exponents are stored as
integers in units of 1/p**depth, so all arithmetic is exact.

The ring has characteristic p.  x -> x**p is injective (the ring is a domain)
and exponent-doubling, so p-th roots exist exactly when every stored exponent
is divisible by p; at the depth boundary the root operation fails rather than
silently extending the depth.  The seminorm is p**(deg f) with deg the total
degree, which is multiplicative and takes negative exponent values; it models
a Gauss norm with radius > 1, so this ring is the stock example of unbounded
growth for overconvergence checks.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, Optional, Sequence, Tuple

from .errors import (
    CapabilityMissing,
    DepthExceeded,
    MalformedConfig,
    NoRoot,
)
from .norms import NormValue
from .rings import Ring, check_prime

Monomial = Tuple[int, ...]
PPoly = Tuple[Tuple[Monomial, int], ...]


class PerfPolyRing(Ring):
    kind = "PerfPoly"
    char_p = True
    q_algebra = False
    p_torsion_free = False
    truncated = False
    multiplicative_norm = True
    power_multiplicative_norm = True

    def __init__(self, p: int, nvars: int, depth: int):
        self.p = check_prime(p)
        if nvars < 1:
            raise MalformedConfig(f"need at least one variable, got {nvars}")
        if depth < 0:
            raise MalformedConfig(f"depth must be >= 0, got {depth}")
        self.nvars = nvars
        self.depth = depth
        self.unit = p ** depth  # stored exponents are multiples of 1/unit

    def to_config(self) -> dict:
        return {"kind": self.kind, "p": self.p, "nvars": self.nvars, "depth": self.depth}

    # -- construction ---------------------------------------------------------

    def _canon(self, terms: Dict[Monomial, int]) -> PPoly:
        out = []
        for mono, c in terms.items():
            c %= self.p
            if c:
                out.append((mono, c))
        out.sort()
        return tuple(out)

    def from_int(self, n: int) -> PPoly:
        return self._canon({(0,) * self.nvars: n})

    def monomial(self, exponents: Sequence, coeff: int = 1) -> PPoly:
        if len(exponents) != self.nvars:
            raise MalformedConfig(
                f"expected {self.nvars} exponents, got {len(exponents)}"
            )
        mono = []
        for q in exponents:
            q = Fraction(q)
            scaled = q * self.unit
            if scaled.denominator != 1 or scaled < 0:
                raise DepthExceeded(
                    f"exponent {q} is not a multiple of 1/{self.p}^{self.depth}"
                )
            mono.append(int(scaled))
        return self._canon({tuple(mono): coeff})

    def exponents_of(self, mono: Monomial) -> Tuple[Fraction, ...]:
        return tuple(Fraction(m, self.unit) for m in mono)

    # -- arithmetic --------------------------------------------------------------

    def add(self, a: PPoly, b: PPoly) -> PPoly:
        terms: Dict[Monomial, int] = dict(a)
        for mono, c in b:
            terms[mono] = terms.get(mono, 0) + c
        return self._canon(terms)

    def neg(self, a: PPoly) -> PPoly:
        return tuple((mono, self.p - c) for mono, c in a)

    def mul(self, a: PPoly, b: PPoly) -> PPoly:
        terms: Dict[Monomial, int] = {}
        for ma, ca in a:
            for mb, cb in b:
                key = tuple(x + y for x, y in zip(ma, mb))
                terms[key] = terms.get(key, 0) + ca * cb
        return self._canon(terms)

    def eq(self, a: PPoly, b: PPoly) -> bool:
        return a == b

    def is_zero(self, a: PPoly) -> bool:
        return not a

    # -- p-structure ----------------------------------------------------------------

    def frobenius_elt(self, a: PPoly) -> PPoly:
        """x -> x**p: multiplies exponents by p, fixes F_p coefficients."""
        return tuple((tuple(self.p * m for m in mono), c) for mono, c in a)

    def pth_root(self, a: PPoly) -> PPoly:
        """Inverse of x -> x**p; fails at the depth boundary."""
        out = []
        for mono, c in a:
            if any(m % self.p for m in mono):
                exps = self.exponents_of(mono)
                raise NoRoot(
                    f"monomial with exponents {exps} has no p-th root at depth {self.depth}"
                )
            out.append((tuple(m // self.p for m in mono), c))
        return tuple(out)

    def pth_root_mod_p(self, a: PPoly) -> PPoly:
        return self.pth_root(a)

    def pow_p_tower(self, a: PPoly, l: int) -> PPoly:
        result = a
        for _ in range(l):
            result = self.frobenius_elt(result)
        return result

    def degree(self, a: PPoly) -> Optional[Fraction]:
        if not a:
            return None
        return max(Fraction(sum(mono), self.unit) for mono, _ in a)

    def seminorm(self, a: PPoly) -> NormValue:
        d = self.degree(a)
        return NormValue.zero() if d is None else NormValue.p_power(d)

    def exact_divide_by_p(self, a: PPoly) -> PPoly:
        raise CapabilityMissing("PerfPoly has characteristic p; division by p is undefined")

    # -- formatting --------------------------------------------------------------------

    def _var_name(self, i: int) -> str:
        return f"x{i}" if self.nvars > 1 else "x"

    def format_elt(self, a: PPoly) -> str:
        if not a:
            return "0"
        parts = []
        for mono, c in a:
            factors = [] if c == 1 and any(mono) else [str(c)]
            for i, m in enumerate(mono):
                if m:
                    q = Fraction(m, self.unit)
                    factors.append(
                        self._var_name(i) if q == 1 else f"{self._var_name(i)}^({q})"
                    )
            parts.append("*".join(factors) if factors else str(c))
        return " + ".join(parts)

    def parse_elt(self, text: str) -> PPoly:
        total = self.from_int(0)
        for raw in text.replace("-", "+-").split("+"):
            term = raw.strip()
            if not term:
                continue
            negate = term.startswith("-")
            if negate:
                term = term[1:].strip()
            coeff = 1
            exps = [Fraction(0)] * self.nvars
            try:
                for factor in term.split("*"):
                    factor = factor.strip()
                    if not factor:
                        raise MalformedConfig(f"empty factor in {raw!r}")
                    if factor[0] == "x":
                        name, _, power = factor.partition("^")
                        idx = int(name[1:]) if len(name) > 1 else 0
                        if not 0 <= idx < self.nvars:
                            raise MalformedConfig(f"unknown variable {name!r}")
                        exps[idx] += Fraction(power.strip("()")) if power else 1
                    else:
                        coeff *= int(factor)
            except ValueError as exc:
                raise MalformedConfig(f"bad term {raw!r} in {text!r}") from exc
            if negate:
                coeff = -coeff
            total = self.add(total, self.monomial(exps, coeff))
        return total

    def elt_to_json(self, a: PPoly) -> Any:
        return [[list(mono), c] for mono, c in a]

    def elt_from_json(self, value: Any) -> PPoly:
        if isinstance(value, str):
            return self.parse_elt(value)
        terms = {tuple(int(m) for m in mono): int(c) for mono, c in value}
        return self._canon(terms)
