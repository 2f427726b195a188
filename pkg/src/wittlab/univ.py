"""Universal structure polynomials for length-(n+1) vectors at a prime p.

The components of a vector are indexed by p-power subscripts
x_1, x_p, ..., x_{p**n}.  The ghost map sends such a vector to

    w_{p**m} = sum_{i <= m} p**i * x_{p**i} ** (p**(m-i)),   m = 0..n,

and every ring operation is defined by transporting through ghost
coordinates.  Over Q the transport can be inverted degree by degree:

    s_m = (phi_m - sum_{i<m} p**i * s_i ** (p**(m-i))) / p**m,

and the classical integrality statement says the resulting polynomials have
integer coefficients.  We compute them exactly over Q and *assert* the
integrality, so a bug in the recursion cannot slip through as a silently
wrong denominator.

Polynomials are built once per (p, index, kind) and cached.  The cached range
is deliberately small (index <= 3 for p = 2, index <= 2 otherwise); vectors
longer than the cached range are handled by ghost transport in the callers,
not here.

Kinds:
  * ``sum``, ``prod``  -- binary, in x-variables then y-variables;
  * ``neg``            -- unary (needed for p = 2; odd p negates componentwise);
  * ``frob``           -- component m of the Frobenius, in x_1..x_{p**(m+1)};
  * ``frob_f``         -- the carry term f_{p**m} in the decomposition
                          F_m = x_{p**m}**p + p*x_{p**(m+1)} + p*f_{p**m},
                          which involves only x_1..x_{p**m}.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Sequence, Tuple

from .errors import CapabilityMissing, IntegralityViolation, MalformedConfig

Exps = Tuple[int, ...]

KINDS = ("sum", "prod", "neg", "frob", "frob_f")


def structure_cap(p: int) -> int:
    """Largest cached component index for structure polynomials at p."""
    return 3 if p == 2 else 2


class UPoly:
    """A sparse multivariate polynomial with exact coefficients.

    Treated as immutable after construction; the terms dict maps exponent
    tuples to nonzero coefficients (int or Fraction).
    """

    __slots__ = ("nvars", "terms", "_compiled")

    def __init__(self, nvars: int, terms: Dict[Exps, object] | None = None):
        self.nvars = nvars
        self.terms: Dict[Exps, object] = {}
        self._compiled = None
        if terms:
            for exps, c in terms.items():
                if c:
                    self.terms[exps] = c

    # -- constructors -----------------------------------------------------

    @staticmethod
    def constant(nvars: int, c) -> "UPoly":
        return UPoly(nvars, {(0,) * nvars: c} if c else {})

    @staticmethod
    def variable(nvars: int, idx: int, power: int = 1) -> "UPoly":
        exps = [0] * nvars
        exps[idx] = power
        return UPoly(nvars, {tuple(exps): 1})

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "UPoly") -> None:
        if self.nvars != other.nvars:
            raise MalformedConfig("polynomials over different variable sets")

    def add(self, other: "UPoly") -> "UPoly":
        self._check(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms.get(exps, 0) + c
        return UPoly(self.nvars, terms)

    def sub(self, other: "UPoly") -> "UPoly":
        return self.add(other.scale(-1))

    def scale(self, c) -> "UPoly":
        if not c:
            return UPoly(self.nvars)
        return UPoly(self.nvars, {e: q * c for e, q in self.terms.items()})

    def mul(self, other: "UPoly") -> "UPoly":
        self._check(other)
        terms: Dict[Exps, object] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                terms[key] = terms.get(key, 0) + ca * cb
        return UPoly(self.nvars, terms)

    def pow(self, n: int) -> "UPoly":
        result = UPoly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result.mul(base)
            base = base.mul(base)
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UPoly)
            and self.nvars == other.nvars
            and {e: Fraction(c) for e, c in self.terms.items()}
            == {e: Fraction(c) for e, c in other.terms.items()}
        )

    def __hash__(self):
        return hash((self.nvars, tuple(sorted((e, Fraction(c)) for e, c in self.terms.items()))))

    # -- integrality ----------------------------------------------------------

    def to_integer_poly(self) -> "UPoly":
        terms: Dict[Exps, object] = {}
        for exps, c in self.terms.items():
            q = Fraction(c)
            if q.denominator != 1:
                raise IntegralityViolation(
                    f"coefficient {q} of exponent {exps} is not an integer"
                )
            terms[exps] = int(q)
        return UPoly(self.nvars, terms)

    def uses_variable(self, idx: int) -> bool:
        return any(exps[idx] for exps in self.terms)

    def weighted_degrees(self, weights: Sequence[int]) -> List[int]:
        return sorted({sum(w * e for w, e in zip(weights, exps)) for exps in self.terms})

    # -- evaluation ---------------------------------------------------------------

    def evaluate(self, ring, values: Sequence) -> object:
        """Evaluate with ring arithmetic (coefficients through ring.from_int)."""
        if len(values) != self.nvars:
            raise MalformedConfig(f"expected {self.nvars} values, got {len(values)}")
        acc = ring.zero()
        for exps, c in sorted(self.terms.items()):
            if int(c) != c:
                raise IntegralityViolation(
                    f"cannot evaluate non-integer coefficient {c} in a ring"
                )
            term = ring.from_int(int(c))
            for v, e in zip(values, exps):
                if e:
                    term = ring.mul(term, ring.pow_(v, e))
            acc = ring.add(acc, term)
        return acc

    def compiled(self) -> Callable[[Sequence], object]:
        """A fast evaluator for numeric (int / Fraction) inputs."""
        if self._compiled is None:
            if not self.terms:
                self._compiled = lambda v: 0
            else:
                parts = []
                for exps, c in sorted(self.terms.items()):
                    factors = [str(int(c))]
                    for i, e in enumerate(exps):
                        if e == 1:
                            factors.append(f"v[{i}]")
                        elif e > 1:
                            factors.append(f"v[{i}]**{e}")
                    parts.append("*".join(factors))
                src = "def _eval(v):\n    return " + " + ".join(parts) + "\n"
                ns: dict = {}
                exec(src, ns)  # noqa: S102 - source is generated from trusted terms
                self._compiled = ns["_eval"]
        return self._compiled

    # -- formatting -----------------------------------------------------------------

    def canonical_str(self, labels: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in sorted(self.terms.items()):
            factors = [str(int(c))]
            for lab, e in zip(labels, exps):
                if e == 1:
                    factors.append(lab)
                elif e > 1:
                    factors.append(f"{lab}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"UPoly({self.nvars}, {len(self.terms)} terms)"


def ghost_poly(p: int, m: int, nvars: int, offset: int = 0) -> UPoly:
    """w_{p**m} as a polynomial in variables offset..offset+m."""
    acc = UPoly(nvars)
    for i in range(m + 1):
        acc = acc.add(UPoly.variable(nvars, offset + i, p ** (m - i)).scale(p ** i))
    return acc


def _unghost_step(p: int, m: int, phi_m: UPoly, lower: Sequence[UPoly]) -> UPoly:
    """Solve w_{p**m}(s) = phi_m for s_m given s_0..s_{m-1}; asserts integrality."""
    acc = phi_m
    for i, s in enumerate(lower):
        acc = acc.sub(s.pow(p ** (m - i)).scale(p ** i))
    return acc.scale(Fraction(1, p ** m)).to_integer_poly()


@lru_cache(maxsize=None)
def structure_poly(p: int, index: int, kind: str) -> UPoly:
    """The index-th component polynomial of the requested operation at p."""
    if kind not in KINDS:
        raise MalformedConfig(f"unknown structure polynomial kind {kind!r}")
    cap = structure_cap(p)
    if index < 0 or index > cap:
        raise CapabilityMissing(
            f"structure polynomials at p={p} are cached for indices 0..{cap}, "
            f"got {index}; use ghost transport for longer vectors"
        )
    if kind in ("sum", "prod"):
        nv = 2 * (index + 1)
        lower = [structure_poly(p, i, kind) for i in range(index)]
        # reinterpret the lower polynomials over the wider variable split
        lifted = []
        for i, s in enumerate(lower):
            remap = {}
            for exps, c in s.terms.items():
                xs, ys = exps[: i + 1], exps[i + 1 :]
                key = xs + (0,) * (index - i) + ys + (0,) * (index - i)
                remap[key] = c
            lifted.append(UPoly(nv, remap))
        wx = ghost_poly(p, index, nv, offset=0)
        wy = ghost_poly(p, index, nv, offset=index + 1)
        phi = wx.add(wy) if kind == "sum" else wx.mul(wy)
        return _unghost_step(p, index, phi, lifted)
    if kind == "neg":
        nv = index + 1
        lower = []
        for i in range(index):
            s = structure_poly(p, i, kind)
            lower.append(UPoly(nv, {e + (0,) * (index - i): c for e, c in s.terms.items()}))
        phi = ghost_poly(p, index, nv).scale(-1)
        return _unghost_step(p, index, phi, lower)
    if kind == "frob":
        nv = index + 2
        lower = []
        for i in range(index):
            s = structure_poly(p, i, kind)
            lower.append(UPoly(nv, {e + (0,) * (index - i): c for e, c in s.terms.items()}))
        phi = ghost_poly(p, index + 1, nv)
        return _unghost_step(p, index, phi, lower)
    # kind == "frob_f": strip the exact part off the Frobenius component
    full = structure_poly(p, index, "frob")
    nv = index + 2
    correction = full.sub(UPoly.variable(nv, index, p)).sub(
        UPoly.variable(nv, index + 1, 1).scale(p)
    )
    f = correction.scale(Fraction(1, p)).to_integer_poly()
    if f.uses_variable(index + 1):
        raise IntegralityViolation(
            f"carry term f at p={p}, index {index} unexpectedly involves x_{{p^{index + 1}}}"
        )
    # drop the unused last variable
    return UPoly(index + 1, {e[: index + 1]: c for e, c in f.terms.items()})


def component_labels(p: int, count: int, prefix: str = "x") -> List[str]:
    return [f"{prefix}{p ** i}" for i in range(count)]


def structure_poly_labels(p: int, index: int, kind: str) -> List[str]:
    if kind in ("sum", "prod"):
        return component_labels(p, index + 1) + component_labels(p, index + 1, "y")
    if kind == "frob":
        return component_labels(p, index + 2)
    return component_labels(p, index + 1)


def canonical_dump(p: int) -> str:
    """All cached structure polynomials at p, one per line, in a stable order."""
    lines = []
    for kind in KINDS:
        for index in range(structure_cap(p) + 1):
            poly = structure_poly(p, index, kind)
            labels = structure_poly_labels(p, index, kind)
            lines.append(f"{kind}[p={p},i={index}] = {poly.canonical_str(labels)}")
    return "\n".join(lines) + "\n"
