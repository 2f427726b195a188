"""Cyclotomic and quadratic coefficient fields with exact p-adic valuations.

``CyclotomicField(p, k)`` models Q(zeta) for zeta a primitive p**k-th root of
unity.  There is a unique prime above p, totally ramified of index
e = phi(p**k), and the valuation is normalized by v(p) = 1, so v takes values
in (1/e)Z.  Elements are coefficient tuples over the power basis
1, zeta, ..., zeta**(e-1), with Fraction entries.

Valuations are computed without factoring norms: strip powers of p
coefficientwise, then read off the order in t = 1 - zeta of the mod-p residue
through the triangular change of basis between the power basis and the t-power
basis of O/p = F_p[t]/(t**e).  The same basis gives constructive p-th roots
mod p: an element is a p-th power mod p exactly when its t-support consists of
multiples of p, and dividing the exponents by p produces a root.

``CycloModPM`` is the truncation O/p**M with per-element digit budgets, and
``GaussianField`` is Q(i) with the places above a chosen p made explicit.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, List, Optional, Sequence, Tuple

from .errors import (
    CapabilityMissing,
    IntegralityViolation,
    MalformedConfig,
    NoRoot,
    NotDivisible,
    PrecisionExhausted,
)
from .norms import NormValue
from .rings import Ring, check_prime, vp_fraction, vp_int

CVec = Tuple[Fraction, ...]


def _reduce_tail(coeffs: list, e: int, p: int, step: int) -> list:
    """Rewrite powers zeta**d with d >= e in place, using the minimal
    polynomial x**e = -(1 + x**step + ... + x**((p-2)*step))."""
    for d in range(len(coeffs) - 1, e - 1, -1):
        c = coeffs[d]
        if c:
            coeffs[d] = 0
            base = d - e
            for j in range(p - 1):
                coeffs[base + j * step] -= c
    del coeffs[e:]
    return coeffs


@lru_cache(maxsize=None)
def cyclotomic_field(p: int, k: int) -> "CyclotomicField":
    return CyclotomicField(p, k)


class CyclotomicField(Ring):
    """Q(zeta_{p**k}) with the valuation at the unique prime above p."""

    kind = "Qzeta"
    q_algebra = True
    p_torsion_free = True
    multiplicative_norm = True
    power_multiplicative_norm = True

    def __init__(self, p: int, k: int):
        self.p = check_prime(p)
        if not isinstance(k, int) or k < 1:
            raise MalformedConfig(f"conductor exponent k must be a positive integer, got {k!r}")
        self.k = k
        self.step = p ** (k - 1)
        self.e = self.step * (p - 1)  # ramification index = field degree
        self._t_matrix: Optional[List[List[int]]] = None

    def to_config(self) -> dict:
        return {"kind": self.kind, "p": self.p, "k": self.k}

    # -- construction -------------------------------------------------------

    def from_coeffs(self, coeffs: Sequence) -> CVec:
        lst = [Fraction(c) for c in coeffs]
        if len(lst) > self.e:
            _reduce_tail(lst, self.e, self.p, self.step)
        lst += [Fraction(0)] * (self.e - len(lst))
        return tuple(lst)

    def from_int(self, n: int) -> CVec:
        return self.from_coeffs([n])

    def zeta_power(self, j: int) -> CVec:
        j %= self.p ** self.k
        return self.from_coeffs([0] * j + [1])

    def zeta(self) -> CVec:
        return self.zeta_power(1)

    def uniformizer(self) -> CVec:
        """t = 1 - zeta, with v(t) = 1/e."""
        return self.sub(self.one(), self.zeta())

    # -- arithmetic ----------------------------------------------------------

    def add(self, a: CVec, b: CVec) -> CVec:
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a: CVec) -> CVec:
        return tuple(-x for x in a)

    def mul(self, a: CVec, b: CVec) -> CVec:
        out = [Fraction(0)] * (2 * self.e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        _reduce_tail(out, self.e, self.p, self.step)
        return tuple(out)

    def scalar_mul(self, q, a: CVec) -> CVec:
        q = Fraction(q)
        return tuple(q * x for x in a)

    def eq(self, a: CVec, b: CVec) -> bool:
        return a == b

    def is_zero(self, a: CVec) -> bool:
        return all(x == 0 for x in a)

    def exact_divide_by_p(self, a: CVec) -> CVec:
        return self.scalar_mul(Fraction(1, self.p), a)

    def inv(self, a: CVec) -> CVec:
        """Multiplicative inverse, by solving a * y = 1 exactly."""
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0")
        e = self.e
        # columns of the matrix are a * zeta**j over the power basis
        cols = []
        col = a
        for _ in range(e):
            cols.append(col)
            col = self.mul(col, self.zeta())
        mat = [[cols[j][i] for j in range(e)] + [Fraction(1 if i == 0 else 0)] for i in range(e)]
        for c in range(e):
            piv = next((r for r in range(c, e) if mat[r][c]), None)
            if piv is None:
                raise ZeroDivisionError("singular multiplication matrix")
            mat[c], mat[piv] = mat[piv], mat[c]
            lead = mat[c][c]
            mat[c] = [v / lead for v in mat[c]]
            for r in range(e):
                if r != c and mat[r][c]:
                    factor = mat[r][c]
                    mat[r] = [v - factor * w for v, w in zip(mat[r], mat[c])]
        return tuple(mat[i][e] for i in range(e))

    def div(self, a: CVec, b: CVec) -> CVec:
        return self.mul(a, self.inv(b))

    # -- integrality ----------------------------------------------------------

    def is_integral(self, a: CVec) -> bool:
        """Membership in Z[zeta] (denominator-free over the power basis)."""
        return all(x.denominator == 1 for x in a)

    def integral_coeffs(self, a: CVec) -> Tuple[int, ...]:
        if not self.is_integral(a):
            raise IntegralityViolation(f"element is not in Z[zeta]: {self.format_elt(a)}")
        return tuple(int(x) for x in a)

    def is_p_integral(self, a: CVec) -> bool:
        """Denominators prime to p are allowed (localization at the prime)."""
        return all(x.denominator % self.p != 0 for x in a)

    def residue_coeffs_mod_p(self, a: CVec) -> Tuple[int, ...]:
        """Canonical power-basis coefficients of a mod p, for p-integral a."""
        p = self.p
        out = []
        for x in a:
            if x.denominator % p == 0:
                raise IntegralityViolation(
                    f"element has p in a denominator: {self.format_elt(a)}"
                )
            out.append(x.numerator * pow(x.denominator, -1, p) % p)
        return tuple(out)

    # -- valuation -------------------------------------------------------------

    def _t_basis_matrix(self) -> List[List[int]]:
        """Row i holds the power-basis coefficients of (1 - zeta)**i mod p.

        The matrix is lower triangular with invertible diagonal (-1)**i, since
        (1 - zeta)**i has top power-basis degree exactly i for i < e.
        """
        if self._t_matrix is None:
            p = self.p
            rows = [[1] + [0] * (self.e - 1)]
            t = [1, p - 1] + [0] * (self.e - 2)  # 1 - zeta
            for _ in range(1, self.e):
                prev = rows[-1]
                nxt = [0] * (2 * self.e - 1)
                for i, x in enumerate(prev):
                    if x:
                        for j, y in enumerate(t):
                            if y:
                                nxt[i + j] += x * y
                _reduce_tail(nxt, self.e, p, self.step)
                rows.append([c % p for c in nxt])
            self._t_matrix = rows
        return self._t_matrix

    def to_t_basis(self, residue: Sequence[int]) -> List[int]:
        """Coordinates of a mod-p class over 1, t, ..., t**(e-1)."""
        p = self.p
        rows = self._t_basis_matrix()
        a = [c % p for c in residue]
        out = [0] * self.e
        for i in range(self.e - 1, -1, -1):
            lead = rows[i][i]
            coef = a[i] * pow(lead, -1, p) % p
            out[i] = coef
            if coef:
                row = rows[i]
                for j in range(i + 1):
                    a[j] = (a[j] - coef * row[j]) % p
        if any(a):
            raise IntegralityViolation("t-basis conversion failed to terminate")
        return out

    def from_t_basis(self, tcoeffs: Sequence[int]) -> Tuple[int, ...]:
        p = self.p
        rows = self._t_basis_matrix()
        out = [0] * self.e
        for i, c in enumerate(tcoeffs):
            if c % p:
                row = rows[i]
                for j in range(self.e):
                    out[j] = (out[j] + c * row[j]) % p
        return tuple(out)

    def t_order(self, residue: Sequence[int]) -> Optional[int]:
        """Order in t of a nonzero mod-p class; None for the zero class."""
        tco = self.to_t_basis(residue)
        for i, c in enumerate(tco):
            if c:
                return i
        return None

    def valuation(self, a: CVec) -> Optional[Fraction]:
        """v(a) in (1/e)Z, normalized with v(p) = 1; None for a = 0."""
        if self.is_zero(a):
            return None
        d = math.lcm(*(x.denominator for x in a))
        shift = -vp_int(d, self.p) if d % self.p == 0 else 0
        y = [int(x * d) for x in a]
        whole = 0
        while all(c % self.p == 0 for c in y):
            y = [c // self.p for c in y]
            whole += 1
        o = self.t_order(y)
        return Fraction(whole) + Fraction(o, self.e) + shift

    def seminorm(self, a: CVec) -> NormValue:
        v = self.valuation(a)
        return NormValue.zero() if v is None else NormValue.from_exponent(v)

    # -- roots mod p --------------------------------------------------------------

    def mod_p_root(self, a: CVec) -> CVec:
        """A p-th root of a mod p, when one exists in this field.

        The class of a is a p-th power in O/p = F_p[t]/(t**e) exactly when its
        t-support lies in pZ; the root divides every exponent by p (the
        coefficient field F_p is fixed by x -> x**p).  Raises NoRoot otherwise.
        """
        tco = self.to_t_basis(self.residue_coeffs_mod_p(a))
        root_t = [0] * self.e
        for i, c in enumerate(tco):
            if c:
                if i % self.p:
                    raise NoRoot(
                        f"t-support index {i} is not a multiple of {self.p}; "
                        "the class is not a p-th power mod p"
                    )
                root_t[i // self.p] = c
        root = self.from_coeffs(self.from_t_basis(root_t))
        diff = self.sub(self.pow_(root, self.p), a)
        if not all(vp_fraction(c, self.p) is None or vp_fraction(c, self.p) >= 1 for c in diff):
            raise IntegralityViolation("constructed mod-p root failed verification")
        return root

    def frobenius_kernel_indices(self) -> List[int]:
        """t-exponents i with p*i >= e: the mod-p classes killed by x -> x**p
        are exactly the spans of these t-powers."""
        return [i for i in range(self.e) if self.p * i >= self.e]

    # -- embeddings ------------------------------------------------------------------

    def embed(self, a: CVec, target: "CyclotomicField") -> CVec:
        if target.p != self.p or target.k < self.k:
            raise CapabilityMissing(
                f"no embedding of conductor {self.p}^{self.k} into {target.p}^{target.k}"
            )
        stretch = self.p ** (target.k - self.k)
        out = [Fraction(0)] * ((self.e - 1) * stretch + 1)
        for i, x in enumerate(a):
            out[i * stretch] = x
        return target.from_coeffs(out)

    # -- formatting ----------------------------------------------------------------------

    def format_elt(self, a: CVec) -> str:
        return "[" + ", ".join(str(x) for x in a) + "]"

    def parse_elt(self, text: str) -> CVec:
        text = text.strip()
        if text.startswith("[") and text.endswith("]"):
            text = text[1:-1]
        try:
            parts = [Fraction(s.strip()) for s in text.split(",")] if text else []
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedConfig(f"not a coefficient vector: {text!r}") from exc
        if len(parts) > self.e:
            raise MalformedConfig(
                f"coefficient vector longer than field degree {self.e}: {text!r}"
            )
        return self.from_coeffs(parts)

    def elt_to_json(self, a: CVec) -> Any:
        return [str(x) for x in a]

    def elt_from_json(self, value: Any) -> CVec:
        if isinstance(value, str):
            return self.parse_elt(value)
        return self.from_coeffs([Fraction(s) for s in value])


@dataclass(frozen=True)
class TruncVec:
    """Cyclotomic integer coefficients known modulo p**prec."""

    coeffs: Tuple[int, ...]
    prec: int


class CycloModPM(Ring):
    """Z[zeta_{p**k}] / p**M with per-element digit budgets."""

    kind = "ZzetaMod"
    p_torsion_free = False
    truncated = True

    def __init__(self, p: int, k: int, M: int):
        self.p = check_prime(p)
        if not isinstance(M, int) or M < 1:
            raise MalformedConfig(f"modulus exponent M must be a positive integer, got {M!r}")
        self.k = k
        self.M = M
        self.field = cyclotomic_field(p, k)
        self.e = self.field.e

    def to_config(self) -> dict:
        return {"kind": self.kind, "p": self.p, "k": self.k, "M": self.M}

    def with_precision(self, M: int) -> "CycloModPM":
        return CycloModPM(self.p, self.k, M)

    def make(self, coeffs: Sequence[int], prec: Optional[int] = None) -> TruncVec:
        if prec is None:
            prec = self.M
        if prec < 1:
            raise PrecisionExhausted("cannot build a residue with no significant digits")
        if prec > self.M:
            raise MalformedConfig(f"precision {prec} exceeds ring modulus exponent {self.M}")
        q = self.p ** prec
        lst = [int(c) % q for c in coeffs]
        if len(lst) > self.e:
            _reduce_tail(lst, self.e, self.p, self.field.step)
            lst = [c % q for c in lst]
        lst += [0] * (self.e - len(lst))
        return TruncVec(tuple(lst), prec)

    def from_int(self, n: int) -> TruncVec:
        return self.make([n])

    def from_field(self, a: CVec, prec: Optional[int] = None) -> TruncVec:
        return self.make(self.field.integral_coeffs(a), prec)

    def add(self, a: TruncVec, b: TruncVec) -> TruncVec:
        k = min(a.prec, b.prec)
        return self.make([x + y for x, y in zip(a.coeffs, b.coeffs)], k)

    def neg(self, a: TruncVec) -> TruncVec:
        return self.make([-x for x in a.coeffs], a.prec)

    def mul(self, a: TruncVec, b: TruncVec) -> TruncVec:
        k = min(a.prec, b.prec)
        out = [0] * (2 * self.e - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        out[i + j] += x * y
        return self.make(out, k)

    def pow_p_tower(self, a: TruncVec, l: int) -> TruncVec:
        """a ** (p**l), gaining l digits (capped at M)."""
        if l < 0:
            raise CapabilityMissing("ZzetaMod: negative Frobenius powers not supported")
        k = min(a.prec + l, self.M)
        result = self.make(a.coeffs, k)
        for _ in range(l):
            result = self.pow_(result, self.p)
        return result

    def eq(self, a: TruncVec, b: TruncVec) -> bool:
        k = min(a.prec, b.prec)
        q = self.p ** k
        return all((x - y) % q == 0 for x, y in zip(a.coeffs, b.coeffs))

    def is_zero(self, a: TruncVec) -> bool:
        return all(c == 0 for c in a.coeffs)

    def seminorm(self, a: TruncVec) -> NormValue:
        if self.is_zero(a):
            return NormValue.zero()
        v = self.field.valuation(self.field.from_coeffs(a.coeffs))
        return NormValue.from_exponent(v)

    def exact_divide_by_p(self, a: TruncVec) -> TruncVec:
        if any(c % self.p for c in a.coeffs):
            raise NotDivisible("coefficient vector is not divisible by p")
        if a.prec - 1 < 1:
            raise PrecisionExhausted("dividing by p would leave no significant digits")
        return TruncVec(tuple(c // self.p for c in a.coeffs), a.prec - 1)

    def pth_root_mod_p(self, a: TruncVec) -> TruncVec:
        root = self.field.mod_p_root(self.field.from_coeffs(a.coeffs))
        return self.make(self.field.integral_coeffs(root), self.M)

    def cover_ring(self) -> Ring:
        return self.field

    def lift_to_cover(self, a: TruncVec) -> CVec:
        return self.field.from_coeffs(a.coeffs)

    def reduce_from_cover(self, a: CVec, prec: Optional[int] = None) -> TruncVec:
        return self.make(self.field.integral_coeffs(a), self.M if prec is None else prec)

    def precision_of(self, a: TruncVec) -> int:
        return a.prec

    def truncate(self, a: TruncVec, k: int) -> TruncVec:
        if k >= a.prec:
            return a
        return self.make(a.coeffs, k)

    def format_elt(self, a: TruncVec) -> str:
        body = "[" + ", ".join(str(c) for c in a.coeffs) + "]"
        return body if a.prec == self.M else f"{body}~{a.prec}"

    def parse_elt(self, text: str) -> TruncVec:
        text = text.strip()
        prec = self.M
        if "~" in text:
            text, ptxt = text.rsplit("~", 1)
            prec = int(ptxt)
        if text.startswith("[") and text.endswith("]"):
            text = text[1:-1]
        try:
            coeffs = [int(s.strip()) for s in text.split(",")] if text.strip() else []
        except ValueError as exc:
            raise MalformedConfig(f"not an integer coefficient vector: {text!r}") from exc
        return self.make(coeffs, prec)

    def elt_to_json(self, a: TruncVec) -> Any:
        if a.prec == self.M:
            return list(a.coeffs)
        return {"coeffs": list(a.coeffs), "prec": a.prec}

    def elt_from_json(self, value: Any) -> TruncVec:
        if isinstance(value, dict):
            return self.make(value["coeffs"], int(value["prec"]))
        return self.make(value)


GVec = Tuple[Fraction, Fraction]

_SQUARE_SUM = {}


def _two_square_decomposition(p: int) -> Tuple[int, int]:
    if p not in _SQUARE_SUM:
        u = 1
        while u * u <= p:
            w2 = p - u * u
            w = math.isqrt(w2)
            if w * w == w2:
                _SQUARE_SUM[p] = (u, w)
                break
            u += 1
        else:
            raise CapabilityMissing(f"{p} is not a sum of two squares")
    return _SQUARE_SUM[p]


class GaussianField(Ring):
    """Q(i) with the sup-seminorm over the places above p.

    For p = 2 (ramified) and p = 3 mod 4 (inert) there is one place and the
    seminorm is multiplicative.  For p = 1 mod 4 the prime splits as
    p = pi * conj(pi); the seminorm is the maximum over the two places, which
    is power-multiplicative but not multiplicative.
    """

    kind = "Qi"
    q_algebra = True
    p_torsion_free = True
    power_multiplicative_norm = True

    def __init__(self, p: int):
        self.p = check_prime(p)
        self.split = p % 4 == 1
        self.multiplicative_norm = not self.split
        if self.split:
            u, w = _two_square_decomposition(p)
            self.pi = (u, w)
            self.pibar = (u, -w)

    def from_int(self, n: int) -> GVec:
        return (Fraction(n), Fraction(0))

    def from_pair(self, a, b) -> GVec:
        return (Fraction(a), Fraction(b))

    def imag_unit(self) -> GVec:
        return (Fraction(0), Fraction(1))

    def add(self, a: GVec, b: GVec) -> GVec:
        return (a[0] + b[0], a[1] + b[1])

    def neg(self, a: GVec) -> GVec:
        return (-a[0], -a[1])

    def mul(self, a: GVec, b: GVec) -> GVec:
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def eq(self, a: GVec, b: GVec) -> bool:
        return a == b

    def exact_divide_by_p(self, a: GVec) -> GVec:
        return (a[0] / self.p, a[1] / self.p)

    @staticmethod
    def _divide_out(z: Tuple[int, int], piv: Tuple[int, int], p: int) -> int:
        count = 0
        x, y = z
        u, w = piv
        while x or y:
            rx, ry = x * u + y * w, y * u - x * w
            if rx % p or ry % p:
                break
            x, y = rx // p, ry // p
            count += 1
        return count

    def place_valuations(self, a: GVec) -> dict:
        """Exact valuations at the places above p, None meaning +infinity."""
        if a == (0, 0) or (a[0] == 0 and a[1] == 0):
            if self.split:
                return {"pi": None, "pibar": None}
            return {"p": None}
        if not self.split:
            norm = a[0] * a[0] + a[1] * a[1]
            return {"p": Fraction(vp_fraction(norm, self.p), 2)}
        d = math.lcm(a[0].denominator, a[1].denominator)
        z = (int(a[0] * d), int(a[1] * d))
        shift = vp_int(d, self.p) if d % self.p == 0 else 0
        return {
            "pi": Fraction(self._divide_out(z, self.pi, self.p) - shift),
            "pibar": Fraction(self._divide_out(z, self.pibar, self.p) - shift),
        }

    def valuation(self, a: GVec) -> Optional[Fraction]:
        vals = [v for v in self.place_valuations(a).values()]
        if any(v is None for v in vals):
            return None
        return min(vals)

    def seminorm(self, a: GVec) -> NormValue:
        v = self.valuation(a)
        return NormValue.zero() if v is None else NormValue.from_exponent(v)

    def format_elt(self, a: GVec) -> str:
        re_, im = a
        if im == 0:
            return str(re_)
        if im == 1:
            itxt = "i"
        elif im == -1:
            itxt = "-i"
        else:
            itxt = f"{im}i"
        if re_ == 0:
            return itxt
        return f"{re_}+{itxt}" if im > 0 else f"{re_}{itxt}"

    def parse_elt(self, text: str) -> GVec:
        s = text.strip().replace(" ", "")
        if not s:
            raise MalformedConfig("empty Gaussian number")
        try:
            if "i" not in s:
                return (Fraction(s), Fraction(0))
            s = s[:-1] if s.endswith("i") else s
            if "i" in s:
                raise MalformedConfig(f"not a Gaussian number: {text!r}")
            split_at = None
            for idx in range(len(s) - 1, 0, -1):
                if s[idx] in "+-" and s[idx - 1] not in "/+-":
                    split_at = idx
                    break
            if split_at is None:
                imag = s if s not in ("", "+", "-") else s + "1"
                return (Fraction(0), Fraction(imag))
            re_txt, im_txt = s[:split_at], s[split_at:]
            if im_txt in ("+", "-"):
                im_txt += "1"
            return (Fraction(re_txt), Fraction(im_txt))
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedConfig(f"not a Gaussian number: {text!r}") from exc

    def elt_to_json(self, a: GVec) -> Any:
        return [str(a[0]), str(a[1])]

    def elt_from_json(self, value: Any) -> GVec:
        if isinstance(value, str):
            return self.parse_elt(value)
        return (Fraction(value[0]), Fraction(value[1]))


class CyclotomicTower:
    """The tower Q(zeta_{p**3}) in Q(zeta_{p**4}) in ... used for root
    sequences: level n holds the field Q(zeta_{p**(n+2)}), the smallest layer
    that carries an exact element x_n of valuation p**(-n) satisfying the
    root-sequence congruences.

    For p = 2 level 1 is Q(zeta_8), where zeta + 1/zeta is an exact square
    root of 2.  For p = 3 level 1 is Q(zeta_27): one conductor step more than
    the valuation alone requires, because Z[zeta_9] contains elements of
    valuation 1/3 but none of them cubes to 3 mod 9 (cubing residues mod 3 is
    t -> t**3 on the uniformizer basis, so unit cubes have 3-divisible
    t-support, and the unit (1 - zeta_9)**6 / 3 does not).
    """

    def __init__(self, p: int):
        self.p = check_prime(p)
        self.offset = 2

    def conductor_exponent(self, level: int) -> int:
        return level + self.offset

    def field(self, level: int) -> CyclotomicField:
        return cyclotomic_field(self.p, self.conductor_exponent(level))

    def embed_up(self, level_from: int, level_to: int, a: CVec) -> CVec:
        return self.field(level_from).embed(a, self.field(level_to))

    def check_uniformizer_purity(self, level: int) -> bool:
        """(1 - zeta_next)**p = 1 - zeta mod p, exactly: embedded classes have
        p-divisible t-support one level up, which is what makes mod-p roots
        constructive in the tower."""
        lo, hi = self.field(level), self.field(level + 1)
        s = self.embed_up(level, level + 1, lo.uniformizer())
        t_pow = hi.pow_(hi.uniformizer(), self.p)
        diff = hi.sub(s, t_pow)
        if hi.is_zero(diff):
            return True
        v = hi.valuation(diff)
        return v is not None and v >= 1
