"""Independent reimplementations used as oracles by the tests.

Everything here is computed from first principles (direct formulas, trial
division, convolution, determinants) so the package never checks itself.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple


def naive_ghost(p: int, components: Sequence) -> Tuple:
    """w_m = sum_{i <= m} p^i * x_i^(p^(m-i)) computed with plain powers."""
    out = []
    for m in range(len(components)):
        acc = 0
        for i in range(m + 1):
            acc += p**i * components[i] ** (p ** (m - i))
        out.append(acc)
    return tuple(out)


def naive_unghost(p: int, ws: Sequence) -> Tuple[Fraction, ...]:
    """Solve the ghost equations top-down; exact over the rationals."""
    xs: List[Fraction] = []
    for m, w in enumerate(ws):
        acc = Fraction(w)
        for i in range(m):
            acc -= p**i * xs[i] ** (p ** (m - i))
        xs.append(acc / p**m)
    return tuple(xs)


def vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_fraction(q: Fraction, p: int) -> int:
    q = Fraction(q)
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


def conv_reduce(a: Sequence, b: Sequence, p: int, k: int) -> List:
    """Multiply coefficient vectors in Q[x]/Phi_{p^k}(x) by convolution,
    then eliminate degrees >= e with x^e = -(1 + x^s + ... + x^((p-2)s)) * x^(e-(p-1)s)
    where s = p^(k-1), i.e. the relation sum_{i<p} x^(i*s) = 0 shifted up."""
    s = p ** (k - 1)
    e = s * (p - 1)
    out = [Fraction(0)] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += Fraction(x) * Fraction(y)
    for idx in range(len(out) - 1, e - 1, -1):
        c = out[idx]
        if c:
            out[idx] = Fraction(0)
            for i in range(p - 1):
                out[idx - e + i * s] -= c
    return out[:e]


def conv_reduce_int(a: Sequence[int], b: Sequence[int], p: int, k: int, q: int) -> List[int]:
    return [int(c) % q for c in conv_reduce(a, b, p, k)]


def gauss_mul(a: Tuple[Fraction, Fraction], b: Tuple[Fraction, Fraction]):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _det_fraction(matrix: List[List[Fraction]]) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return det


def cyclotomic_field_norm(coeffs: Sequence, p: int, k: int) -> Fraction:
    """N_{K/Q}(x) as the determinant of multiplication by x in the power
    basis of Q(zeta_{p^k}); independent of the package's arithmetic."""
    e = p ** (k - 1) * (p - 1)
    columns = []
    for i in range(e):
        basis_vec = [Fraction(0)] * e
        basis_vec[i] = Fraction(1)
        columns.append(conv_reduce(list(coeffs), basis_vec, p, k))
    matrix = [[columns[j][i] for j in range(e)] for i in range(e)]
    return _det_fraction(matrix)


def cyclotomic_valuation(coeffs: Sequence, p: int, k: int) -> Fraction:
    """v_p extended to Q(zeta_{p^k}), normalized so v(p) = 1: the extension
    is totally ramified at p, so v(x) = v_p(N(x)) / e."""
    e = p ** (k - 1) * (p - 1)
    norm = cyclotomic_field_norm(coeffs, p, k)
    if norm == 0:
        raise ValueError("valuation of zero is infinite")
    return Fraction(vp_fraction(norm, p), e)
