"""Truncated power series over F_p with precision tracking.

A ``Series`` stores the coefficients it actually knows: ``c[0..prec-1]``.
Everything past ``prec`` is unknown, so a series whose known coefficients
all vanish has order "at least prec" and asking for its exact order raises
``PrecisionLoss``.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .errors import PrecisionLoss


class Series:
    __slots__ = ("c", "p", "prec")

    def __init__(self, coeffs: Iterable[int], p: int, prec: int | None = None):
        c = [int(x) % p for x in coeffs]
        if prec is None:
            prec = len(c)
        c = c[:prec] + [0] * (prec - len(c))
        self.c = c
        self.p = p
        self.prec = prec

    @classmethod
    def const(cls, a: int, p: int, prec: int) -> "Series":
        return cls([a], p, prec)

    @classmethod
    def monomial(cls, a: int, k: int, p: int, prec: int) -> "Series":
        return cls([0] * k + [a], p, prec)

    def order(self) -> int:
        """First nonzero coefficient, or ``prec`` if none is known."""
        for i, x in enumerate(self.c):
            if x:
                return i
        return self.prec

    def exact_order(self) -> int:
        v = self.order()
        if v >= self.prec:
            raise PrecisionLoss(f"series is zero to precision {self.prec}")
        return v

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not any(self.c)

    def lead(self) -> int:
        return self.c[self.exact_order()]

    def _lift(self, other) -> "Series":
        if isinstance(other, Series):
            if other.p != self.p:
                raise ValueError("series over different primes")
            return other
        return Series([other], self.p, self.prec)

    def __add__(self, other):
        o = self._lift(other)
        prec = min(self.prec, o.prec)
        return Series([a + b for a, b in zip(self.c[:prec], o.c[:prec])], self.p, prec)

    __radd__ = __add__

    def __neg__(self):
        return Series([-a for a in self.c], self.p, self.prec)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return Series([a * other for a in self.c], self.p, self.prec)
        o = self._lift(other)
        prec = min(self.prec + o.order(), o.prec + self.order())
        out = [0] * prec
        for i, a in enumerate(self.c[:prec]):
            if a:
                for j, b in enumerate(o.c[: prec - i]):
                    out[i + j] += a * b
        return Series(out, self.p, prec)

    __rmul__ = __mul__

    def shift_down(self, k: int) -> "Series":
        """Divide by t^k; the first k coefficients must be known zeros."""
        if k > self.prec or any(self.c[:k]):
            raise PrecisionLoss(f"cannot divide by t^{k}")
        return Series(self.c[k:], self.p, self.prec - k)

    def unit_inverse(self) -> "Series":
        if not self.prec or self.c[0] == 0:
            raise ZeroDivisionError("series is not a unit")
        p, n = self.p, self.prec
        inv0 = pow(self.c[0], -1, p)
        out = [inv0] + [0] * (n - 1)
        for k in range(1, n):
            s = sum(self.c[j] * out[k - j] for j in range(1, k + 1))
            out[k] = (-s * inv0) % p
        return Series(out, p, n)

    def divide(self, other: "Series") -> "Series":
        """self / other, valid when ord(self) >= ord(other)."""
        v = other.exact_order()
        return self.shift_down(v) * other.shift_down(v).unit_inverse()

    def __eq__(self, other):
        o = self._lift(other)
        prec = min(self.prec, o.prec)
        return self.c[:prec] == o.c[:prec]

    def __hash__(self):
        return hash((tuple(self.c), self.p))

    def __repr__(self):
        terms = [f"{a}" if i == 0 else f"{a}t^{i}" for i, a in enumerate(self.c) if a]
        return (" + ".join(terms) or "0") + f" + O(t^{self.prec})"


Matrix = list  # list of lists of Series


def zeros(r: int, c: int, p: int, prec: int) -> Matrix:
    return [[Series([], p, prec) for _ in range(c)] for _ in range(r)]


def identity(n: int, p: int, prec: int) -> Matrix:
    m = zeros(n, n, p, prec)
    for i in range(n):
        m[i][i] = Series.const(1, p, prec)
    return m


def matmul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = a[i][0] * b[0][j]
            for k in range(1, inner):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a: Matrix, s) -> Matrix:
    return [[x * s for x in row] for row in a]


def block(a: Matrix, rows: range, cols: range) -> Matrix:
    return [[a[i][j] for j in cols] for i in rows]


def det(m: Matrix) -> Series:
    """Determinant by full-pivot elimination over the valuation ring.

    The pivot is always an entry of least t-order, so every multiplier is
    integral.  If the remaining block is zero to known precision the result
    is a zero series whose precision records how much is known.
    """
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    p = m[0][0].p
    a = [row[:] for row in m]
    sign = 1
    acc = Series.const(1, p, max(x.prec for row in m for x in row))
    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                v = a[i][j].order()
                if v < a[i][j].prec and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            known = min(a[i][j].prec for i in range(k, n) for j in range(k, n))
            return Series([], p, acc.order() + known)
        _, i, j = best
        if i != k:
            a[i], a[k] = a[k], a[i]
            sign = -sign
        if j != k:
            for row in a:
                row[j], row[k] = row[k], row[j]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k].divide(piv)
            for j in range(k + 1, n):
                a[i][j] = a[i][j] - f * a[k][j]
        acc = acc * piv
    return acc * sign


def adjugate(m: Matrix) -> Matrix:
    """Classical adjoint via cofactors (small matrices only)."""
    n = len(m)
    p = m[0][0].p
    if n == 1:
        return [[Series.const(1, p, m[0][0].prec)]]
    out = zeros(n, n, p, 1)
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
            cof = det(minor)
            out[j][i] = cof if (i + j) % 2 == 0 else -cof
    return out


def charpoly(m: Matrix) -> list[Series]:
    """Coefficients (low to high, monic) of det(lambda - m), Faddeev-LeVerrier.

    Needs the size to be smaller than p so that 1..n are invertible.
    """
    n = len(m)
    p = m[0][0].p
    if n >= p:
        raise ValueError("matrix size must be below the characteristic")
    prec = max(x.prec for row in m for x in row)
    coeffs = [None] * (n + 1)
    coeffs[n] = Series.const(1, p, prec)
    mk = zeros(n, n, p, prec)
    for k in range(1, n + 1):
        mk = matmul(m, mk)
        for i in range(n):
            mk[i][i] = mk[i][i] + coeffs[n - k + 1]
        am = matmul(m, mk)
        tr = am[0][0]
        for i in range(1, n):
            tr = tr + am[i][i]
        coeffs[n - k] = tr * (-pow(k, -1, p) % p)
    return coeffs


def poly_at_matrix(coeffs: Sequence[Series], m: Matrix) -> Matrix:
    """Evaluate a polynomial (low to high coefficients) at a square matrix."""
    n = len(m)
    p = m[0][0].p
    prec = max(x.prec for row in m for x in row)
    out = zeros(n, n, p, prec)
    for c in reversed(coeffs):
        out = matmul(out, m)
        for i in range(n):
            out[i][i] = out[i][i] + c
    return out


def to_ints(m: Matrix) -> list[list[list[int]]]:
    return [[list(x.c) for x in row] for row in m]
