"""Independent brute-force oracles used by tests and verification sweeps.

Nothing here is clever on purpose: exact F_p[t] polynomial arithmetic with
Bareiss elimination, and a Cramer-rule solve for the section search.
"""
from __future__ import annotations

from typing import Sequence

from .series import Matrix

Poly = list  # low to high, trimmed


def trim(a: Poly) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def pneg(a: Poly, p: int) -> Poly:
    return [(-x) % p for x in a]


def psub(a: Poly, b: Poly, p: int) -> Poly:
    return padd(a, pneg(b, p), p)


def pmul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([x % p for x in out])


def pdivexact(a: Poly, b: Poly, p: int) -> Poly:
    """a / b when b divides a exactly."""
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return []
    inv = pow(b[-1], -1, p)
    out = [0] * (len(a) - len(b) + 1)
    r = a[:]
    for k in range(len(out) - 1, -1, -1):
        coef = r[k + len(b) - 1] * inv % p
        out[k] = coef
        if coef:
            for j, y in enumerate(b):
                r[k + j] = (r[k + j] - coef * y) % p
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return trim(out)


def porder(a: Poly) -> float:
    a = trim(a)
    for i, x in enumerate(a):
        if x:
            return i
    return float("inf")


def bareiss_det(m: Sequence[Sequence[Poly]], p: int) -> Poly:
    """Exact determinant of a matrix over F_p[t]."""
    n = len(m)
    a = [[trim(x) for x in row] for row in m]
    sign = 1
    prev: Poly = [1]
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return []
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = psub(pmul(a[i][j], a[k][k], p), pmul(a[i][k], a[k][j], p), p)
                a[i][j] = pdivexact(num, prev, p)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign == 1 else pneg(d, p)


def as_polys(m: Matrix) -> list[list[Poly]]:
    return [[trim(x.c) for x in row] for row in m]


def solve_orders(a: list[list[Poly]], b: list[Poly], p: int) -> list[float] | None:
    """t-orders of the unique solution of a x = b over F_p(t), by Cramer.

    Returns None when the system is singular.
    """
    d = bareiss_det(a, p)
    if not d:
        return None
    dv = porder(d)
    out = []
    for k in range(len(a)):
        ak = [row[:k] + [b[i]] + row[k + 1:] for i, row in enumerate(a)]
        out.append(porder(bareiss_det(ak, p)) - dv)
    return out


def section_exists(theta: Matrix, f_size: int) -> bool | None:
    """Is there an integral X with A X + B = X D?  (theta = [[A, B], [0, D]])

    The graph of such an X is a theta-stable complement to the first
    ``f_size`` coordinates.  Solved as a linear system over F_p(t); None if
    the Sylvester operator is singular.
    """
    p = theta[0][0].p
    m = len(theta)
    f, r = f_size, m - f_size
    A = [[trim(theta[i][j].c) for j in range(f)] for i in range(f)]
    B = [[trim(theta[i][j].c) for j in range(f, m)] for i in range(f)]
    D = [[trim(theta[i][j].c) for j in range(f, m)] for i in range(f, m)]
    # unknown x[i][k] at index i*r + k; equation (i, k): sum_j A[i][j] x[j][k] - sum_l x[i][l] D[l][k] = -B[i][k]
    size = f * r
    rows, rhs = [], []
    for i in range(f):
        for k in range(r):
            row = [[] for _ in range(size)]
            for j in range(f):
                row[j * r + k] = padd(row[j * r + k], A[i][j], p)
            for l in range(r):
                row[i * r + l] = psub(row[i * r + l], D[l][k], p)
            rows.append(row)
            rhs.append(pneg(B[i][k], p))
    orders = solve_orders(rows, rhs, p)
    if orders is None:
        return None
    return all(o >= 0 for o in orders)


def series_det_exact(m: Matrix) -> Poly:
    return bareiss_det(as_polys(m), m[0][0].p)


def isotropic_total(k: int, p: int) -> int:
    """Number of Lagrangians in a split 2k-dimensional quadratic space."""
    out = 1
    for i in range(k):
        out *= p ** i + 1
    return out

