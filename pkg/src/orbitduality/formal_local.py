"""Local characteristic polynomials over F_p[[t]] and the lemmas about them."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import accumulate
from typing import Sequence

from .errors import (
    FullyDegenerate,
    NotSpecial,
    PrecisionLoss,
    RetriesExhausted,
    SingularQuotient,
)
from .orbits import orbit_invariants
from .partitions import Partition, canon, fmt, is_special
from .series import (
    Matrix,
    Series,
    adjugate,
    block,
    charpoly,
    det,
    matmul,
    poly_at_matrix,
)

Poly = list  # list of Series, low to high, monic


@dataclass
class LocalCharData:
    factors: list  # non-lambda factors, each a monic Poly
    degrees: tuple
    type: str
    target: Partition
    sigma_pairing: dict  # i -> j with f_j(l) = -f_i(-l); i -> i for even factors
    delta: int
    p: int
    N: int
    seed: int
    has_lambda: bool = False
    retries: int = 0

    @property
    def ambient_dim(self) -> int:
        return sum(self.degrees) + (1 if self.has_lambda else 0)

    def constant_units(self) -> list[int]:
        """The t-coefficient of f_i(0) for each factor."""
        return [f[0].c[1] for f in self.factors]

    def even_indices(self) -> list[int]:
        return [i for i, e in enumerate(self.degrees) if e % 2 == 0]

    def expanded(self) -> Poly:
        prod = [Series.const(1, self.p, self.N)]
        if self.has_lambda:
            prod = [Series([], self.p, self.N), Series.const(1, self.p, self.N)]
        for f in self.factors:
            prod = poly_mul(prod, f)
        return prod

    def describe(self) -> list[dict]:
        rows = []
        for i, f in enumerate(self.factors):
            rows.append({
                "factor": i,
                "degree": self.degrees[i],
                "sigma": self.sigma_pairing[i],
                "coefficients": [list(c.c) for c in f],
            })
        return rows


def poly_mul(a: Poly, b: Poly) -> Poly:
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = x * y if out[i + j] is None else out[i + j] + x * y
    return out


def companion(f: Poly) -> Matrix:
    """Companion matrix R(f) of a monic polynomial (low to high coefficients)."""
    e = len(f) - 1
    p, prec = f[0].p, f[0].prec
    m = [[Series([], p, prec) for _ in range(e)] for _ in range(e)]
    for i in range(1, e):
        m[i][i - 1] = Series.const(1, p, prec)
    for i in range(e):
        m[i][e - 1] = -f[i]
    return m


def is_eisenstein(f: Poly) -> bool:
    """Non-leading coefficients divisible by t, constant term of order exactly one."""
    if not f[-1] == 1:
        return False
    if any(c.order() < 1 for c in f[:-1]):
        return False
    return f[0].order() == 1 and f[0].prec > 1


def resultant_order(fi: Poly, fj: Poly) -> int:
    """t-order of det f_i(R(f_j))."""
    d = det(poly_at_matrix(fi, companion(fj)))
    if d.is_zero():
        raise FullyDegenerate("resultant vanishes to working precision")
    return d.exact_order()


def degree_partition(d: Partition, t: str) -> tuple:
    """Factor degrees excluding the lambda factor, plus whether lambda is present."""
    if t == "C":
        return tuple(d), False
    deg = orbit_invariants(d, "B").degree_partition
    return tuple(deg[:-1]), True


def eta_bounds(d: Partition, length: int) -> list[int]:
    """min{l : d_1 + ... + d_l >= i} for i = 1..length."""
    sums = list(accumulate(d))
    return [next(j for j, s in enumerate(sums, 1) if s >= i) for i in range(1, length + 1)]


def _random_factor(rng: random.Random, e: int, even: bool, c: int, p: int, N: int) -> Poly:
    coeffs = []
    for k in range(e):
        if even and k % 2 == 1:
            coeffs.append(Series([], p, N))
            continue
        tail = [rng.randrange(p) for _ in range(N - 1)]
        if k == 0:
            tail[0] = c
        coeffs.append(Series([0] + tail, p, N))
    coeffs.append(Series.const(1, p, N))
    return coeffs


def _sigma_mirror(f: Poly) -> Poly:
    """-f(-lambda), monic for odd degree."""
    e = len(f) - 1
    return [c if (e - k) % 2 == 0 else -c for k, c in enumerate(f)]


def default_truncation(d: Partition) -> int:
    return 2 * max(d) + 2


def sample_generic_char(d, t: str, p: int = 101, N: int | None = None,
                        seed: int = 0, max_retries: int = 200) -> LocalCharData:
    """Random generic local characteristic polynomial for the special orbit d."""
    d = canon(d)
    if not is_special(d, t):
        raise NotSpecial(f"{fmt(d)} is not special of type {t}")
    if p < 3 or p % 2 == 0 or any(p % k == 0 for k in range(3, int(p ** 0.5) + 1, 2)):
        raise ValueError(f"p={p} is not an odd prime")
    N = default_truncation(d) if N is None else N
    if N < 2 * max(d):
        raise ValueError(f"truncation N={N} is below 2*max part")
    degrees, has_lambda = degree_partition(d, t)
    rng = random.Random(seed)
    for attempt in range(max_retries):
        factors, sigma = [], {}
        odd_left = [i for i, e in enumerate(degrees) if e % 2 == 1]
        cs = []
        for i, e in enumerate(degrees):
            if i in sigma:
                continue
            c = rng.randrange(1, p)
            if e % 2 == 0:
                factors.append((i, _random_factor(rng, e, True, c, p, N)))
                sigma[i] = i
                cs.append(c)
            else:
                j = next(k for k in odd_left if k != i and k not in sigma and degrees[k] == e)
                f = _random_factor(rng, e, False, c, p, N)
                factors.append((i, f))
                factors.append((j, _sigma_mirror(f)))
                sigma[i], sigma[j] = j, i
                cs += [c, -c % p]
        factors = [f for _, f in sorted(factors, key=lambda x: x[0])]
        if len(set(cs)) != len(cs):
            continue
        order_a = len(degrees)
        chi = LocalCharData(factors, degrees, t, d, sigma, order_a // 2, p, N, seed,
                            has_lambda, attempt)
        phi0 = 1
        for c in chi.constant_units():
            phi0 = phi0 * c % p
        # with a single factor phi_0 equals phi_1 by construction
        even_cs = [chi.constant_units()[i] for i in chi.even_indices()]
        if len(factors) > 1 and phi0 in even_cs:
            continue
        report = assumption_check(chi)
        if report["passed"] and report["eta_sharp"]:
            return chi
    raise RetriesExhausted(f"no generic draw for {fmt(d)} after {max_retries} tries (p={p}, N={N})")


def assumption_check(chi: LocalCharData) -> dict:
    """Check the standing assumptions on a sampled characteristic polynomial."""
    eis = [is_eisenstein(f) for f in chi.factors]
    res = []
    k = len(chi.factors)
    for i in range(k):
        for j in range(k):
            if i == j or chi.degrees[i] < chi.degrees[j]:
                continue
            try:
                o = resultant_order(chi.factors[i], chi.factors[j])
            except ArithmeticError:
                o = None
            want = chi.degrees[j]
            res.append({"i": i, "j": j, "order": o, "expected": want, "ok": o == want})
    deg = list(chi.degrees) + ([1] if chi.has_lambda else [])
    deg = sorted(deg, reverse=True)
    d = list(chi.target)
    width = max(len(d), len(deg))
    d += [0] * (width - len(d))
    deg += [0] * (width - len(deg))
    partial_ok = all(s <= 1 for s in accumulate(x - y for x, y in zip(d, deg)))
    chi_poly = chi.expanded()
    total = len(chi_poly) - 1
    bounds = eta_bounds(tuple(chi.target), total)
    coeff = []
    for i in range(1, total + 1):
        a = chi_poly[total - i]
        o = a.order()
        known = o < a.prec
        coeff.append({
            "i": i,
            "order": o if known else None,
            "bound": bounds[i - 1],
            "ok": (o >= bounds[i - 1]),
            "sharp": known and o == bounds[i - 1],
        })
    n = total // 2
    eta_sharp = all(coeff[2 * i - 1]["sharp"] for i in range(1, n + 1))
    passed = all(eis) and all(r["ok"] for r in res) and partial_ok and all(c["ok"] for c in coeff)
    return {
        "eisenstein": eis,
        "resultants": res,
        "partial_sums_ok": partial_ok,
        "coefficient_orders": coeff,
        "eta_sharp": eta_sharp,
        "passed": passed,
    }


def splitting_criterion(theta: Matrix, F_size: int) -> bool:
    """Is the span of the first F_size basis vectors a theta-direct summand?

    With chi_F the characteristic polynomial of theta on F,
    chi_F(theta) = [[0, M], [0, Q]] and F splits off iff M Q^{-1} is
    integral, i.e. every entry of M adj(Q) has order >= ord det Q.
    """
    m = len(theta)
    if not 0 < F_size < m:
        raise ValueError("F_size must be strictly between 0 and the size")
    for i in range(F_size, m):
        for j in range(F_size):
            if not theta[i][j].is_zero():
                raise ValueError("theta is not block upper triangular")
    chi_f = charpoly(block(theta, range(F_size), range(F_size)))
    big = poly_at_matrix(chi_f, theta)
    M = block(big, range(F_size), range(F_size, m))
    Q = block(big, range(F_size, m), range(F_size, m))
    dq = det(Q)
    if dq.is_zero():
        raise SingularQuotient("chi_F of the quotient is singular to working precision")
    v = dq.exact_order()
    prod = matmul(M, adjugate(Q))
    for row in prod:
        for x in row:
            o = x.order()
            if o < v:
                if o >= x.prec:
                    raise PrecisionLoss("entry order undecided at truncation")
                return False
    return True


def degeneracy_order(gram: Matrix) -> int:
    """ord_t det of a square Gram matrix; the length of its cokernel."""
    if len(gram) != len(gram[0]):
        raise ValueError("gram matrix must be square")
    d = det(gram)
    if d.is_zero():
        raise FullyDegenerate("determinant vanishes to working precision")
    return d.exact_order()


def twisted_gram(f: Poly) -> Matrix:
    """Gram of <x, y> = coefficient of l^{e-1} in (l x(l) y(-l) mod f) on 1..l^{e-1}.

    For an even Eisenstein f this is the trace form twisted by lambda and
    sigma; it is symmetric with determinant of order exactly one.
    """
    e = len(f) - 1
    p, prec = f[0].p, f[0].prec
    powers = [reduce_mod(monomial_poly(k, p, prec), f) for k in range(2 * e)]
    gram = []
    for a in range(e):
        row = []
        for b in range(e):
            x = powers[1 + a + b][e - 1]
            row.append(-x if b % 2 else x)
        gram.append(row)
    return gram


def monomial_poly(k: int, p: int, prec: int) -> Poly:
    return [Series([], p, prec) for _ in range(k)] + [Series.const(1, p, prec)]


def reduce_mod(g: Poly, f: Poly) -> Poly:
    """Remainder of g modulo the monic f, padded to length deg f."""
    e = len(f) - 1
    g = list(g)
    for k in range(len(g) - 1, e - 1, -1):
        lead = g[k]
        for i in range(e):
            g[k - e + i] = g[k - e + i] - lead * f[i]
        g[k] = g[k] - lead
    p, prec = f[0].p, f[0].prec
    g = g[:e] + [Series([], p, prec) for _ in range(e - len(g))]
    return g


def random_unit_flag_change(rng: random.Random, sizes: Sequence[int], p: int, N: int) -> Matrix:
    """Random block upper triangular matrix over F_p[[t]] with unit determinant."""
    m = sum(sizes)
    starts = list(accumulate([0] + list(sizes)))
    out = [[Series([], p, N) for _ in range(m)] for _ in range(m)]
    for b, s in enumerate(sizes):
        lo = starts[b]
        while True:
            blk = [[Series([rng.randrange(p) for _ in range(N)], p, N) for _ in range(s)]
                   for _ in range(s)]
            dv = det(blk)
            if not dv.is_zero() and dv.order() == 0:
                break
        for i in range(s):
            for j in range(s):
                out[lo + i][lo + j] = blk[i][j]
        for i in range(s):
            for j in range(starts[b + 1], m):
                out[lo + i][j] = Series([rng.randrange(p) for _ in range(N)], p, N)
    return out


def inverse_unit(m: Matrix) -> Matrix:
    d = det(m)
    if d.is_zero() or d.order() != 0:
        raise SingularQuotient("matrix is not invertible over the power series ring")
    inv = d.unit_inverse()
    return [[x * inv for x in row] for row in adjugate(m)]


def direct_sum(blocks: Sequence[Matrix]) -> Matrix:
    p = blocks[0][0][0].p
    prec = blocks[0][0][0].prec
    m = sum(len(b) for b in blocks)
    out = [[Series([], p, prec) for _ in range(m)] for _ in range(m)]
    lo = 0
    for b in blocks:
        for i in range(len(b)):
            for j in range(len(b)):
                out[lo + i][lo + j] = b[i][j]
        lo += len(b)
    return out


def random_eisenstein(rng: random.Random, e: int, p: int, N: int, even: bool = False) -> Poly:
    return _random_factor(rng, e, even, rng.randrange(1, p), p, N)


def random_flag_theta(rng: random.Random, p: int, N: int, sizes=(2, 2), coupling: int | None = None):
    """theta = [[R(f), B], [0, R(g)]] with B of random t-order, plus a flag change.

    Returns (theta, F_size).  With ``coupling=None`` the order of B is drawn
    from {0, 1, 2, 3} so both verdicts of the splitting test show up.
    """
    f = random_eisenstein(rng, sizes[0], p, N)
    g = random_eisenstein(rng, sizes[1], p, N)
    A, D = companion(f), companion(g)
    m = sum(sizes)
    k = sizes[0]
    shift = rng.randrange(4) if coupling is None else coupling
    theta = [[Series([], p, N) for _ in range(m)] for _ in range(m)]
    for i in range(k):
        for j in range(k):
            theta[i][j] = A[i][j]
        for j in range(m - k):
            theta[i][k + j] = Series([0] * shift + [rng.randrange(p) for _ in range(N - shift)], p, N)
    for i in range(m - k):
        for j in range(m - k):
            theta[k + i][k + j] = D[i][j]
    P = random_unit_flag_change(rng, sizes, p, N)
    return matmul(matmul(P, theta), inverse_unit(P)), k


def split_witness(rng: random.Random, p: int, N: int, sizes=(2, 2)):
    """P diag(R(f), R(g)) P^{-1} with P flag preserving: F is a summand."""
    f = random_eisenstein(rng, sizes[0], p, N)
    g = random_eisenstein(rng, sizes[1], p, N)
    theta = direct_sum([companion(f), companion(g)])
    P = random_unit_flag_change(rng, sizes, p, N)
    return matmul(matmul(P, theta), inverse_unit(P)), sizes[0]
