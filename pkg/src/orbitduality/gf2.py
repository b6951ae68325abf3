"""Small F_2 linear algebra on integer bitmasks (bit i is coordinate i)."""
from __future__ import annotations

from typing import Iterable


def reduce_basis(vectors: Iterable[int]) -> list[int]:
    """Reduced echelon basis of the span, sorted by leading bit descending."""
    pivots: dict[int, int] = {}
    for v in vectors:
        for lead in sorted(pivots, reverse=True):
            if v >> lead & 1:
                v ^= pivots[lead]
        if v:
            lead = v.bit_length() - 1
            for k in list(pivots):
                if pivots[k] >> lead & 1:
                    pivots[k] ^= v
            pivots[lead] = v
    return [pivots[k] for k in sorted(pivots, reverse=True)]


def rank(vectors: Iterable[int]) -> int:
    return len(reduce_basis(vectors))


def in_span(v: int, basis: Iterable[int]) -> bool:
    basis = list(basis)
    return rank(basis + [v]) == rank(basis)


def same_span(a: Iterable[int], b: Iterable[int]) -> bool:
    return reduce_basis(a) == reduce_basis(b)


def elements(basis: Iterable[int]) -> list[int]:
    """All 2^k elements of the span (basis assumed independent)."""
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return out


def popcount(v: int) -> int:
    return bin(v).count("1")


def bits(v: int) -> list[int]:
    return [i for i in range(v.bit_length()) if v >> i & 1]


def kernel(rows: list[int], ncols: int) -> list[int]:
    """Basis of {x : popcount(r & x) even for every r} inside F_2^ncols."""
    red = reduce_basis(rows)
    leads = {r.bit_length() - 1: r for r in red}
    free = [i for i in range(ncols) if i not in leads]
    out = []
    for f in free:
        x = 1 << f
        for lead, r in leads.items():
            if r >> f & 1:
                x |= 1 << lead
        out.append(x)
    return reduce_basis(out)
