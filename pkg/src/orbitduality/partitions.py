"""Partition arithmetic for nilpotent orbits of types B and C.

Partitions are plain tuples of positive integers in weakly decreasing order.
The orbit type is the string ``"B"`` (total 2n+1, even parts with even
multiplicity) or ``"C"`` (total 2n, odd parts with even multiplicity).
"""
from __future__ import annotations

from collections import Counter
from itertools import accumulate
from typing import Iterable, Iterator

from .errors import NotAMember, NotSpecial, ParityMismatch

Partition = tuple

TYPES = ("B", "C")


def canon(parts: Iterable[int]) -> Partition:
    """Sort descending and drop zeros."""
    parts = [int(x) for x in parts]
    if any(x < 0 for x in parts):
        raise ValueError(f"negative part in {parts}")
    return tuple(sorted((x for x in parts if x > 0), reverse=True))


def parse(text: str) -> Partition:
    """Read ``"3,1,1"`` (or ``"3 1 1"``) into a partition."""
    text = text.replace(",", " ").strip()
    return canon(int(x) for x in text.split()) if text else ()


def fmt(p: Iterable[int]) -> str:
    return "[" + ",".join(str(x) for x in p) + "]"


def _check_type(t: str) -> None:
    if t not in TYPES:
        raise ValueError(f"orbit type must be 'B' or 'C', got {t!r}")


def bad_parity(t: str) -> int:
    """Parity of the parts that must occur with even multiplicity."""
    _check_type(t)
    return 0 if t == "B" else 1


def rank_of(p: Iterable[int], t: str) -> int:
    """The rank n for a partition of 2n+1 (B) or 2n (C)."""
    total = sum(p)
    check_parity(total, t)
    return total // 2


def check_parity(total: int, t: str) -> None:
    _check_type(t)
    want = 1 if t == "B" else 0
    if total % 2 != want:
        raise ParityMismatch(f"total {total} has the wrong parity for type {t}")


def transpose(p: Iterable[int]) -> Partition:
    p = canon(p)
    if not p:
        return ()
    return tuple(sum(1 for x in p if x >= i) for i in range(1, p[0] + 1))


def multiplicities(p: Iterable[int]) -> Counter:
    return Counter(canon(p))


def is_member(p: Iterable[int], t: str) -> bool:
    p = canon(p)
    check_parity(sum(p), t)
    bad = bad_parity(t)
    return all(m % 2 == 0 for v, m in Counter(p).items() if v % 2 == bad)


def dominates(a: Iterable[int], b: Iterable[int]) -> bool:
    """True when a >= b in dominance order (shorter side padded with zeros)."""
    a, b = canon(a), canon(b)
    k = max(len(a), len(b))
    sa = list(accumulate(a + (0,) * (k - len(a))))
    sb = list(accumulate(b + (0,) * (k - len(b))))
    return all(x >= y for x, y in zip(sa, sb))


def collapse(p: Iterable[int], t: str) -> Partition:
    """Largest member of the type-t set lying below p in dominance order.

    Greedy: while some bad-parity value q has odd multiplicity, take the
    largest such q, lower its last occurrence by one and raise the first
    later part r with r < q - 1 by one (a new part if none exists).
    """
    p = list(canon(p))
    check_parity(sum(p), t)
    bad = bad_parity(t)
    while True:
        counts = Counter(p)
        odd = [v for v, m in counts.items() if v % 2 == bad and m % 2 == 1]
        if not odd:
            return canon(p)
        q = max(odd)
        last = max(i for i, x in enumerate(p) if x == q)
        p[last] -= 1
        for j in range(last + 1, len(p) + 1):
            if j == len(p):
                p.append(0)
            if p[j] < q - 1:
                p[j] += 1
                break
        p = sorted(p, reverse=True)


def is_special(p: Iterable[int], t: str) -> bool:
    p = canon(p)
    if not is_member(p, t):
        raise NotAMember(f"{fmt(p)} is not a type {t} partition")
    tp = transpose(p)
    bad = bad_parity(t)
    return all(m % 2 == 0 for v, m in Counter(tp).items() if v % 2 == bad)


def springer_dual(p: Iterable[int], direction: str) -> Partition:
    """Springer dual between special type C and type B partitions.

    ``direction`` is ``"C_to_B"`` (raise the first part, collapse to B) or
    ``"B_to_C"`` (lower the last part, collapse to C).
    """
    p = canon(p)
    if direction == "C_to_B":
        if not is_special(p, "C"):
            raise NotSpecial(f"{fmt(p)} is not special of type C")
        plus = (p[0] + 1,) + p[1:] if p else (1,)
        return collapse(plus, "B")
    if direction == "B_to_C":
        if not is_special(p, "B"):
            raise NotSpecial(f"{fmt(p)} is not special of type B")
        minus = p[:-1] + (p[-1] - 1,)
        return collapse(minus, "C")
    raise ValueError(f"direction must be C_to_B or B_to_C, got {direction!r}")


def dual(p: Iterable[int], t: str) -> Partition:
    """Springer dual seen from the type of p."""
    return springer_dual(p, "C_to_B" if t == "C" else "B_to_C")


def other(t: str) -> str:
    _check_type(t)
    return "C" if t == "B" else "B"


def partitions_of(n: int, largest: int | None = None) -> Iterator[Partition]:
    """All partitions of n in descending lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


def enumerate_partitions(t: str, N: int, special_only: bool = False) -> list[Partition]:
    """Members of the type-t set of total N, descending lexicographic."""
    if N < 1:
        raise ValueError("N must be positive")
    check_parity(N, t)
    out = [p for p in partitions_of(N) if is_member(p, t)]
    if special_only:
        out = [p for p in out if is_special(p, t)]
    return out


def total_for(n: int, t: str) -> int:
    _check_type(t)
    return 2 * n + 1 if t == "B" else 2 * n
