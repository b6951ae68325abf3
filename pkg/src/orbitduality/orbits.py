"""Per-orbit invariants: blocks, c and beta, KL labels, eta, dimensions."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable

from .errors import DecompositionFailure, NotAMember, NotSpecial, NotTypeB
from .partitions import (
    Partition,
    canon,
    check_parity,
    fmt,
    is_member,
    is_special,
    rank_of,
    springer_dual,
    transpose,
)

KINDS = ("B1", "B1star", "B2", "B3")


@dataclass(frozen=True)
class Block:
    kind: str
    parts: Partition

    def even_parts(self) -> Partition:
        return tuple(x for x in self.parts if x % 2 == 0)


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple

    @property
    def partition(self) -> Partition:
        return tuple(x for b in self.blocks for x in b.parts)

    def count(self, kind: str) -> int:
        return sum(1 for b in self.blocks if b.kind == kind)

    def to_list(self) -> list:
        return [{"kind": b.kind, "parts": list(b.parts)} for b in self.blocks]


@dataclass(frozen=True)
class OrbitInvariants:
    c: int
    beta: int
    degree_partition: Partition
    canonical_quotient_order: int


@dataclass(frozen=True)
class KLLabel:
    alpha: Partition
    beta: Partition


@dataclass(frozen=True)
class HitchinContext:
    n: int
    g: int
    marked_points: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("rank n must be positive")
        if self.g < 2:
            raise ValueError("genus must be at least 2")
        if self.marked_points != 1:
            raise ValueError("only one marked point is supported")

    @property
    def dim_group(self) -> int:
        return 2 * self.n * self.n + self.n


def _type_b(d: Iterable[int]) -> Partition:
    d = canon(d)
    if sum(d) % 2 == 0 or not is_member(d, "B"):
        raise NotTypeB(f"{fmt(d)} is not a type B partition")
    return d


def _valid_block(kind: str, parts: Partition) -> bool:
    if kind == "B1":
        return len(parts) == 2 and parts[0] == parts[1] and parts[0] % 2 == 1
    if kind == "B1star":
        return len(parts) == 2 and parts[0] == parts[1] and parts[0] % 2 == 0
    if kind == "B2":
        if len(parts) < 2 or len(parts) % 2:
            return False
        a1, a2, mid = parts[0], parts[-1], parts[1:-1]
        return (a1 % 2 == 1 and a2 % 2 == 1 and a1 > a2
                and _paired_evens(mid) and all(a1 > b > a2 for b in mid))
    if kind == "B3":
        a, mid = parts[0], parts[1:]
        return a % 2 == 1 and len(mid) % 2 == 0 and _paired_evens(mid) and all(a > b for b in mid)
    return False


def _paired_evens(mid: Partition) -> bool:
    return all(x % 2 == 0 for x in mid) and all(
        mid[i] == mid[i + 1] for i in range(0, len(mid), 2))


def block_decompose(d: Iterable[int]) -> BlockDecomposition:
    """Cut a type B partition into B1/B1star/B2/B3 blocks, left to right."""
    d = _type_b(d)
    blocks = []
    i = 0
    while i < len(d):
        a = d[i]
        if i + 1 < len(d) and d[i + 1] == a:
            blocks.append(Block("B1" if a % 2 else "B1star", d[i:i + 2]))
            i += 2
            continue
        if a % 2 == 0:
            raise DecompositionFailure(f"unpaired even part {a} in {fmt(d)}")
        j = i + 1
        while j + 1 < len(d) and d[j] % 2 == 0:
            j += 2
        if j < len(d):
            blocks.append(Block("B2", d[i:j + 1]))
            i = j + 1
        else:
            blocks.append(Block("B3", d[i:]))
            i = len(d)
    out = BlockDecomposition(tuple(blocks))
    kinds = [b.kind for b in blocks]
    if (kinds.count("B3") != 1 or kinds[-1] != "B3"
            or not all(_valid_block(b.kind, b.parts) for b in blocks)
            or out.partition != d):
        raise DecompositionFailure(f"greedy scan produced {kinds} for {fmt(d)}")
    return out


def all_decompositions(d: Iterable[int]) -> list[BlockDecomposition]:
    """Every block decomposition of d, by exhaustive search (test oracle)."""
    d = canon(d)
    found = []

    def rec(i, acc):
        if i == len(d):
            if acc and acc[-1].kind == "B3" and sum(b.kind == "B3" for b in acc) == 1:
                found.append(BlockDecomposition(tuple(acc)))
            return
        for j in range(i + 1, len(d) + 1):
            for kind in KINDS:
                if _valid_block(kind, d[i:j]):
                    rec(j, acc + [Block(kind, d[i:j])])

    rec(0, [])
    return found


def blockwise_dual(d: Iterable[int]) -> Partition:
    """Degree partition without the trailing 1, read off from the blocks.

    B1 and B1star are kept, B2 [a1, b.., a2] becomes [a1-1, b.., a2+1] and
    B3 [a, b..] becomes [a-1, b..].  Agrees with the Springer dual when d is
    special.
    """
    out = []
    for b in block_decompose(d).blocks:
        p = list(b.parts)
        if b.kind == "B2":
            p[0] -= 1
            p[-1] += 1
        elif b.kind == "B3":
            p[0] -= 1
        out.extend(p)
    return canon(out)


def corner_quotient_order(d: Iterable[int]) -> int:
    """2^q where q+1 is the number of corners with odd length and odd height."""
    d = canon(d)
    corners = 0
    for v, h in Counter(d).items():
        height = sum(1 for x in d if x >= v)
        if v % 2 == 1 and height % 2 == 1:
            corners += 1
    if corners == 0:
        raise ValueError(f"{fmt(d)} has no odd-by-odd corner")
    return 2 ** (corners - 1)


def orbit_invariants(d: Iterable[int], t: str) -> OrbitInvariants:
    d = canon(d)
    if not is_special(d, t):
        raise NotSpecial(f"{fmt(d)} is not special of type {t}")
    d_b = d if t == "B" else springer_dual(d, "C_to_B")
    dec = block_decompose(d_b)
    c = dec.count("B2")
    sd = springer_dual(d_b, "B_to_C")
    beta = sum(1 for x in sd if x % 2 == 0)
    order = corner_quotient_order(d_b)
    if order != 2 ** c:
        raise DecompositionFailure(
            f"corner count gives {order} but {fmt(d_b)} has {c} B2 blocks")
    degree = sd + (1,) if t == "B" else d
    return OrbitInvariants(c, beta, degree, order)


def kl_label(d: Iterable[int], t: str) -> KLLabel:
    """Pair of partitions (alpha, beta) labelling the generic Weyl class."""
    d = canon(d)
    if not is_member(d, t):
        raise NotAMember(f"{fmt(d)} is not a type {t} partition")
    alpha, beta = [], []
    if t == "C":
        for v, m in Counter(d).items():
            if v % 2 == 0:
                beta.extend([v // 2] * m)
            else:
                alpha.extend([v] * (m // 2))
    else:
        for b in block_decompose(d).blocks:
            if b.kind == "B1":
                alpha.append(b.parts[0])
            elif b.kind == "B1star":
                alpha.append(b.parts[0])
            elif b.kind == "B2":
                beta.extend(x // 2 for x in (b.parts[0] - 1, *b.parts[1:-1], b.parts[-1] + 1))
            else:
                beta.extend(x // 2 for x in (b.parts[0] - 1, *b.parts[1:]) if x > 0)
    return KLLabel(canon(alpha), canon(beta))


def eta_sequence(d: Iterable[int], t: str) -> tuple:
    """(eta_2, eta_4, ..., eta_2n) with eta_2i the first j where d_1+..+d_j >= 2i."""
    d = canon(d)
    n = rank_of(d, t)
    sums = list(accumulate(d))
    return tuple(next(j for j, s in enumerate(sums, 1) if s >= 2 * i) for i in range(1, n + 1))


def orbit_dim(d: Iterable[int], t: str) -> int:
    d = canon(d)
    n = rank_of(d, t)
    s2 = sum(x * x for x in transpose(d))
    r = Counter(d)
    if t == "C":
        twice = s2 + sum(m for v, m in r.items() if v % 2 == 1)
    else:
        twice = s2 - sum(m for v, m in r.items() if v % 2 == 1)
    return 2 * n * n + n - twice // 2


def dimension_report(d: Iterable[int], t: str, ctx: HitchinContext, half: bool = True) -> dict:
    """Orbit, Hitchin base and moduli dimensions plus degree bookkeeping.

    With ``half=False`` a non-special orbit is accepted and the fields that
    need specialness are reported as None.
    """
    d = canon(d)
    check_parity(sum(d), t)
    n = rank_of(d, t)
    if n != ctx.n:
        raise ValueError(f"{fmt(d)} has rank {n}, context has rank {ctx.n}")
    special = is_special(d, t)
    if half and not special:
        raise NotSpecial(f"{fmt(d)} is not special of type {t}")
    dim_g = ctx.dim_group
    odim = orbit_dim(d, t)
    eta = eta_sequence(d, t)
    base = dim_g * ctx.g - n * n - sum(eta)
    moduli = (2 * ctx.g - 2) * dim_g + odim
    rep = {
        "orbit_dim": odim,
        "hitchin_base_dim": base,
        "moduli_dim": moduli,
        "half_check": None,
        "eta_sum_identity": None,
        "deg_L_BC": None,
        "deg_component_cover": None,
        "deg_prym_dual": None,
    }
    if not special:
        return rep
    rep["half_check"] = 2 * base == moduli
    d_c = d if t == "C" else springer_dual(d, "B_to_C")
    rep["eta_sum_identity"] = 4 * sum(eta) == _eta_sum_times_four(d_c)
    inv = orbit_invariants(d, t)
    free = 2 * n * (2 * ctx.g - 2)
    rep["deg_L_BC"] = 2 ** (free + inv.beta - inv.c - 1)
    rep["deg_component_cover"] = 2 ** (free + inv.beta - inv.c - 2)
    rep["deg_prym_dual"] = 2 ** (free + inv.beta - 2)
    return rep


def _eta_sum_times_four(d_c: Partition) -> int:
    s = transpose(d_c)
    r = Counter(d_c)
    return sum(x * (x + 1) for x in s) + sum(m for v, m in r.items() if v % 2 == 1)


def ramification_coefficients(d: Iterable[int]) -> list[tuple]:
    """(i, lambda_1+..+lambda_i, even?) for each part size i present in d."""
    d = canon(d)
    if not is_member(d, "C"):
        raise NotAMember(f"{fmt(d)} is not a type C partition")
    lam = transpose(d)
    sums = list(accumulate(lam))
    r = Counter(d)
    return [(i, sums[i - 1], sums[i - 1] % 2 == 0) for i in sorted(r)]


def orbit_record(d: Iterable[int], t: str, g: int = 2) -> dict:
    """JSON-ready summary of one orbit."""
    d = canon(d)
    special = is_special(d, t)
    n = rank_of(d, t)
    rec = {"partition": list(d), "type": t, "special": special}
    if t == "B":
        rec["blocks"] = block_decompose(d).to_list()
    if special:
        inv = orbit_invariants(d, t)
        dual_t = "B_to_C" if t == "B" else "C_to_B"
        rec["dual"] = list(springer_dual(d, dual_t))
        rec["c"] = inv.c
        rec["beta"] = inv.beta
        rec["degree_partition"] = list(inv.degree_partition)
    else:
        rec.update(dual=None, c=None, beta=None, degree_partition=None)
    kl = kl_label(d, t)
    rec["kl"] = {"alpha": list(kl.alpha), "beta": list(kl.beta)}
    rec["eta"] = list(eta_sequence(d, t))
    rec["dims"] = dimension_report(d, t, HitchinContext(n, g), half=False) if n else {}
    return rec

