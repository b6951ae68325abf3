"""Richardson orbits of parabolics with Levi type (p_1, ..., p_k; q)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import gf2
from .errors import InvalidLevi, NotSpecial
from .orbits import BlockDecomposition, block_decompose, orbit_invariants
from .partitions import Partition, canon, collapse, fmt, is_special, springer_dual


@dataclass(frozen=True)
class LeviType:
    """GL_{p_1} x ... x GL_{p_k} x Sp_q (type C) or x SO_q (type B)."""

    ps: tuple
    q: int
    group_type: str

    def __post_init__(self):
        object.__setattr__(self, "ps", tuple(int(x) for x in self.ps))
        if self.group_type not in ("B", "C"):
            raise InvalidLevi(f"group type must be B or C, got {self.group_type!r}")
        if any(x < 1 for x in self.ps) or self.q < 0:
            raise InvalidLevi(f"bad Levi data {self.ps};{self.q}")
        if self.q % 2 != (1 if self.group_type == "B" else 0):
            raise InvalidLevi(f"q={self.q} has the wrong parity for type {self.group_type}")

    @property
    def total(self) -> int:
        return 2 * sum(self.ps) + self.q

    @property
    def n(self) -> int:
        return self.total // 2

    def label(self) -> str:
        return ",".join(map(str, self.ps)) + ":" + str(self.q)

    @classmethod
    def parse(cls, text: str, group_type: str) -> "LeviType":
        """Read ``"2,1:2"`` as ps=(2,1), q=2."""
        head, _, tail = text.partition(":")
        ps = tuple(int(x) for x in head.replace(" ", "").split(",") if x)
        return cls(ps, int(tail or 0), group_type)


@dataclass(frozen=True)
class PolarizationData:
    levi: LeviType
    ord: Partition
    orbit: Partition
    index_set: tuple
    degree: int


@dataclass(frozen=True)
class ComponentGroupData:
    """Subspaces of A_theta = F_2^{even parts of d_C}, as reduced bitmask bases.

    Bit i-1 stands for the generator b_i attached to the i-th part of d_C.
    """

    d_C: Partition
    d_B: Partition
    A_theta: tuple
    A_W: tuple
    A_PC: tuple
    A_PB: tuple
    quotient_orders: tuple

    def sizes(self) -> dict:
        return {k: 2 ** len(getattr(self, k)) for k in ("A_theta", "A_W", "A_PC", "A_PB")}


def ord_partition(L: LeviType) -> Partition:
    """ord_i = number of entries >= i in {q, p_1..p_k, p_k..p_1}."""
    pool = [L.q, *L.ps, *L.ps]
    top = max(pool) if pool else 0
    return canon(sum(1 for x in pool if x >= i) for i in range(1, top + 1))


def index_set(ord_: Partition, group_type: str) -> tuple:
    """Positions j with j, ord_j of the type's parity and ord_j >= ord_{j+1} + 2."""
    want = 0 if group_type == "B" else 1
    out = []
    for j in range(1, len(ord_) + 1):
        here = ord_[j - 1]
        nxt = ord_[j] if j < len(ord_) else 0
        if j % 2 == want and here % 2 == want and here >= nxt + 2:
            out.append(j)
    return tuple(out)


def richardson_data(L: LeviType) -> PolarizationData:
    o = ord_partition(L)
    idx = index_set(o, L.group_type)
    return PolarizationData(L, o, collapse(o, L.group_type), idx, 2 ** len(idx))


def dual_levi(L: LeviType) -> LeviType:
    if L.group_type == "C":
        return LeviType(L.ps, L.q + 1, "B")
    return LeviType(L.ps, L.q - 1, "C")


def seesaw_check(L_C: LeviType) -> dict:
    if L_C.group_type != "C":
        raise InvalidLevi("seesaw_check expects a type C Levi")
    pc = richardson_data(L_C)
    pb = richardson_data(dual_levi(L_C))
    c = orbit_invariants(pb.orbit, "B").c
    return {
        "levi_C": L_C.label(),
        "levi_B": pb.levi.label(),
        "orbit_C": pc.orbit,
        "orbit_B": pb.orbit,
        "deg_PC": pc.degree,
        "deg_PB": pb.degree,
        "c": c,
        "seesaw": pb.degree * pc.degree == 2 ** c,
        "index_sum": len(pb.index_set) + len(pc.index_set) == c,
        "springer_dual": springer_dual(pc.orbit, "C_to_B") == pb.orbit,
    }


def b2_positions(d_B: Iterable[int]) -> list[list[int]]:
    """1-based positions in the dual partition covered by each B2 block of d_B."""
    out, pos = [], 1
    for b in block_decompose(d_B).blocks:
        width = len(b.parts) - (1 if b.kind == "B3" and b.parts[0] == 1 else 0)
        if b.kind == "B2":
            out.append(list(range(pos, pos + width)))
        pos += width
    return out


def _tied(v: int, j: int, allowed: int) -> bool:
    """b_j == b_{j+1}, where a generator that does not exist counts as 0."""
    bj = v >> (j - 1) & 1 if allowed >> (j - 1) & 1 else 0
    bk = v >> j & 1 if allowed >> j & 1 else 0
    return bj == bk


def component_groups(L_C: LeviType) -> ComponentGroupData:
    if L_C.group_type != "C":
        raise InvalidLevi("component_groups expects a type C Levi")
    pc = richardson_data(L_C)
    pb = richardson_data(dual_levi(L_C))
    d_C, d_B = pc.orbit, pb.orbit
    if not is_special(d_C, "C"):
        raise NotSpecial(f"{fmt(d_C)} is not special")
    even = sum(1 << (i - 1) for i, x in enumerate(d_C, 1) if x % 2 == 0)
    theta = gf2.reduce_basis(1 << b for b in gf2.bits(even))
    W = gf2.reduce_basis(sum(1 << (i - 1) for i in blk) & even for blk in b2_positions(d_B))
    pc_elems = [v for v in gf2.elements(theta) if all(_tied(v, j, even) for j in pc.index_set)]
    pb_elems = [v for v in gf2.elements(W) if all(_tied(v, j, even) for j in pb.index_set)]
    A_PC = gf2.reduce_basis(pc_elems)
    A_PB = gf2.reduce_basis(pb_elems)
    q = (2 ** (len(W) - len(A_PB)), 2 ** (len(theta) - len(A_PC)))
    return ComponentGroupData(d_C, d_B, tuple(theta), tuple(W), tuple(A_PC), tuple(A_PB), q)


def a_pb_from_generators(L_C: LeviType) -> list[int]:
    """span{b_j + b_{j+1} : j in I(P_C)}, dropping generators that do not exist."""
    pc = richardson_data(L_C)
    even = sum(1 << (i - 1) for i, x in enumerate(pc.orbit, 1) if x % 2 == 0)
    return gf2.reduce_basis(((1 << (j - 1)) | (1 << j)) & even for j in pc.index_set)


def compositions(m: int):
    if m == 0:
        yield ()
        return
    for first in range(1, m + 1):
        for rest in compositions(m - first):
            yield (first,) + rest


def levi_types(n: int, t: str, proper: bool = True) -> list[LeviType]:
    """All Levi types of rank n; ``proper`` leaves out P = G (no GL factor)."""
    total = 2 * n + (1 if t == "B" else 0)
    out = []
    for q in range(total % 2, total + 1, 2):
        for ps in compositions((total - q) // 2):
            if ps or not proper:
                out.append(LeviType(ps, q, t))
    return out


def enumerate_polarizations(n: int, t: str) -> list[tuple]:
    """Every Levi type of rank n with its data, grouped by Richardson orbit."""
    if n < 1:
        raise ValueError("n must be positive")
    rows = [(L, richardson_data(L)) for L in levi_types(n, t)]
    rows.sort(key=lambda r: tuple(-x for x in r[1].orbit))
    return rows


def richardson_shape_ok(dec: BlockDecomposition) -> bool:
    """Leading B1 or two-part B2 blocks, then B2 blocks, then one B3."""
    kinds = [b.kind for b in dec.blocks]
    if "B1star" in kinds or kinds.count("B3") != 1 or kinds[-1] != "B3":
        return False
    opened = False
    for b in dec.blocks[:-1]:
        if b.kind == "B2" and len(b.parts) > 2:
            opened = True
        elif b.kind == "B1" and opened:
            return False
    return True
