"""F_2 model of Prym two-torsion built from sigma-fixed points.

With 2N fixed points s_0, s_1, ..., s_{2N-1} and s_0 as base, the classes
P_i = P_{s_i} span a space with the single relation sum P_i = 0 and the Weil
pairing e(P_i, P_j) = 1 exactly when i != j (additive notation over F_2).
Vectors are bitmasks over the 2N-1 generators; ker beta is the span modulo
the all-ones relation, represented on the first 2N-2 coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import gf2
from .errors import InvalidLevi, NotRichardson, NotSpecial, ParityGuard
from .orbits import block_decompose, orbit_invariants
from .partitions import canon, fmt, is_special, springer_dual
from .richardson import LeviType, dual_levi, richardson_data


@dataclass(frozen=True)
class WeilSpace:
    N: int
    labels: tuple  # one tag per generator P_1..P_{2N-1}

    @property
    def ngens(self) -> int:
        return 2 * self.N - 1

    @property
    def dim(self) -> int:
        """Dimension of ker beta."""
        return 2 * self.N - 2

    @property
    def relation(self) -> int:
        return (1 << self.ngens) - 1

    def gen(self, i: int) -> int:
        """P_i for 1 <= i <= 2N-1."""
        if not 1 <= i <= self.ngens:
            raise IndexError(f"generator {i} out of range")
        return 1 << (i - 1)

    def reduce(self, v: int) -> int:
        """Representative of v modulo the relation, free of the last generator."""
        if self.ngens and v >> (self.ngens - 1) & 1:
            v ^= self.relation
        return v

    def pair(self, x: int, y: int) -> int:
        """e(x, y) on generator vectors: sum over i != j of x_i y_j."""
        a, b = gf2.popcount(x), gf2.popcount(y)
        return (a * b - gf2.popcount(x & y)) % 2

    def gram(self) -> list[list[int]]:
        n = self.ngens
        return [[int(i != j) for j in range(n)] for i in range(n)]

    def span(self, vectors: Iterable[int]) -> list[int]:
        """Reduced basis of the image of ``vectors`` in ker beta."""
        return gf2.reduce_basis(self.reduce(v) for v in vectors)

    def ann(self, vectors: Iterable[int]) -> list[int]:
        """Annihilator inside ker beta under the induced pairing."""
        basis = self.span(vectors)
        m = self.dim
        rows = []
        for v in basis:
            # e(x, v) for x supported on the first m generators, as a row mask
            row = 0
            for i in range(m):
                if self.pair(1 << i, v):
                    row |= 1 << i
            rows.append(row)
        return gf2.kernel(rows, m)

    def radical(self) -> list[int]:
        """Radical of the form on the induced space (empty when nondegenerate)."""
        return self.ann(1 << i for i in range(self.dim))


def weil_space(N: int, labels: Sequence[str] | None = None) -> WeilSpace:
    if N < 1:
        raise ValueError("N must be at least 1")
    if labels is None:
        labels = ("free",) * (2 * N - 1)
    if len(labels) != 2 * N - 1:
        raise ValueError(f"need {2 * N - 1} labels, got {len(labels)}")
    return WeilSpace(N, tuple(labels))


@dataclass(frozen=True)
class CoverSpec:
    space: WeilSpace
    gens: tuple  # generator multiset, bitmasks over P_1..P_{2N-1}

    @property
    def degree(self) -> int:
        return 2 ** len(self.gens)


def component_count(cover: CoverSpec) -> int:
    """2^(#gens - rank): the fiber product is connected iff the gens are independent."""
    r = len(cover.space.span(cover.gens))
    return 2 ** (len(cover.gens) - r)


def dual_check(space: WeilSpace, V1: Iterable[int], V2: Iterable[int]) -> bool:
    """V1 == Ann(V2) inside ker beta."""
    return gf2.same_span(space.span(V1), space.ann(V2))


@dataclass
class HitchinInstance:
    n: int
    g: int
    d_C: tuple
    d_B: tuple
    levi_C: LeviType
    space: WeilSpace
    marked: tuple  # generator index of x_i for each 1-based position i of d_C (0 if odd part)
    V_B_gens: tuple
    V_C_gens: tuple
    naive_gens: tuple
    verdicts: dict = field(default_factory=dict)

    @property
    def V_B(self) -> list[int]:
        return self.space.span(self.V_B_gens)

    @property
    def V_C(self) -> list[int]:
        return self.space.span(self.V_C_gens)


FREE_POINT_RULES = ("degree", "riemann_roch")


def fixed_point_count(n: int, g: int, d_C: Sequence[int], rule: str = "degree") -> tuple:
    """(number of free fixed points, number of marked ones).

    ``degree`` takes 2n(2g-2) free points so that 2N = 2n(2g-2) + beta, the
    count matching deg(Prym^dual -> Prym) = 2^(2n(2g-2)+beta-2).
    ``riemann_roch`` adds the 2n - len(d_C) unramified branch points that
    the parabolic canonical divisor contributes, which makes 2N always even.
    """
    beta = sum(1 for x in d_C if x % 2 == 0)
    free = 2 * n * (2 * g - 2)
    if rule == "riemann_roch":
        free += 2 * n - len(d_C)
    elif rule != "degree":
        raise ValueError(f"unknown free point rule {rule!r}")
    return free, beta


def hitchin_instance(n: int, g: int, d_C, L_C: LeviType, rule: str = "degree") -> HitchinInstance:
    """Weil model for the Richardson pair (d_C, P_C) and its dual (d_B, P_B)."""
    d_C = canon(d_C)
    if g < 2:
        raise ValueError("genus must be at least 2")
    if L_C.group_type != "C":
        raise InvalidLevi("expected a type C Levi")
    if L_C.n != n or sum(d_C) != 2 * n:
        raise ValueError("rank mismatch between n, d_C and the Levi type")
    pc = richardson_data(L_C)
    if pc.orbit != d_C:
        raise NotRichardson(f"{fmt(d_C)} is not the Richardson orbit of {L_C.label()}")
    if not is_special(d_C, "C"):
        raise NotSpecial(f"{fmt(d_C)} is not special")
    pb = richardson_data(dual_levi(L_C))
    d_B = springer_dual(d_C, "C_to_B")
    free, beta = fixed_point_count(n, g, d_C, rule)
    total = free + beta
    if total % 2:
        raise ParityGuard(
            f"2N = {total} is odd for {fmt(d_C)} (free={free}, beta={beta}, rule={rule})")
    N = total // 2
    # generators: marked x's in order of position, then free points except the base
    marked = []
    labels = []
    blocks = _position_blocks(d_B)
    for i, x in enumerate(d_C, 1):
        if x % 2 == 0:
            labels.append(f"marked:{blocks.get(i, '?')}")
            marked.append(len(labels))
        else:
            marked.append(0)
    labels += ["free"] * (free - 1)
    space = weil_space(N, labels)
    first_free = beta + 1

    def x(i: int) -> int:
        """P_{x_i}, or 0 if the branch x_i does not exist."""
        if 1 <= i <= len(marked) and marked[i - 1]:
            return space.gen(marked[i - 1])
        return 0

    def diff(j: int) -> int:
        return x(j) ^ x(j + 1)

    V_C_gens = [diff(j) for j in pc.index_set if diff(j)]
    block_gens = []
    pos = 1
    for b in block_decompose(d_B).blocks:
        width = len(b.parts) - (1 if b.kind == "B3" and b.parts[0] == 1 else 0)
        span = [i for i in range(pos, pos + width) if x(i)]
        pos += width
        if b.kind == "B2" and span:
            last = span[-1]
            block_gens += [x(i) ^ x(last) for i in span[:-1]]
        elif b.kind == "B3":
            block_gens += [x(i) for i in span]
    free_gens = [space.gen(k) for k in range(first_free, space.ngens + 1)]
    V_B_gens = block_gens + free_gens + [diff(j) for j in pb.index_set if diff(j)]
    naive = block_gens + free_gens
    inst = HitchinInstance(n, g, d_C, d_B, L_C, space, tuple(marked), tuple(V_B_gens),
                           tuple(V_C_gens), tuple(naive))
    c = orbit_invariants(d_B, "B").c
    dim_B, dim_C = len(inst.V_B), len(inst.V_C)
    inst.verdicts = {
        "N": N,
        "beta": beta,
        "c": c,
        "dim_V_B": dim_B,
        "dim_V_C": dim_C,
        "dual": dual_check(space, V_B_gens, V_C_gens),
        "dual_swapped": dual_check(space, V_C_gens, V_B_gens),
        "component_count": component_count(CoverSpec(space, tuple(V_B_gens))),
        "dims_add_up": dim_B + dim_C == space.dim,
        "naive_dim": len(space.span(naive)),
        "naive_dual": dual_check(space, naive, []),
        "deg_prym_dual": 2 ** space.dim,
        "deg_component_cover": 2 ** len(space.span(naive)),
    }
    return inst


def _position_blocks(d_B) -> dict:
    """1-based dual position -> tag of the enclosing block of d_B."""
    out, pos = {}, 1
    for k, b in enumerate(block_decompose(d_B).blocks):
        width = len(b.parts) - (1 if b.kind == "B3" and b.parts[0] == 1 else 0)
        for i in range(pos, pos + width):
            out[i] = f"{b.kind}#{k}"
        pos += width
    return out


def instance_record(inst: HitchinInstance) -> dict:
    sp = inst.space
    as_list = lambda vs: [[i + 1 for i in gf2.bits(v)] for v in vs]
    return {
        "n": inst.n,
        "g": inst.g,
        "d_C": list(inst.d_C),
        "d_B": list(inst.d_B),
        "levi": inst.levi_C.label(),
        "N": sp.N,
        "labels": list(sp.labels),
        "V_B": as_list(inst.V_B),
        "V_C": as_list(inst.V_C),
        "verdicts": inst.verdicts,
    }
