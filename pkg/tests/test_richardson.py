from itertools import product

import pytest

from orbitduality import gf2
from orbitduality.errors import InvalidLevi
from orbitduality.orbits import block_decompose, orbit_invariants
from orbitduality.partitions import collapse, springer_dual
from orbitduality.richardson import (
    LeviType,
    a_pb_from_generators,
    component_groups,
    dual_levi,
    enumerate_polarizations,
    levi_types,
    ord_partition,
    richardson_data,
    richardson_shape_ok,
    seesaw_check,
)


def ord_by_counting(L):
    """ord_i = #{entries >= i} in the multiset {q, p_1, p_1, ..., p_k, p_k}."""
    pool = [L.q] + [x for x in L.ps for _ in range(2)]
    out = []
    i = 1
    while True:
        c = sum(1 for x in pool if x >= i)
        if not c:
            return tuple(out)
        out.append(c)
        i += 1


def subspace_by_enumeration(n_bits, allowed, constraints):
    """All vectors supported on ``allowed`` satisfying b_j == b_{j+1} (missing -> 0)."""
    out = []
    for bits in product((0, 1), repeat=n_bits):
        v = sum(b << i for i, b in enumerate(bits))
        if v & ~allowed:
            continue
        if all(((v >> (j - 1)) & 1) == ((v >> j) & 1 if allowed >> j & 1 else 0) for j in constraints):
            out.append(v)
    return out


# ---------------------------------------------------------------- examples


@pytest.mark.parametrize("label, t, ord_, orbit, idx, deg", [
    ("1:2", "C", (3, 1), (2, 2), (1,), 2),
    ("2:1", "B", (3, 2), (3, 1, 1), (2,), 2),
    ("1,1:0", "C", (4,), (4,), (), 1),
])
def test_richardson_examples(label, t, ord_, orbit, idx, deg):
    pd = richardson_data(LeviType.parse(label, t))
    assert (pd.ord, pd.orbit, pd.index_set, pd.degree) == (ord_, orbit, idx, deg)


def test_dual_levi_examples():
    assert dual_levi(LeviType.parse("1:2", "C")) == LeviType((1,), 3, "B")
    assert dual_levi(LeviType.parse("2:0", "C")) == LeviType((2,), 1, "B")
    L = LeviType.parse("2,1:2", "C")
    assert dual_levi(dual_levi(L)) == L


@pytest.mark.parametrize("label, pb, pc, c", [("1:2", 1, 2, 1), ("2:0", 2, 1, 1), ("1,1:0", 1, 1, 0)])
def test_seesaw_examples(label, pb, pc, c):
    s = seesaw_check(LeviType.parse(label, "C"))
    assert (s["deg_PB"], s["deg_PC"], s["c"]) == (pb, pc, c)
    assert s["seesaw"] and s["index_sum"] and s["springer_dual"]


def test_component_group_examples():
    cg = component_groups(LeviType.parse("1:2", "C"))
    assert cg.sizes() == {"A_theta": 4, "A_W": 2, "A_PC": 2, "A_PB": 2}
    assert cg.quotient_orders == (1, 2)
    assert component_groups(LeviType.parse("2:0", "C")).quotient_orders == (2, 1)
    a, b = component_groups(LeviType.parse("1,1:0", "C")).quotient_orders
    assert a * b == 1


def test_enumeration_examples():
    got = {L.label(): pd.orbit for L, pd in enumerate_polarizations(2, "C")}
    assert got == {"1:2": (2, 2), "2:0": (2, 2), "1,1:0": (4,)}
    assert {L.label(): pd.orbit for L, pd in enumerate_polarizations(1, "C")} == {"1:0": (2,)}
    assert {L.label(): pd.orbit for L, pd in enumerate_polarizations(1, "B")} == {"1:1": (3,)}


def test_levi_errors():
    with pytest.raises(InvalidLevi):
        LeviType((1,), 1, "C")
    with pytest.raises(InvalidLevi):
        LeviType((0,), 2, "C")
    with pytest.raises(InvalidLevi):
        seesaw_check(LeviType((1,), 1, "B"))


# ---------------------------------------------------------------- sweeps


@pytest.mark.parametrize("n", range(1, 7))
def test_ord_collapse_and_specialness(n):
    for t in ("B", "C"):
        for L in levi_types(n, t):
            pd = richardson_data(L)
            assert pd.ord == ord_by_counting(L)
            assert pd.orbit == collapse(ord_partition(L), t)


@pytest.mark.parametrize("n", range(1, 7))
def test_seesaw_and_groups_sweep(n):
    for L in levi_types(n, "C"):
        s = seesaw_check(L)
        assert s["seesaw"] and s["index_sum"] and s["springer_dual"], L
        cg = component_groups(L)
        c = orbit_invariants(cg.d_B, "B").c
        assert cg.quotient_orders[0] * cg.quotient_orders[1] == 2 ** c
        assert gf2.same_span(cg.A_PB, a_pb_from_generators(L))
        # inclusions A_PB <= A_W and A_PC <= A_theta
        assert all(gf2.in_span(v, cg.A_W) for v in cg.A_PB)
        assert all(gf2.in_span(v, cg.A_theta) for v in cg.A_PC)
        assert richardson_shape_ok(block_decompose(cg.d_B))


@pytest.mark.parametrize("n", range(1, 6))
def test_a_pc_by_enumeration(n):
    for L in levi_types(n, "C"):
        pd = richardson_data(L)
        cg = component_groups(L)
        even = sum(1 << (i - 1) for i, x in enumerate(pd.orbit, 1) if x % 2 == 0)
        brute = subspace_by_enumeration(len(pd.orbit), even, pd.index_set)
        assert sorted(gf2.elements(cg.A_PC)) == sorted(brute)


def test_richardson_orbits_are_special_and_duals_match():
    for n in range(1, 7):
        for L in levi_types(n, "C"):
            pc = richardson_data(L)
            pb = richardson_data(dual_levi(L))
            assert springer_dual(pc.orbit, "C_to_B") == pb.orbit


def test_component_groups_needs_type_c():
    with pytest.raises(InvalidLevi):
        component_groups(LeviType((1,), 1, "B"))
