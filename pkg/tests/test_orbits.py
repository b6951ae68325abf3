from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbitduality.errors import DecompositionFailure, NotSpecial, NotTypeB
from orbitduality.orbits import (
    HitchinContext,
    KLLabel,
    all_decompositions,
    block_decompose,
    blockwise_dual,
    corner_quotient_order,
    dimension_report,
    eta_sequence,
    kl_label,
    orbit_dim,
    orbit_invariants,
    orbit_record,
    ramification_coefficients,
)
from orbitduality.partitions import (
    enumerate_partitions,
    is_special,
    springer_dual,
    total_for,
    transpose,
)


def special_pairs(n):
    return [(springer_dual(c, "C_to_B"), c) for c in enumerate_partitions("C", 2 * n, True)]


def centralizer_dim(d, t):
    """dim of the centralizer of a nilpotent with Jordan type d, by the textbook formula."""
    s = sum(x * x for x in transpose(d))
    odd = sum(m for v, m in Counter(d).items() if v % 2 == 1)
    return (s + odd) // 2 if t == "C" else (s - odd) // 2


def corners_by_scan(d):
    """Odd-by-odd corners found by walking the Young diagram boundary."""
    count = 0
    for i, x in enumerate(d):
        if i + 1 == len(d) or d[i + 1] < x:
            if x % 2 == 1 and (i + 1) % 2 == 1:
                count += 1
    return count


# ---------------------------------------------------------------- examples


def test_block_examples():
    dec = block_decompose((7, 6, 6, 4, 4, 2, 2, 1, 1))
    assert dec.to_list() == [{"kind": "B2", "parts": [7, 6, 6, 4, 4, 2, 2, 1]},
                             {"kind": "B3", "parts": [1]}]
    assert block_decompose((3, 1, 1)).to_list() == [{"kind": "B2", "parts": [3, 1]},
                                                    {"kind": "B3", "parts": [1]}]
    assert [b.kind for b in block_decompose((2, 2, 1)).blocks] == ["B1star", "B3"]


def test_invariant_examples():
    inv = orbit_invariants((7, 6, 6, 4, 4, 2, 2, 1, 1), "B")
    assert (inv.c, inv.beta, inv.canonical_quotient_order) == (1, 8, 2)
    assert inv.degree_partition == (6, 6, 6, 4, 4, 2, 2, 2, 1)
    inv = orbit_invariants((3, 1, 1), "B")
    assert (inv.c, inv.beta, inv.degree_partition, inv.canonical_quotient_order) == (1, 2, (2, 2, 1), 2)
    inv = orbit_invariants((1, 1, 1, 1, 1), "B")
    assert (inv.c, inv.beta, inv.canonical_quotient_order) == (0, 0, 1)


def test_kl_examples():
    assert kl_label((2, 2), "C") == KLLabel((), (1, 1))
    assert kl_label((3, 1, 1), "B") == KLLabel((), (1, 1))
    assert kl_label((1, 1, 1, 1), "C") == KLLabel((1, 1), ())


def test_eta_examples():
    assert eta_sequence((2, 2), "C") == (1, 2)
    assert eta_sequence((4,), "C") == (1, 1)
    assert eta_sequence((3, 1, 1), "B") == (1, 2)


def test_dimension_examples():
    r = dimension_report((2, 2), "C", HitchinContext(2, 2))
    assert (r["orbit_dim"], r["hitchin_base_dim"], r["moduli_dim"], r["half_check"]) == (6, 13, 26, True)
    assert dimension_report((3, 1, 1), "B", HitchinContext(2, 2))["orbit_dim"] == 6
    for g in (2, 3, 4):
        r = dimension_report((1, 1, 1, 1, 1), "B", HitchinContext(2, g))
        assert r["orbit_dim"] == 0 and r["moduli_dim"] == (2 * g - 2) * 10


def test_ramification_examples():
    assert ramification_coefficients((2, 2)) == [(2, 4, True)]
    assert ramification_coefficients((2, 1, 1)) == [(1, 3, False), (2, 4, True)]
    assert ramification_coefficients((1, 1, 1, 1)) == [(1, 4, True)]


def test_errors():
    with pytest.raises(NotTypeB):
        block_decompose((2, 2))
    with pytest.raises(NotSpecial):
        orbit_invariants((2, 2, 1), "B")
    with pytest.raises(NotSpecial):
        dimension_report((2, 1, 1), "C", HitchinContext(2, 2))
    with pytest.raises(ValueError):
        HitchinContext(2, 1)


def test_record_shape():
    rec = orbit_record((3, 1, 1), "B")
    assert list(rec)[:5] == ["partition", "type", "special", "blocks", "dual"]
    assert rec["kl"] == {"alpha": [], "beta": [1, 1]}
    assert orbit_record((2, 2, 1), "B")["dual"] is None


# ---------------------------------------------------------------- sweeps


@pytest.mark.parametrize("n", range(1, 9))
def test_block_decomposition_unique_and_detects_specials(n):
    for d in enumerate_partitions("B", 2 * n + 1):
        every = all_decompositions(d)
        assert every == [block_decompose(d)]
        assert is_special(d, "B") == (block_decompose(d).count("B1star") == 0)


@pytest.mark.parametrize("n", range(1, 9))
def test_blockwise_dual_and_pair_invariants(n):
    for d_b, d_c in special_pairs(n):
        assert blockwise_dual(d_b) == d_c
        assert kl_label(d_b, "B") == kl_label(d_c, "C")
        kl = kl_label(d_b, "B")
        assert sum(kl.alpha) + sum(kl.beta) == n
        assert eta_sequence(d_b, "B") == eta_sequence(d_c, "C")
        assert orbit_dim(d_b, "B") == orbit_dim(d_c, "C")


@pytest.mark.parametrize("t", ["B", "C"])
def test_orbit_dim_against_centralizer(t):
    for n in range(1, 8):
        for d in enumerate_partitions(t, total_for(n, t)):
            dim_g = 2 * n * n + n
            assert orbit_dim(d, t) == dim_g - centralizer_dim(d, t)


def test_corner_count_against_boundary_scan():
    for total in range(1, 18, 2):
        for d in enumerate_partitions("B", total, True):
            assert corner_quotient_order(d) == 2 ** (corners_by_scan(d) - 1)
            assert corner_quotient_order(d) == 2 ** orbit_invariants(d, "B").c


def test_eta_and_degree_partition_relation():
    for n in range(1, 7):
        for d_b, d_c in special_pairs(n):
            inv = orbit_invariants(d_b, "B")
            assert inv.degree_partition == d_c + (1,)
            assert inv.beta == sum(1 for x in d_c if x % 2 == 0)


def test_ramification_parity_for_special_and_some_failures():
    failures = 0
    for n in range(1, 9):
        for d in enumerate_partitions("C", 2 * n):
            ok = all(r[2] for r in ramification_coefficients(d))
            if is_special(d, "C"):
                assert ok, d
            failures += not ok
    assert failures > 0


@given(st.integers(1, 7), st.integers(2, 5), st.data())
def test_half_dimension_property(n, g, data):
    ds = enumerate_partitions("C", 2 * n, True)
    d = data.draw(st.sampled_from(ds))
    r = dimension_report(d, "C", HitchinContext(n, g))
    assert r["half_check"] and r["eta_sum_identity"]
    assert r["deg_prym_dual"] // r["deg_component_cover"] == 2 ** orbit_invariants(d, "C").c


def test_decomposition_failure_is_internal_only():
    # every type B partition up to 17 decomposes; failures would be bugs
    for total in range(1, 18, 2):
        for d in enumerate_partitions("B", total):
            try:
                block_decompose(d)
            except DecompositionFailure:  # pragma: no cover
                pytest.fail(str(d))
