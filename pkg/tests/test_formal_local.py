import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitduality import oracles
from orbitduality.errors import NotSpecial, PrecisionLoss
from orbitduality.formal_local import (
    assumption_check,
    companion,
    degeneracy_order,
    direct_sum,
    inverse_unit,
    is_eisenstein,
    random_eisenstein,
    random_flag_theta,
    random_unit_flag_change,
    resultant_order,
    sample_generic_char,
    split_witness,
    splitting_criterion,
    twisted_gram,
)
from orbitduality.partitions import enumerate_partitions, total_for
from orbitduality.series import Series, adjugate, charpoly, det, matmul, poly_at_matrix

P = 101


def S(coeffs, prec=6, p=P):
    return Series(coeffs, p, prec)


def poly(*coeffs, prec=6):
    """Monic polynomial in lambda from t-coefficient lists, low degree first."""
    return [S(c, prec) for c in coeffs] + [S([1], prec)]


def random_matrix(rng, n, prec, p=P, max_order=3):
    return [[S([0] * rng.randrange(max_order) + [rng.randrange(p) for _ in range(prec)], prec, p)
             for _ in range(n)] for _ in range(n)]


# ---------------------------------------------------------------- series


def test_series_arithmetic_and_precision():
    a = S([0, 1, 2], prec=4)
    b = S([3, 4], prec=3)
    assert (a * b).prec == min(4 + 0, 3 + 1)
    assert (a * b).c[:3] == [0, 3, 10]
    assert (a + b).prec == 3
    assert S([5, 1], prec=4).unit_inverse() * S([5, 1], prec=4) == 1
    with pytest.raises(PrecisionLoss):
        S([], prec=3).exact_order()


def test_det_matches_bareiss():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(1, 4)
        m = random_matrix(rng, n, 8)
        d = det(m)
        exact = oracles.series_det_exact(m)
        k = min(d.prec, 8)
        assert d.c[:k] == (exact + [0] * 16)[:k]


def test_charpoly_and_adjugate():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 4)
        m = random_matrix(rng, n, 6)
        cp = charpoly(m)
        zero = poly_at_matrix(cp, m)
        assert all(x.is_zero() for row in zero for x in row)  # Cayley-Hamilton
        prod = matmul(m, adjugate(m))
        d = det(m)
        for i in range(n):
            for j in range(n):
                assert prod[i][j] == (d if i == j else 0)


# ---------------------------------------------------------------- examples


def test_sampler_examples():
    chi = sample_generic_char((2, 2), "C", p=P, seed=1)
    assert chi.degrees == (2, 2) and not chi.has_lambda
    c1, c2 = chi.constant_units()
    assert c1 != c2
    assert assumption_check(chi)["passed"]
    chi = sample_generic_char((3, 1, 1), "B", p=P, seed=1)
    assert chi.has_lambda and chi.degrees == (2, 2)
    assert chi.ambient_dim == 5


def test_sampler_rejects_repeated_units():
    retried = 0
    for seed in range(40):
        chi = sample_generic_char((1, 1, 1, 1), "C", p=13, seed=seed)
        cs = chi.constant_units()
        assert len(set(cs)) == len(cs)
        retried += chi.retries > 0
    assert retried > 0


def test_assumption_examples():
    f1 = poly([0, 3], [])
    f2 = poly([0, 5], [])
    assert resultant_order(f1, f2) == 2
    assert oracles.porder(oracles.series_det_exact(poly_at_matrix(f1, companion(f2)))) == 2
    assert is_eisenstein(poly([0, 1], []))
    assert not is_eisenstein(poly([0, 0, 1], []))


def test_sampler_errors():
    with pytest.raises(NotSpecial):
        sample_generic_char((2, 1, 1), "C")
    with pytest.raises(ValueError):
        sample_generic_char((2, 2), "C", p=9)
    with pytest.raises(ValueError):
        sample_generic_char((2, 2), "C", N=3)


def test_splitting_examples():
    f = poly([0, 3], [])
    g = poly([0, 5], [])
    theta = direct_sum([companion(f), companion(g)])
    assert splitting_criterion(theta, 2) is True
    for scale in (0, 1):
        coupled = [row[:] for row in theta]
        for i in range(2):
            coupled[i][2 + i] = S([0] * scale + [1])
        assert splitting_criterion(coupled, 2) == oracles.section_exists(coupled, 2)
        if scale == 1:
            assert splitting_criterion(coupled, 2) is True
    with pytest.raises(ValueError):
        splitting_criterion(theta, 0)


def test_degeneracy_examples():
    one, zero, t = S([1]), S([]), S([0, 1])
    assert degeneracy_order([[one, zero], [zero, one]]) == 0
    assert degeneracy_order([[one, zero], [zero, t]]) == 1
    rng = random.Random(2)
    for e in (2, 4, 6):
        f = random_eisenstein(rng, e, P, 8, even=True)
        G = twisted_gram(f)
        assert degeneracy_order(G) == 1
        assert all(G[i][j] == G[j][i] for i in range(e) for j in range(e))


# ---------------------------------------------------------------- sweeps


def test_sampled_orbits_pass_checks():
    for n in range(1, 5):
        for t in ("B", "C"):
            for d in enumerate_partitions(t, total_for(n, t), special_only=True):
                chi = sample_generic_char(d, t, p=P, seed=n)
                rep = assumption_check(chi)
                assert rep["passed"] and rep["eta_sharp"], (d, t)
                assert all(r["order"] == r["expected"] for r in rep["resultants"])


def test_splitting_agrees_with_section_search():
    rng = random.Random(11)
    seen = set()
    for _ in range(60):
        theta, F = random_flag_theta(rng, P, 6)
        want = oracles.section_exists(theta, F)
        if want is None:
            continue
        assert splitting_criterion(theta, F) == want
        seen.add(want)
    assert seen == {True, False}
    for _ in range(20):
        theta, F = split_witness(rng, P, 6)
        assert splitting_criterion(theta, F) is True


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10 ** 6))
def test_resultant_order_property(e1, e2, seed):
    rng = random.Random(seed)
    ei, ej = max(e1, e2), min(e1, e2)
    fi = random_eisenstein(rng, ei, P, 8)
    fj = random_eisenstein(rng, ej, P, 8)
    if fi[0].c[1] == fj[0].c[1]:
        return
    assert resultant_order(fi, fj) == ej


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([2, 4]), min_size=1, max_size=3), st.integers(0, 10 ** 6))
def test_direct_sum_degeneracy_adds(degrees, seed):
    rng = random.Random(seed)
    blocks = [twisted_gram(random_eisenstein(rng, e, P, 8, even=True)) for e in degrees]
    assert degeneracy_order(direct_sum(blocks)) == len(degrees)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([None, 0, 1, 2]))
def test_splitting_invariant_under_flag_change(seed, coupling):
    rng = random.Random(seed)
    theta, F = random_flag_theta(rng, P, 6, coupling=coupling)
    Q = random_unit_flag_change(rng, (2, 2), P, 6)
    moved = matmul(matmul(Q, theta), inverse_unit(Q))
    assert splitting_criterion(moved, F) == splitting_criterion(theta, F)
