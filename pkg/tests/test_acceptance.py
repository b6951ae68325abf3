"""Acceptance criteria, one PASS/FAIL line each on the terminal."""
import time

import pytest

from orbitduality.isotropic import build_residue_model, count_report
from orbitduality.orbits import (
    corner_quotient_order,
    eta_sequence,
    orbit_invariants,
    ramification_coefficients,
)
from orbitduality.partitions import enumerate_partitions, fmt, is_special, springer_dual, transpose
from orbitduality.verify import run_verify


@pytest.fixture
def say(capsys):
    def emit(label, ok, detail=""):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  criterion {label}  {detail}".rstrip())
    return emit


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0


def test_c01_springer_bijection(say):
    rep, dt = timed(run_verify, "duality", 8)
    # inverse written out directly: (d^-)_C undoes (d^+)_B
    ok = rep.ok and dt < 60
    say("1 springer bijection n<=8", ok, f"{rep.passed}/{rep.instances} checks, {dt:.1f}s")
    assert ok, rep.failures[:5]


def literal_eta_counterexamples(max_n):
    """(d_B, d_C) with equal eta that are not a special Springer-dual pair."""
    bad = []
    for n in range(1, max_n + 1):
        cs = enumerate_partitions("C", 2 * n)
        by_eta = {}
        for c in cs:
            by_eta.setdefault(eta_sequence(c, "C"), []).append(c)
        for b in enumerate_partitions("B", 2 * n + 1):
            for c in by_eta.get(eta_sequence(b, "B"), []):
                dual_pair = is_special(b, "B") and springer_dual(b, "B_to_C") == c
                if not dual_pair:
                    bad.append((b, c))
    return bad


@pytest.mark.xfail(strict=True, reason="eta also agrees on some pairs with a non-special type B side")
def test_c02_eta_literal(say):
    bad, dt = timed(literal_eta_counterexamples, 6)
    ex = ", ".join(f"{fmt(b)}/{fmt(c)}" for b, c in bad[:3])
    say("2 eta equality only on special dual pairs (literal)", not bad,
        f"{len(bad)} other eta-equal pairs, e.g. {ex}; {dt:.1f}s")
    assert not bad


def test_c02_eta_refined(say):
    rep, dt = timed(run_verify, "eta", 6)
    bad = literal_eta_counterexamples(6)
    # every stray coincidence has a non-special B side, never two specials
    refined = all(not (is_special(b, "B") and is_special(c, "C")) for b, c in bad)
    ok = rep.ok and refined and dt < 120
    say("2 eta equality on special dual pairs, and no special/special coincidence", ok,
        f"{rep.passed}/{rep.instances} checks, {dt:.1f}s")
    assert ok, rep.failures[:5]


def test_c03_dimension_identities(say):
    rep, dt = timed(run_verify, "dims", 8, (2, 3))
    ok = rep.ok and dt < 60
    say("3 half dimension and eta sum n<=8 g in {2,3}", ok, f"{rep.passed}/{rep.instances} checks, {dt:.1f}s")
    assert ok, rep.failures[:5]


def test_c04_canonical_quotient(say):
    t0 = time.perf_counter()
    count, bad = 0, []
    for total in range(1, 18, 2):
        for d in enumerate_partitions("B", total, special_only=True):
            count += 1
            if corner_quotient_order(d) != 2 ** orbit_invariants(d, "B").c:
                bad.append(d)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 10
    say("4 2^c equals corner count, total<=17", ok, f"{count} partitions, {dt:.1f}s")
    assert ok, bad[:5]


def test_c05_seesaw(say):
    rep, dt = timed(run_verify, "seesaw", 6)
    ok = rep.ok and dt < 60
    say("5 seesaw n<=6", ok, f"{rep.instances} Levi types, {dt:.1f}s")
    assert ok, rep.failures[:5]


def test_c06_group_product(say):
    rep, dt = timed(run_verify, "groups", 6)
    ok = rep.ok and dt < 60
    say("6 component group product n<=6", ok, f"{rep.passed}/{rep.instances} checks, {dt:.1f}s")
    assert ok, rep.failures[:5]


def test_c07_isotropic_counts(say):
    t0 = time.perf_counter()
    rep = run_verify("isotropic", 6, prime=101, seed=0)
    named = [(3, 1, 1), (5,), (1, 1, 1, 1, 1), (3, 2, 2, 1, 1), (5, 4, 4, 1, 1)]
    extra = []
    for d in named:
        assert build_residue_model(d, 101, 0).dim <= 6
        for s in range(3):
            r = count_report(d, 101, s)
            if not r.ok:
                extra.append((d, s, r.structural, r.brute_force, r.expected))
    dt = time.perf_counter() - t0
    ok = rep.ok and not extra and dt < 600
    say("7 iota-isotropic counts, dim Q<=6 with n<=6 plus named cases, 3 seeds, p=101", ok,
        f"{rep.passed}/{rep.instances} sweep checks + {3 * len(named)} named, {dt:.0f}s")
    assert ok, (rep.failures[:5], extra)


def test_c08_local_lemmas(say):
    rep, dt = timed(run_verify, "local", 4, prime=101, seed=0, instances=500)
    ok = rep.ok and dt < 300 and rep.instances >= 4 * 500
    say("8 local lemmas, 500 instances each", ok, f"{rep.passed}/{rep.instances} checks, {dt:.1f}s")
    assert ok, rep.failures[:5]


def test_c09_weil_duality(say):
    rep, dt = timed(run_verify, "weil", 4, (2, 3))
    ok = rep.ok and dt < 60
    say("9 weil duality n<=4 g in {2,3}, naive pair dual iff c=0", ok,
        f"{rep.passed}/{rep.instances} pairs, {len(rep.notes)} via riemann_roch, {dt:.1f}s")
    assert ok, rep.failures[:5]


def test_c10_ramification_parity(say):
    t0 = time.perf_counter()
    special_bad, nonspecial_fail, nonspecial = [], 0, 0
    for n in range(1, 9):
        for d in enumerate_partitions("C", 2 * n):
            ok_all = all(even for _, _, even in ramification_coefficients(d))
            if is_special(d, "C"):
                if not ok_all:
                    special_bad.append(d)
            else:
                nonspecial += 1
                nonspecial_fail += not ok_all
    # the smallest non-special case, by hand: transpose of [2,1,1] is [3,1]
    assert transpose((2, 1, 1)) == (3, 1)
    known = not all(even for _, _, even in ramification_coefficients((2, 1, 1)))
    dt = time.perf_counter() - t0
    ok = not special_bad and known and nonspecial_fail > 0 and dt < 10
    say("10 ramification parity for special C, n<=8", ok,
        f"{nonspecial_fail}/{nonspecial} non-special fail, {dt:.1f}s")
    assert ok, special_bad[:5]
