"""Invariant sweeps behind ``orbitduality verify``.

Every suite is deterministic given its parameters.  Wall time is recorded
but kept out of the serialized report so identical runs give identical
bytes.
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from . import oracles
from .errors import (
    ParityGuard,
    PrecisionLoss,
    RetriesExhausted,
    SingularQuotient,
    UnknownSuite,
)
from .formal_local import (
    _random_factor,
    assumption_check,
    companion,
    eta_bounds,
    is_eisenstein,
    poly_at_matrix,
    random_flag_theta,
    resultant_order,
    sample_generic_char,
    split_witness,
    splitting_criterion,
)
from .isotropic import build_residue_model, count_report
from .orbits import (
    HitchinContext,
    corner_quotient_order,
    dimension_report,
    eta_sequence,
    orbit_dim,
    orbit_invariants,
    ramification_coefficients,
)
from .partitions import enumerate_partitions, fmt, is_special, springer_dual, total_for
from .prym_weil import hitchin_instance
from .richardson import (
    a_pb_from_generators,
    component_groups,
    levi_types,
    richardson_data,
    seesaw_check,
)
from .series import Series

SUITES = ("duality", "eta", "dims", "seesaw", "groups", "isotropic", "weil", "local")

# rank bound used when --max-n is not given
DEFAULT_MAX_N = {
    "duality": 8, "eta": 6, "dims": 8, "seesaw": 6, "groups": 6,
    "isotropic": 6, "weil": 4, "local": 4,
}


@dataclass
class VerifyParams:
    max_n: int | None = None
    g_list: tuple = (2, 3)
    prime: int = 101
    seed: int = 0
    instances: int = 100
    n_seeds: int = 3
    max_dim_q: int = 6

    def bound(self, suite: str) -> int:
        return DEFAULT_MAX_N[suite] if self.max_n is None else self.max_n


@dataclass
class VerificationReport:
    suite: str
    instances: int = 0
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)
    seeds: list = field(default_factory=list)
    primes: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    wall_time: float = 0.0
    parts: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def check(self, ok: bool, input, expected, got) -> bool:
        self.instances += 1
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append({"input": input, "expected": expected, "got": got})
        return ok

    def to_dict(self, timing: bool = False) -> dict:
        out = asdict(self)
        out["parts"] = [r.to_dict(timing) for r in self.parts]
        if not timing:
            out.pop("wall_time")
            for r in out["parts"]:
                r.pop("wall_time", None)
        out["ok"] = self.ok
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, default=_jsonable) + "\n"

    def summary(self) -> str:
        head = f"{self.suite}: {self.passed}/{self.instances} passed"
        return head + ("" if self.ok else f", {self.failed} FAILED")


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if isinstance(x, tuple):
        return list(x)
    return str(x)


# ---------------------------------------------------------------- suites


def suite_duality(prm: VerifyParams) -> VerificationReport:
    rep = VerificationReport("duality")
    for n in range(1, prm.bound("duality") + 1):
        sc = enumerate_partitions("C", 2 * n, special_only=True)
        sb = enumerate_partitions("B", 2 * n + 1, special_only=True)
        images = [springer_dual(d, "C_to_B") for d in sc]
        rep.check(sorted(images) == sorted(sb), {"n": n, "check": "bijection"},
                  len(sb), len(set(images)))
        for d, e in zip(sc, images):
            rep.check(springer_dual(e, "B_to_C") == d, {"n": n, "d_C": fmt(d)},
                      fmt(d), fmt(springer_dual(e, "B_to_C")))
            rep.check(orbit_dim(d, "C") == orbit_dim(e, "B"), {"n": n, "d_C": fmt(d), "check": "dim"},
                      orbit_dim(d, "C"), orbit_dim(e, "B"))
    return rep


def suite_eta(prm: VerifyParams) -> VerificationReport:
    """eta agrees on dual pairs; among special pairs eta-equality forces duality."""
    rep = VerificationReport("eta")
    for n in range(1, prm.bound("eta") + 1):
        all_b = enumerate_partitions("B", 2 * n + 1)
        all_c = enumerate_partitions("C", 2 * n)
        eta_c = {}
        for d in all_c:
            eta_c.setdefault(eta_sequence(d, "C"), []).append(d)
        coincidences = 0
        for b in all_b:
            sb = is_special(b, "B")
            partner = springer_dual(b, "B_to_C") if sb else None
            eb = eta_sequence(b, "B")
            if sb:
                rep.check(eta_sequence(partner, "C") == eb, {"d_B": fmt(b)}, list(eb),
                          list(eta_sequence(partner, "C")))
            for c in eta_c.get(eb, []):
                if c == partner:
                    continue
                if sb and is_special(c, "C"):
                    rep.check(False, {"d_B": fmt(b), "d_C": fmt(c)}, "not eta-equal", "eta-equal")
                    continue
                coincidences += 1
                # outside the special range the orbit dimension tells them apart
                rep.check(orbit_dim(b, "B") < orbit_dim(c, "C"),
                          {"d_B": fmt(b), "d_C": fmt(c), "check": "dim separates"},
                          "dim O_B < dim O_C", [orbit_dim(b, "B"), orbit_dim(c, "C")])
        if coincidences:
            rep.notes.append(f"n={n}: {coincidences} eta-equal pairs with a non-special type B side")
    return rep


def suite_dims(prm: VerifyParams) -> VerificationReport:
    """Half-dimension, eta-sum identity and ramification parity."""
    rep = VerificationReport("dims")
    for n in range(1, prm.bound("dims") + 1):
        for g in prm.g_list:
            ctx = HitchinContext(n, g)
            for t in ("B", "C"):
                for d in enumerate_partitions(t, total_for(n, t), special_only=True):
                    r = dimension_report(d, t, ctx)
                    rep.check(r["half_check"] and r["eta_sum_identity"],
                              {"d": fmt(d), "type": t, "g": g}, True,
                              [r["half_check"], r["eta_sum_identity"]])
        for d in enumerate_partitions("C", 2 * n):
            rows = ramification_coefficients(d)
            if is_special(d, "C"):
                rep.check(all(r[2] for r in rows), {"d_C": fmt(d), "check": "parity"}, True,
                          [r[2] for r in rows])
    return rep


def suite_seesaw(prm: VerifyParams) -> VerificationReport:
    rep = VerificationReport("seesaw")
    for n in range(1, prm.bound("seesaw") + 1):
        for L in levi_types(n, "C"):
            s = seesaw_check(L)
            ok = s["seesaw"] and s["index_sum"] and s["springer_dual"]
            rep.check(ok, {"levi_C": L.label()}, True,
                      {k: s[k] for k in ("seesaw", "index_sum", "springer_dual")})
    return rep


def suite_groups(prm: VerifyParams) -> VerificationReport:
    """Component group quotients, A_PB by generators, and the corner oracle."""
    from . import gf2

    rep = VerificationReport("groups")
    bound = prm.bound("groups")
    for n in range(1, bound + 1):
        for L in levi_types(n, "C"):
            cg = component_groups(L)
            c = orbit_invariants(cg.d_B, "B").c
            a, b = cg.quotient_orders
            rep.check(a * b == 2 ** c, {"levi_C": L.label()}, 2 ** c, a * b)
            rep.check(gf2.same_span(cg.A_PB, a_pb_from_generators(L)),
                      {"levi_C": L.label(), "check": "A_PB"}, list(cg.A_PB),
                      a_pb_from_generators(L))
    # Lusztig quotient against the corner count, total up to 2*bound + 5
    for total in range(1, 2 * bound + 6, 2):
        for d in enumerate_partitions("B", total, special_only=True):
            c = orbit_invariants(d, "B").c
            rep.check(corner_quotient_order(d) == 2 ** c, {"d_B": fmt(d), "check": "corners"},
                      2 ** c, corner_quotient_order(d))
    return rep


def suite_isotropic(prm: VerifyParams) -> VerificationReport:
    rep = VerificationReport("isotropic", primes=[prm.prime])
    seeds = [prm.seed + k for k in range(prm.n_seeds)]
    rep.seeds = seeds
    for n in range(1, prm.bound("isotropic") + 1):
        for d in enumerate_partitions("B", 2 * n + 1, special_only=True):
            if build_residue_model(d, prm.prime, prm.seed).dim > prm.max_dim_q:
                continue
            for s in seeds:
                try:
                    r = count_report(d, prm.prime, s)
                except RetriesExhausted as exc:
                    rep.check(False, {"d_B": fmt(d), "seed": s}, "generic draw", str(exc))
                    continue
                rep.check(r.ok, {"d_B": fmt(d), "seed": s, "used_seed": r.used_seed},
                          r.expected, {"structural": r.structural, "brute_force": r.brute_force})
                if r.resamples:
                    rep.notes.append(f"{fmt(d)} seed {s}: {r.resamples} resamples")
    return rep


def suite_weil(prm: VerifyParams) -> VerificationReport:
    """Duality of V_B and V_C; guarded instances are rerun with the Riemann-Roch count."""
    rep = VerificationReport("weil")
    for n in range(1, prm.bound("weil") + 1):
        for L in levi_types(n, "C"):
            d_C = richardson_data(L).orbit
            for g in prm.g_list:
                try:
                    inst = hitchin_instance(n, g, d_C, L, rule="degree")
                    rule = "degree"
                except ParityGuard:
                    inst = hitchin_instance(n, g, d_C, L, rule="riemann_roch")
                    rule = "riemann_roch"
                v = inst.verdicts
                want_naive = v["c"] == 0
                ok = (v["dual"] and v["dual_swapped"] and v["component_count"] == 2
                      and v["dims_add_up"] and v["naive_dual"] == want_naive)
                rep.check(ok, {"levi_C": L.label(), "d_C": fmt(d_C), "g": g, "rule": rule},
                          {"dual": True, "component_count": 2, "naive_dual": want_naive},
                          {k: v[k] for k in ("dual", "component_count", "naive_dual")})
                if rule != "degree":
                    rep.notes.append(f"{L.label()} g={g}: odd 2N, checked with riemann_roch")
    return rep


# ---------------------------------------------------------------- local lemmas


def _series_poly(f):
    return [oracles.trim(c.c) for c in f]


def _oracle_resultant_order(fi, fj) -> float:
    return oracles.porder(oracles.series_det_exact(poly_at_matrix(fi, companion(fj))))


def _local_orbits(bound: int) -> list:
    out = []
    for n in range(1, bound + 1):
        for t in ("C", "B"):
            out += [(d, t) for d in enumerate_partitions(t, total_for(n, t), special_only=True)]
    return out


def local_resultants(rep: VerificationReport, rng: random.Random, p: int, count: int) -> None:
    N = 8
    for _ in range(count):
        ei, ej = sorted((rng.randint(1, 4), rng.randint(1, 4)), reverse=True)
        ci = rng.randrange(1, p)
        cj = rng.choice([c for c in range(1, p) if c != ci])
        fi = _random_factor(rng, ei, False, ci, p, N)
        fj = _random_factor(rng, ej, False, cj, p, N)
        got = resultant_order(fi, fj)
        ref = _oracle_resultant_order(fi, fj)
        rep.check(got == ej == ref, {"check": "resultant", "e": [ei, ej]}, ej, [got, ref])


def local_eisenstein(rep: VerificationReport, rng: random.Random, p: int, count: int) -> None:
    N = 6
    for _ in range(count):
        e = rng.randint(1, 5)
        f = _random_factor(rng, e, rng.random() < 0.5 and e % 2 == 0, rng.randrange(1, p), p, N)
        # the constant term of an Eisenstein polynomial is det of minus its companion
        d0 = oracles.porder(oracles.series_det_exact(companion(f)))
        rep.check(is_eisenstein(f) and d0 == 1, {"check": "eisenstein", "e": e}, True,
                  [is_eisenstein(f), d0])
        bad = [Series(c.c, p, N) for c in f]
        k = rng.randrange(e)
        if k == 0 and rng.random() < 0.5:
            bad[0] = Series([0, 0] + [rng.randrange(p) for _ in range(N - 2)], p, N)
        else:
            bad[k] = bad[k] + Series.const(rng.randrange(1, p), p, N)
        rep.check(not is_eisenstein(bad), {"check": "not eisenstein", "e": e, "k": k}, False,
                  is_eisenstein(bad))


def local_orders(rep: VerificationReport, rng: random.Random, p: int, count: int,
                 bound: int) -> None:
    cases = _local_orbits(bound)
    for k in range(count):
        d, t = cases[k % len(cases)]
        s = rng.randrange(2 ** 31)
        # truncate past every bound so the plain expansion below is exact
        N = max(sum(d) + 2, 2 * max(d) + 2)
        chi = sample_generic_char(d, t, p=p, N=N, seed=s)
        rpt = assumption_check(chi)
        # independent expansion over F_p[t][lambda]
        prod = [[1]] if not chi.has_lambda else [[], [1]]
        for f in chi.factors:
            nxt = [[] for _ in range(len(prod) + len(f) - 1)]
            for i, a in enumerate(prod):
                for j, b in enumerate(_series_poly(f)):
                    nxt[i + j] = oracles.padd(nxt[i + j], oracles.pmul(a, b, p)[:N], p)
            prod = nxt
        total = len(prod) - 1
        bounds = eta_bounds(tuple(d), total)
        orders = [oracles.porder(prod[total - i]) for i in range(1, total + 1)]
        ok = all(o >= b for o, b in zip(orders, bounds))
        sharp = all(orders[2 * i - 1] == bounds[2 * i - 1] for i in range(1, total // 2 + 1))
        ok &= rpt["passed"] and all(r["ok"] for r in rpt["resultants"]) and all(rpt["eisenstein"])
        rep.check(ok and sharp, {"check": "orders", "d": fmt(d), "type": t, "seed": s},
                  bounds, orders)


def local_splitting(rep: VerificationReport, rng: random.Random, p: int, count: int) -> None:
    N = 6
    undecided = 0
    for k in range(count):
        if k % 4 == 3:
            theta, F = split_witness(rng, p, N)
            want = True
        else:
            theta, F = random_flag_theta(rng, p, N)
            want = oracles.section_exists(theta, F)
        try:
            got = splitting_criterion(theta, F)
        except (SingularQuotient, PrecisionLoss):
            got = None
        if want is None or got is None:
            undecided += 1
            continue
        rep.check(got == want, {"check": "splitting", "k": k}, want, got)
    if undecided:
        rep.notes.append(f"splitting: {undecided} instances undecided at truncation")


def suite_local(prm: VerifyParams) -> VerificationReport:
    rep = VerificationReport("local", seeds=[prm.seed], primes=[prm.prime])
    rng = random.Random(f"local:{prm.seed}:{prm.prime}")
    local_resultants(rep, rng, prm.prime, prm.instances)
    local_eisenstein(rep, rng, prm.prime, prm.instances)
    local_orders(rep, rng, prm.prime, prm.instances, prm.bound("local"))
    local_splitting(rep, rng, prm.prime, prm.instances)
    return rep


RUNNERS: dict[str, Callable[[VerifyParams], VerificationReport]] = {
    "duality": suite_duality,
    "eta": suite_eta,
    "dims": suite_dims,
    "seesaw": suite_seesaw,
    "groups": suite_groups,
    "isotropic": suite_isotropic,
    "weil": suite_weil,
    "local": suite_local,
}


def run_verify(suite: str, max_n: int | None = None, g_list=(2, 3), prime: int = 101,
               seed: int = 0, **extra) -> VerificationReport:
    """Run one named suite, or every suite for ``all``."""
    prm = VerifyParams(max_n, tuple(g_list), prime, seed, **extra)
    if suite == "all":
        t0 = time.perf_counter()
        parts = [run_verify(s, max_n, g_list, prime, seed, **extra) for s in SUITES]
        rep = VerificationReport("all", parts=parts)
        for r in parts:
            rep.instances += r.instances
            rep.passed += r.passed
            rep.failed += r.failed
        rep.seeds, rep.primes = [seed], [prime]
        rep.wall_time = time.perf_counter() - t0
        return rep
    if suite not in RUNNERS:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
    t0 = time.perf_counter()
    rep = RUNNERS[suite](prm)
    if not rep.seeds:
        rep.seeds = [seed]
    if not rep.primes:
        rep.primes = [prime]
    rep.wall_time = time.perf_counter() - t0
    return rep
