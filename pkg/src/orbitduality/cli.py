"""Command-line front end."""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from pathlib import Path

from . import __version__
from .errors import IoError, OrbitDualityError
from .formal_local import assumption_check, sample_generic_char
from .isotropic import build_residue_model, count_report, enumerate_iota_isotropic
from .orbits import orbit_record
from .partitions import enumerate_partitions, fmt, parse, springer_dual, total_for
from .prym_weil import hitchin_instance, instance_record
from .richardson import LeviType, enumerate_polarizations, levi_types, richardson_data, seesaw_check
from .verify import SUITES, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- cache


def cache_dir(flag: str | None) -> Path:
    """--cache-dir, else $ORBITDUALITY_CACHE, else ~/.cache/orbitduality."""
    if flag:
        return Path(flag)
    env = os.environ.get("ORBITDUALITY_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "orbitduality"


def cache_key(suite: str, params: dict) -> str:
    blob = json.dumps({"suite": suite, "params": params, "version": __version__}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:32]


def cached_verify(suite: str, params: dict, directory: Path | None) -> tuple[str, bool, bool]:
    """(report JSON text, ok, cache hit).  A cached report is returned byte for byte."""
    path = None
    if directory is not None:
        path = directory / f"{suite}-{cache_key(suite, params)}.json"
        if path.exists():
            text = path.read_text(encoding="utf-8")
            return text, json.loads(text)["ok"], True
    rep = run_verify(suite, **params)
    text = rep.to_json()
    if path is not None:
        try:
            directory.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(text, encoding="utf-8")
            tmp.replace(path)
        except OSError as exc:
            print(f"warning: cache not written: {exc}", file=sys.stderr)
    return text, rep.ok, False


# ---------------------------------------------------------------- export


ORBIT_COLUMNS = ["partition", "special", "dual", "c", "beta", "eta", "type", "degree_partition",
                 "kl_alpha", "kl_beta", "orbit_dim", "hitchin_base_dim", "moduli_dim"]
POLARIZATION_COLUMNS = ["levi", "type", "ord", "orbit", "index_set", "degree", "dual_levi",
                        "dual_orbit", "dual_degree", "c", "seesaw"]
WEIL_COLUMNS = ["levi", "g", "d_C", "d_B", "N", "dim_V_B", "dim_V_C", "c", "dual",
                "component_count", "naive_dual"]


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (list, tuple)):
        return " ".join(map(str, x))
    return str(x).lower() if isinstance(x, bool) else str(x)


def export_rows(query: str, n: int, t: str = "C", g: int = 2, rule: str = "riemann_roch") -> tuple:
    """(columns, flat rows, JSON records) for an orbits / polarizations / weil query."""
    if query == "orbits":
        recs = [orbit_record(d, t, g) for d in enumerate_partitions(t, total_for(n, t))]
        rows = [{
            "partition": r["partition"], "special": r["special"], "dual": r["dual"],
            "c": r["c"], "beta": r["beta"], "eta": r["eta"], "type": r["type"],
            "degree_partition": r["degree_partition"], "kl_alpha": r["kl"]["alpha"],
            "kl_beta": r["kl"]["beta"], "orbit_dim": r["dims"]["orbit_dim"],
            "hitchin_base_dim": r["dims"]["hitchin_base_dim"], "moduli_dim": r["dims"]["moduli_dim"],
        } for r in recs]
        return ORBIT_COLUMNS, rows, recs
    if query == "polarizations":
        if t != "C":
            raise UsageError("polarization export is indexed by type C Levi types")
        rows = []
        for L, pd in enumerate_polarizations(n, "C"):
            s = seesaw_check(L)
            dual = richardson_data(LeviType(L.ps, L.q + 1, "B"))
            rows.append({
                "levi": L.label(), "type": "C", "ord": list(pd.ord), "orbit": list(pd.orbit),
                "index_set": list(pd.index_set), "degree": pd.degree,
                "dual_levi": dual.levi.label(), "dual_orbit": list(dual.orbit),
                "dual_degree": dual.degree, "c": s["c"], "seesaw": s["seesaw"],
            })
        return POLARIZATION_COLUMNS, rows, rows
    if query == "weil":
        recs, rows = [], []
        for L in levi_types(n, "C"):
            inst = hitchin_instance(n, g, richardson_data(L).orbit, L, rule=rule)
            rec = instance_record(inst)
            v = rec["verdicts"]
            recs.append(rec)
            rows.append({
                "levi": rec["levi"], "g": g, "d_C": rec["d_C"], "d_B": rec["d_B"], "N": rec["N"],
                "dim_V_B": v["dim_V_B"], "dim_V_C": v["dim_V_C"], "c": v["c"], "dual": v["dual"],
                "component_count": v["component_count"], "naive_dual": v["naive_dual"],
            })
        return WEIL_COLUMNS, rows, recs
    raise UsageError(f"unknown export query {query!r}")


def export(query: str, fmt_: str, path: str | Path, n: int, t: str = "C", g: int = 2,
           rule: str = "riemann_roch") -> Path:
    """Write the query result as JSON records or CSV rows (UTF-8, one row per line)."""
    columns, rows, recs = export_rows(query, n, t, g, rule)
    if fmt_ == "json":
        text = json.dumps(recs, indent=2) + "\n"
    elif fmt_ == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r[c]) for c in columns])
        text = buf.getvalue()
    else:
        raise UsageError(f"unknown format {fmt_!r}")
    path = Path(path)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    return path


# ---------------------------------------------------------------- output


def _plain(x):
    return [_plain(y) for y in x] if isinstance(x, (list, tuple)) else x


def emit(obj, as_json: bool, table=None) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, default=list))
    elif table is not None:
        table()
    else:
        for k, v in obj.items():
            print(f"{k}: {v}")


def print_table(columns: list, rows: list) -> None:
    cells = [[_cell(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    print("  ".join(c.ljust(w) for c, w in zip(columns, widths)))
    for row in cells:
        print("  ".join(x.ljust(w) for x, w in zip(row, widths)))


# ---------------------------------------------------------------- commands


def cmd_dual(args) -> int:
    d = parse(args.partition)
    direction = "C_to_B" if args.type == "C" else "B_to_C"
    e = springer_dual(d, direction)
    emit({"partition": list(d), "type": args.type, "dual": list(e)}, args.json,
         lambda: print(f"{fmt(d)} ({args.type}) -> {fmt(e)}"))
    return EXIT_OK


def cmd_orbit(args) -> int:
    rec = orbit_record(parse(args.partition), args.type, args.genus or 2)
    emit(rec, args.json)
    return EXIT_OK


def cmd_richardson(args) -> int:
    if args.levi:
        levis = [LeviType.parse(args.levi, args.type)]
        if levis[0].n != args.n:
            raise UsageError(f"Levi {args.levi} has rank {levis[0].n}, not {args.n}")
    else:
        levis = levi_types(args.n, args.type)
    rows = []
    for L in levis:
        pd = richardson_data(L)
        row = {"levi": L.label(), "ord": list(pd.ord), "orbit": list(pd.orbit),
               "index_set": list(pd.index_set), "degree": pd.degree}
        if args.type == "C":
            s = seesaw_check(L)
            row.update(dual_levi=s["levi_B"], deg_PB=s["deg_PB"], c=s["c"],
                       seesaw=s["seesaw"], index_sum=s["index_sum"])
        rows.append(row)
    emit(rows, args.json, lambda: print_table(list(rows[0]), rows))
    if args.type == "C" and not all(r["seesaw"] and r["index_sum"] for r in rows):
        return EXIT_FAIL
    return EXIT_OK


def cmd_local(args) -> int:
    prime = args.prime or 101
    seed = args.seed or 0
    if args.action == "sample":
        if not args.partition:
            raise UsageError("local sample needs --partition")
        chi = sample_generic_char(parse(args.partition), args.type, p=prime, seed=seed)
        rpt = assumption_check(chi)
        out = {"partition": list(chi.target), "type": chi.type, "p": chi.p, "N": chi.N,
               "seed": chi.seed, "retries": chi.retries, "degrees": list(chi.degrees),
               "has_lambda": chi.has_lambda, "factors": chi.describe(),
               "passed": rpt["passed"], "eta_sharp": rpt["eta_sharp"]}

        def table():
            print(f"{fmt(chi.target)} type {chi.type}, p={chi.p}, N={chi.N}, retries={chi.retries}")
            for row in chi.describe():
                print(f"  f{row['factor']}: degree {row['degree']}, sigma -> f{row['sigma']}, "
                      f"constant {row['coefficients'][0][:3]}...")
            print(f"assumptions {'pass' if rpt['passed'] else 'FAIL'}, eta sharp: {rpt['eta_sharp']}")
        emit(out, args.json, table)
        return EXIT_OK if rpt["passed"] else EXIT_FAIL
    params = dict(max_n=args.max_n, g_list=[2], prime=prime, seed=seed, instances=args.instances)
    return _run_suite("local", params, args)


def cmd_isotropic(args) -> int:
    prime = args.prime or 101
    seed = args.seed or 0
    d = parse(args.partition)
    if args.method == "both":
        r = count_report(d, prime, seed)
        m = build_residue_model(d, prime, r.used_seed)
        sols = enumerate_iota_isotropic(m, "structural")
        out = {"partition": list(d), "p": prime, "seed": seed, "used_seed": r.used_seed,
               "resamples": r.resamples, "expected": r.expected, "structural": r.structural,
               "brute_force": r.brute_force, "same_sets": r.same_sets,
               "signs": [_plain(s.signs) for s in sols], "ok": r.ok}
        ok = r.ok
    else:
        m = build_residue_model(d, prime, seed)
        sols = enumerate_iota_isotropic(m, args.method)
        out = {"partition": list(d), "p": prime, "seed": seed, "method": args.method,
               "count": len(sols), "signs": [_plain(s.signs) for s in sols]}
        ok = True

    def table():
        for k, v in out.items():
            if k != "signs":
                print(f"{k}: {v}")
        for s in out["signs"]:
            print("  signs " + " | ".join(_sign_str(blk) for blk in s))
    emit(out, args.json, table)
    return EXIT_OK if ok else EXIT_FAIL


def _sign_str(blk) -> str:
    return " ".join("".join("+" if x > 0 else "-" for x in grp) or "." for grp in blk)


def cmd_weil(args) -> int:
    g = args.g or args.genus or 2
    L = LeviType.parse(args.levi, "C")
    inst = hitchin_instance(args.n, g, parse(args.orbit), L, rule=args.rule)
    rec = instance_record(inst)

    def table():
        print(f"d_C={fmt(inst.d_C)} d_B={fmt(inst.d_B)} Levi {L.label()} g={g} N={rec['N']}")
        print(f"V_B basis: {rec['V_B']}")
        print(f"V_C basis: {rec['V_C']}")
        for k, v in rec["verdicts"].items():
            print(f"  {k}: {v}")
    emit(rec, args.json, table)
    v = rec["verdicts"]
    return EXIT_OK if v["dual"] and v["component_count"] == 2 else EXIT_FAIL


def _run_suite(suite: str, params: dict, args) -> int:
    directory = None if args.no_cache else cache_dir(args.cache_dir)
    text, ok, hit = cached_verify(suite, params, directory)
    if args.json:
        sys.stdout.write(text)
    else:
        rep = json.loads(text)
        parts = rep["parts"] or [rep]
        for r in parts:
            status = "ok" if r["ok"] else f"{r['failed']} FAILED"
            print(f"{r['suite']:<10} {r['passed']}/{r['instances']} passed  {status}")
            for f in r["failures"][:5]:
                print(f"    {json.dumps(f)}")
            for note in r["notes"][:5]:
                print(f"    note: {note}")
        if hit:
            print("(cached)")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}")
    if args.genus_list:
        g_list = list(args.genus_list)
    else:
        g_list = [args.genus] if args.genus else [2, 3]
    params = dict(max_n=args.max_n, g_list=g_list,
                  prime=args.prime or 101, seed=args.seed or 0, instances=args.instances)
    return _run_suite(args.suite, params, args)


def cmd_export(args) -> int:
    n = args.n or args.max_n
    if not n:
        raise UsageError("export needs --n")
    path = export(args.query, args.format, args.out, n, args.type, args.genus or 2, args.rule)
    print(f"wrote {path}")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _globals(defaults: bool) -> argparse.ArgumentParser:
    """Global flags, accepted before or after the subcommand."""
    sup = {} if defaults else {"default": argparse.SUPPRESS}
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--max-n", type=int, **({"default": None} if defaults else sup))
    g.add_argument("--genus", type=int, **({"default": None} if defaults else sup))
    g.add_argument("--prime", type=int, **({"default": None} if defaults else sup))
    g.add_argument("--seed", type=int, **({"default": None} if defaults else sup))
    g.add_argument("--json", action="store_true", **({"default": False} if defaults else sup))
    g.add_argument("--cache-dir", **({"default": None} if defaults else sup))
    return g


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbitduality", parents=[_globals(True)],
                                 description="Springer duality, Richardson data and Prym "
                                             "cover checks for type B/C Hitchin systems.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    common = _globals(False)

    p = sub.add_parser("dual", parents=[common], help="Springer dual of a special partition")
    p.add_argument("partition")
    p.add_argument("--type", choices=("B", "C"), default="C")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("orbit", parents=[common], help="invariants of one orbit")
    p.add_argument("partition")
    p.add_argument("--type", choices=("B", "C"), default="B")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("richardson", parents=[common], help="polarizations and seesaw verdicts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--type", choices=("B", "C"), default="C")
    p.add_argument("--levi")
    p.set_defaults(func=cmd_richardson)

    p = sub.add_parser("local", parents=[common], help="local characteristic polynomials")
    p.add_argument("action", choices=("sample", "verify"))
    p.add_argument("--partition")
    p.add_argument("--type", choices=("B", "C"), default="B")
    p.add_argument("--suite", action="store_true", help="run the randomized lemma suite")
    p.add_argument("--instances", type=int, default=100)
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_local)

    p = sub.add_parser("isotropic", parents=[common], help="count iota-isotropic subspaces")
    p.add_argument("--partition", required=True)
    p.add_argument("--method", choices=("structural", "brute_force", "both"), default="both")
    p.set_defaults(func=cmd_isotropic)

    p = sub.add_parser("weil", parents=[common], help="F_2 Weil model of one Richardson pair")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int)
    p.add_argument("--orbit", required=True)
    p.add_argument("--levi", required=True)
    p.add_argument("--rule", choices=("degree", "riemann_roch"), default="degree")
    p.set_defaults(func=cmd_weil)

    p = sub.add_parser("verify", parents=[common], help="run an invariant sweep")
    p.add_argument("suite", help="one of " + ", ".join(SUITES) + " or all")
    p.add_argument("--genus-list", type=int, nargs="+")
    p.add_argument("--instances", type=int, default=100)
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", parents=[common], help="write orbit, Levi or Weil tables")
    p.add_argument("query", choices=("orbits", "polarizations", "weil"))
    p.add_argument("--n", type=int)
    p.add_argument("--type", choices=("B", "C"), default="C")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", required=True)
    p.add_argument("--rule", choices=("degree", "riemann_roch"), default="riemann_roch")
    p.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (OrbitDualityError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
