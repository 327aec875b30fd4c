"""Command-line harness: transform, construct, solve, verify, certify.

Exit status: 0 all checks pass, 1 a check failed, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Sequence

from distk import __version__
from distk import constructions as cons
from distk.canon import is_isomorphic
from distk.graph import (
    clique_number,
    distance_k_graph,
    edge_count,
    is_triangle_free,
)
from distk.graph6 import emit_graph6
from distk.search import (
    ClassFilter,
    SearchError,
    SearchProblem,
    Source,
    characterize,
    ingest_graph6_stream,
    solve,
    solve_nonbipartite_triangle_free,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _open_out(path: str | None):
    if path in (None, "-"):
        return sys.stdout
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w")


def _read_lines(path: str) -> list[str]:
    if path == "-":
        return sys.stdin.read().splitlines()
    return Path(path).read_text().splitlines()


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def _parse_counts(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x)


# --------------------------------------------------------------------------
# transform / construct / certify
# --------------------------------------------------------------------------


def cmd_transform(args) -> int:
    lines = _read_lines(args.input)
    out = _open_out(args.out)
    try:
        for g in ingest_graph6_stream(lines):
            out.write(emit_graph6(distance_k_graph(g, args.k)) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


_DEFAULT_SUMMARY_K = {"turan": 2, "g2-extremal": 2, "spider": 3}


def _spec_from_args(args) -> cons.ConstructionSpec:
    if args.json:
        return cons.spec_from_json(args.json)
    v = args.variant
    need = {
        "turan": ("n", "r"),
        "g2-extremal": ("n",),
        "double-broom": ("n", "k", "a", "b"),
        "t-broom": ("k", "t", "leaves"),
        "spider": ("n",),
    }
    if v is None:
        raise UsageError("give a variant or --json")
    missing = [f"--{x}" for x in need[v] if getattr(args, x) is None]
    if missing:
        raise UsageError(f"{v} needs {' '.join(missing)}")
    if v == "turan":
        return cons.Turan(args.n, args.r)
    if v == "g2-extremal":
        size_a = args.size_a if args.size_a is not None else (args.n - 1) // 2
        return cons.G2Extremal(args.n, size_a, args.size_b_prime or 1)
    if v == "double-broom":
        return cons.DoubleBroom(args.n, args.k, args.a, args.b)
    if v == "t-broom":
        return cons.TBroom(args.k, args.t, _parse_counts(args.leaves))
    if args.attach is not None:
        counts = _parse_counts(args.attach)
        legs = args.legs if args.legs is not None else len(counts)
        return cons.Spider(args.n, legs, counts)
    return cons.Spider.round_robin(args.n, args.legs)


def cmd_construct(args) -> int:
    spec = _spec_from_args(args)
    g = cons.build(spec)
    name = cons.variant_name(spec)
    k = args.summary_k or getattr(spec, "k", None) or _DEFAULT_SUMMARY_K[name]
    gk = distance_k_graph(g, k)
    out = _open_out(args.out)
    try:
        out.write(emit_graph6(g) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    print(f"{cons.spec_to_json(spec)} n={g.n} |E(G)|={edge_count(g)} |E(G_{k})|={edge_count(gk)}",
          file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK


def certify_lines(lines: Sequence[str], k: int, t: int, claimed: int) -> list[tuple[int, bool, int, int]]:
    """``(line, ok, |E(G_k)|, omega(G_k))`` per graph; ok iff omega <= t and the
    edge count equals the claim."""
    verdicts = []
    nonblank = [i for i, line in enumerate(lines, start=1) if line.strip()]
    for no, g in zip(nonblank, ingest_graph6_stream(lines)):
        gk = distance_k_graph(g, k)
        m = edge_count(gk)
        w = clique_number(gk)
        verdicts.append((no, w <= t and m == claimed, m, w))
    return verdicts


def cmd_certify(args) -> int:
    lines = _read_lines(args.input)
    verdicts = certify_lines(lines, args.k, args.t, args.claim)
    for no, ok, m, w in verdicts:
        print(f"line {no}: {'PASS' if ok else 'FAIL'} |E(G_{args.k})|={m} omega={w}")
    return EXIT_OK if all(v[1] for v in verdicts) else EXIT_FAIL


# --------------------------------------------------------------------------
# solve
# --------------------------------------------------------------------------


def cmd_solve(args) -> int:
    source = Source(args.source)
    if source is Source.EXTERNAL_GRAPH6_STREAM and not args.input:
        raise UsageError("--source file needs --input")
    p = SearchProblem(args.n, args.k, args.t, ClassFilter(args.class_filter), source, args.input)
    outcome = solve(p, shards=args.shards)
    if args.out:
        with _open_out(args.out) as fh:
            json.dump(outcome.to_json(), fh, indent=2)
            fh.write("\n")
    if args.witnesses:
        with _open_out(args.witnesses) as fh:
            fh.writelines(s + "\n" for s in outcome.witness_g6)
    line = f"ex_{p.k}(n={p.n}, K_{p.t + 1}) = {outcome.optimum}"
    line += f"  [{len(outcome.extremal_certificates)} extremal classes, {outcome.enumerated} graphs]"
    print(line)
    if p.k == 3 and p.t == 2 and p.n in (7, 8) and p.class_filter is ClassFilter.ALL:
        tu = cons.tu_bound(p.n, 3)
        rel = "exceeds" if outcome.optimum > tu else "does not exceed"
        print(f"note: (n-k+1)^2/4 = {tu}; the computed value {rel} it "
              f"(k=3, n=8 is the documented exception to this formula)")
    return EXIT_OK


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------


def _write_g6(path: Path, graphs_g6: Sequence[str]) -> str:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(s + "\n" for s in graphs_g6))
    return str(path)


def _row(n, computed, expected, match, witnesses_path=None, **extra) -> dict:
    row = {"n": n, "computed": computed, "expected": expected, "match": bool(match),
           "witnesses_path": witnesses_path}
    row.update(extra)
    return row


def _claim_thm1_formula(ns, out: Path, shards) -> list[dict]:
    rows = []
    for n in ns:
        o = solve(SearchProblem(n, 2, 2), shards=shards)
        exp = cons.ex2_bound(n)
        path = _write_g6(out / f"n{n}.g6", o.witness_g6)
        rows.append(_row(n, o.optimum, exp, o.optimum == exp, path, k=2, t=2))
    return rows


def _claim_thm1_charfull(ns, out: Path, shards) -> list[dict]:
    rows = []
    for n in ns:
        rep = characterize(n, shards=shards)
        path = _write_g6(out / f"n{n}.g6", [str(c) for c in sorted(rep.found)])
        rows.append(_row(n, len(rep.found), len(rep.predicted), rep.equal, path, k=2, t=2,
                         claimed_optimum=rep.optimum, missing=sorted(map(str, rep.missing)),
                         extra=sorted(map(str, rep.extra))))
    return rows


def _claim_thm3_lowerbound(ns, out: Path, shards) -> list[dict]:
    rows = []
    for n in ns:
        exp = cons.ex3_bound(n).value
        specs = cons.balanced_double_brooms(n, 3) + cons.spiders(n)
        graphs = [cons.build(s) for s in specs]
        counts = []
        ok = True
        for g in graphs:
            g3 = distance_k_graph(g, 3)
            counts.append(edge_count(g3))
            ok &= is_triangle_free(g3) and counts[-1] == exp
        path = _write_g6(out / f"n{n}.g6", [emit_graph6(g) for g in graphs])
        computed = sorted(set(counts))
        rows.append(_row(n, computed[0] if len(computed) == 1 else computed, exp, ok, path,
                         k=3, t=2, constructions=len(specs)))
    return rows


def _claim_thm3_noniso(ns, out: Path, shards) -> list[dict]:
    rows = []
    for n in ns:
        if n % 2 == 0 or n < 5:
            raise UsageError("thm3-noniso needs odd n >= 5")
        broom = cons.build(cons.DoubleBroom(n, 3, (n - 2) // 2, (n - 1) // 2))
        spider = cons.build(cons.Spider(n, (n - 1) // 2, (1,) * ((n - 1) // 2)))
        b3, s3 = distance_k_graph(broom, 3), distance_k_graph(spider, 3)
        iso = is_isomorphic(b3, s3)
        exp = cons.ex3_bound(n).value
        path = _write_g6(out / f"n{n}.g6", [emit_graph6(broom), emit_graph6(spider)])
        computed = {"double_broom": edge_count(b3), "spider": edge_count(s3), "isomorphic": iso}
        match = edge_count(b3) == edge_count(s3) == exp and not iso
        rows.append(_row(n, computed, {"edges": exp, "isomorphic": False}, match, path, k=3, t=2))
    return rows


def _claim_conj2_n8(ns, out: Path, shards) -> list[dict]:
    rows = []
    for n in ns:
        o = solve(SearchProblem(n, 3, 2), shards=shards)
        bound = cons.tu_bound(n, 3)
        path = _write_g6(out / f"n{n}.g6", o.witness_g6)
        rows.append(_row(n, o.optimum, f"> {bound}", o.optimum > bound, path, k=3, t=2))
    return rows


def _claim_conj2_small(ns, out: Path, shards) -> list[dict]:
    rows = []
    for n in ns:
        o = solve(SearchProblem(n, 3, 2), shards=shards)
        exp = cons.ex3_bound(n).value
        path = _write_g6(out / f"n{n}.g6", o.witness_g6)
        rows.append(_row(n, o.optimum, exp, o.optimum == exp, path, k=3, t=2))
    return rows


def _claim_thm4_bound(ns, out: Path, shards) -> list[dict]:
    rows = []
    for n in ns:
        o = solve_nonbipartite_triangle_free(n, shards=shards)
        exp = cons.kp_nonbipartite_bound(n)
        path = _write_g6(out / f"n{n}.g6", o.witness_g6)
        rows.append(_row(n, o.optimum, exp, o.optimum == exp, path, k=1, t=2))
    return rows


CLAIMS: dict[str, tuple[Callable, list[int]]] = {
    "thm1-formula": (_claim_thm1_formula, list(range(5, 10))),
    "thm1-charfull": (_claim_thm1_charfull, list(range(5, 9))),
    "thm3-lowerbound": (_claim_thm3_lowerbound, list(range(5, 13))),
    "thm3-noniso": (_claim_thm3_noniso, [9]),
    "conj2-n8-exception": (_claim_conj2_n8, [8]),
    "conj2-small": (_claim_conj2_small, [4, 5, 6, 7, 9]),
    "thm4-bound": (_claim_thm4_bound, list(range(5, 9))),
}


def run_claim(claim_id: str, ns: Sequence[int] | None, out_dir: str | Path, shards: int = 1) -> dict:
    if claim_id not in CLAIMS:
        raise UsageError(f"unknown claim {claim_id!r}; known: {', '.join(CLAIMS)}")
    fn, default_ns = CLAIMS[claim_id]
    ns = list(ns) if ns else default_ns
    out = Path(out_dir) / claim_id
    rows = fn(ns, out, shards)
    return {
        "claim_id": claim_id,
        "n_range": ns,
        "rows": rows,
        "overall": "pass" if all(r["match"] for r in rows) else "fail",
        "provenance": {
            "tool": "distk",
            "version": __version__,
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        },
    }


def write_report(report: dict, out_dir: str | Path) -> tuple[Path, Path]:
    base = Path(out_dir) / report["claim_id"]
    base.mkdir(parents=True, exist_ok=True)
    jpath = base / "report.json"
    cpath = base / "report.csv"
    jpath.write_text(json.dumps(report, indent=2, default=str) + "\n")
    with open(cpath, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["claim_id", "n", "computed", "expected", "match", "witnesses_path"])
        for r in report["rows"]:
            w.writerow([report["claim_id"], r["n"], r["computed"], r["expected"],
                        r["match"], r["witnesses_path"]])
    return jpath, cpath


def cmd_verify(args) -> int:
    ns = _parse_range(args.n_range) if args.n_range else None
    claims = list(CLAIMS) if args.claim == "all" else [args.claim]
    status = EXIT_OK
    for claim in claims:
        report = run_claim(claim, ns if args.claim != "all" else None, args.out, args.shards)
        jpath, _ = write_report(report, args.out)
        for r in report["rows"]:
            print(f"{claim} n={r['n']}: computed={r['computed']} expected={r['expected']} "
                  f"{'PASS' if r['match'] else 'FAIL'}")
        print(f"{claim}: {report['overall'].upper()} ({jpath})")
        if report["overall"] != "pass":
            status = EXIT_FAIL
    return status


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="distk", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"distk {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="write the distance-k graph of each input graph")
    p.add_argument("input", help="graph6 file, or - for stdin")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("construct", help="build one extremal construction")
    p.add_argument("variant", nargs="?", choices=sorted(cons._VARIANTS))
    p.add_argument("--json", help="construction as a JSON object with a 'variant' field")
    for name in ("n", "k", "t", "r", "a", "b", "legs", "size-a", "size-b-prime"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--leaves", help="t-broom leaf counts, comma separated")
    p.add_argument("--attach", help="spider attachment counts, comma separated")
    p.add_argument("--summary-k", type=int, help="distance used for the summary line")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("solve", help="exact ex_k(n, K_{t+1}) by exhaustive search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--class", dest="class_filter", default="all",
                   choices=[c.value for c in ClassFilter])
    p.add_argument("--source", default="internal", choices=[s.value for s in Source])
    p.add_argument("--input", help="graph6 file for --source file")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--out", help="SearchOutcome JSON path")
    p.add_argument("--witnesses", help="witness graph6 path")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a named claim and persist a report")
    p.add_argument("claim", choices=sorted(CLAIMS) + ["all"])
    p.add_argument("--n-range", help="e.g. 5..9 or 5,7,9")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--out", "--report", dest="out", default="reports")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", help="check witnesses against a claimed optimum")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--claim", type=int, required=True, help="claimed optimum |E(G_k)|")
    p.set_defaults(func=cmd_certify)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, SearchError, cons.ConstructionError, ValueError, OSError) as exc:
        print(f"distk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
