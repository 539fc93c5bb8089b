"""Command line: analyze, fuzz, lemmas, oracle, render.

Exit codes: 0 everything held, 1 a counterexample was found, 2 bad input.
A human summary goes to stdout; ``--out`` receives the JSON report.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from itertools import combinations

from . import __version__
from .gen import FAMILIES, paper_pentagon, regular_approx
from .graph import (
    build_graph, chords_of, conflict_graph, dump_adjacency, is_planar_hamiltonian, polygon_graph,
)
from .io import InputError, dumps, load_polygon, polygon_to_json, scalar_str
from .lemmas import (
    CAMPAIGN_IDS, LemmaOutcome, check_depth, check_midpoint_sum, check_proof_inequalities,
    run_campaign,
)
from .poly import side_disks
from .render import render_svg
from .runner import ORACLE_MAX_N, fuzz_corpus, run_depth, run_fuzz, run_oracle

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INPUT = 0, 1, 2
LEMMA_CHOICES = CAMPAIGN_IDS + ("ineq", "pentagon", "depth")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _Timer:
    def __init__(self):
        self.phases = {}

    def phase(self, name):
        timer = self

        class _Ctx:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                timer.phases[name] = round((time.perf_counter() - self.t0) * 1000, 1)
        return _Ctx()


def _report(command, config, totals, failures, timer, args, extra=None) -> dict:
    rep = {
        "command": command,
        "config": config,
        "totals": totals,
        "failures": [f.to_json() if isinstance(f, LemmaOutcome) else f for f in failures],
        "exit_code": EXIT_COUNTEREXAMPLE if failures else EXIT_OK,
    }
    if extra:
        rep.update(extra)
    if getattr(args, "timings", False):
        rep["timings_ms"] = timer.phases
    return rep


def _emit(rep: dict, args) -> int:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(rep))
    return rep["exit_code"]


def _read_polygon(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return load_polygon(text)


# --- analyze / render --------------------------------------------------------------

def _analysis(p):
    """Graph facts of one polygon as a JSON-able dict (plus the graph itself)."""
    info = {"n": p.n, "kind": p.kind, "polygon": polygon_to_json(p)}
    info["disks"] = [
        {"center": [scalar_str(d.center.x), scalar_str(d.center.y)], "r2": scalar_str(d.r2)}
        if hasattr(d, "center") else {"halfplane": [scalar_str(v) for v in (d.boundary.a, d.boundary.b, d.boundary.c)]}
        for d in side_disks(p)
    ]
    if not p.bounded:
        g = build_graph(side_disks(p))
        info["edges"] = [list(e) for e in sorted(g.edges)]
        info["planar"] = None
        return info, None
    g = polygon_graph(p)
    cd = chords_of(g)
    cg = conflict_graph(cd)
    ok, cert = is_planar_hamiltonian(g)
    info["edges"] = [list(e) for e in sorted(g.edges)]
    info["missing"] = [[i, j] for i, j in combinations(range(p.n), 2) if not g.has(i, j)]
    info["chords"] = [list(c) for c in cd.chords]
    info["conflicts"] = [[list(cd.chords[a]), list(cd.chords[b])] for a, b in sorted(cg.edges)]
    info["planar"] = ok
    if ok:
        info["coloring"] = [[list(c), cert.coloring[c]] for c in cd.chords]
    else:
        info["odd_cycle"] = [list(c) for c in cert.odd_cycle]
    return info, g


def cmd_analyze(args) -> int:
    timer = _Timer()
    p = _read_polygon(args.polygon)
    with timer.phase("analyze"):
        info, g = _analysis(p)
    print(f"{info['kind']} polygon, n = {p.n}")
    if g is not None:
        print("intersection graph:")
        print(dump_adjacency(g))
        print(f"missing edges: {info['missing'] or 'none'}")
        print(f"chords: {info['chords'] or 'none'}")
        print(f"conflicts: {info['conflicts'] or 'none'}")
        if info["planar"]:
            sides = {0: [], 1: []}
            for c, col in info["coloring"]:
                sides[col].append(c)
            print(f"bipartition: {sides[0]} | {sides[1]}")
            print("verdict: planar")
        else:
            print(f"odd cycle of chords: {info['odd_cycle']}")
            print("verdict: NOT planar (counterexample)")
    else:
        print(f"edges: {info['edges']}")
        print("verdict: planarity check not applicable to unbounded polygons")
    if args.svg:
        with timer.phase("render"):
            svg = render_svg(p, g, title=args.polygon)
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)
        print(f"figure written to {args.svg}")
    failures = []
    if info["planar"] is False:
        failures.append(LemmaOutcome("planar", False, {"polygon": info["polygon"],
                                                       "odd_cycle": info["odd_cycle"]}))
    rep = _report("analyze", {"polygon": args.polygon}, {"polygons": 1, "lemma_checks": int(g is not None),
                                                         "rejections": 0},
                  failures, timer, args, {"analysis": info})
    return _emit(rep, args)


def cmd_render(args) -> int:
    p = _read_polygon(args.polygon)
    g = polygon_graph(p) if p.bounded else None
    with open(args.svg, "w", encoding="utf-8") as fh:
        fh.write(render_svg(p, g, title=args.polygon))
    print(f"figure written to {args.svg}")
    return EXIT_OK


# --- fuzz --------------------------------------------------------------------------

def cmd_fuzz(args) -> int:
    if args.count <= 0:
        raise UsageError("--count must be positive (empty campaign)")
    if not 3 <= args.n_min <= args.n_max:
        raise UsageError("need 3 <= --n-min <= --n-max")
    if args.family in ("PaperPentagon", "UnboundedClip"):
        raise UsageError(f"family {args.family} cannot be fuzzed")
    timer = _Timer()
    with timer.phase("fuzz"):
        res = run_fuzz(args.count, args.seed, args.n_min, args.n_max, args.family, args.mode, args.jobs)
    config = {"count": args.count, "seed": args.seed, "n_min": args.n_min, "n_max": args.n_max,
              "family": args.family or "mixed", "mode": args.mode}
    totals = {"polygons": res.polygons, "lemma_checks": res.lemma_checks, "rejections": res.rejections,
              "rescreened": res.rescreened,
              "families": dict(sorted(res.families.items())),
              "sizes": {str(k): v for k, v in sorted(res.sizes.items())}}
    label = " (float screening)" if args.mode == "float" else ""
    print(f"fuzz{label}: {res.polygons} polygons, {res.lemma_checks} checks, "
          f"{res.rejections} generator rejections, {len(res.failures)} failures")
    for f in res.failures[:5]:
        print(f"  FAIL {f.lemma_id}: genspec {f.witness.get('genspec')}")
    if args.corpus:
        with open(args.corpus, "w", encoding="utf-8") as fh:
            for spec, poly in fuzz_corpus(args.count, args.seed, args.n_min, args.n_max, args.family):
                fh.write(json.dumps({"genspec": spec.to_json(), "polygon": polygon_to_json(poly)},
                                    sort_keys=True) + "\n")
    rep = _report("fuzz", config, totals, res.failures, timer, args)
    return _emit(rep, args)


# --- lemmas ------------------------------------------------------------------------

def _parse_grid(text: str):
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad --grid {text!r}") from exc
    if len(parts) != 3 or min(parts) <= 0:
        raise UsageError("--grid takes three positive integers ALPHA,BETA,WEDGE")
    return parts


def cmd_lemmas(args) -> int:
    ids = LEMMA_CHOICES if args.lemma == "all" else (args.lemma,)
    for lid in ids:
        if lid not in LEMMA_CHOICES:
            raise UsageError(f"unknown lemma id {lid!r}; choose from {', '.join(LEMMA_CHOICES)} or all")
    if args.samples <= 0:
        raise UsageError("--samples must be positive")
    grid = _parse_grid(args.grid)
    timer = _Timer()
    results, failures = [], []
    for lid in ids:
        with timer.phase(lid):
            if lid in CAMPAIGN_IDS:
                res = run_campaign(lid, args.samples, args.seed, args.jobs)
                entry = res.to_json()
                failures.extend(res.failures)
                if res.vacuous:
                    failures.append({"lemma": lid, "holds": False, "seed": args.seed,
                                     "witness": {"vacuous": True, "accepted": res.accepted,
                                                 "rejection_rate": round(res.rejection_rate, 6)}})
                msg = (f"{lid}: {res.accepted} accepted, rejection rate {res.rejection_rate:.3f}, "
                       f"{len(res.failures)} failures" + (" (VACUOUS)" if res.vacuous else ""))
            elif lid == "ineq":
                o = check_proof_inequalities(*grid, seed=args.seed)
                entry = {"lemma": "ineq", **o.witness, "holds": o.holds}
                if not o.holds:
                    failures.append(o)
                msg = (f"ineq: {o.witness['points']} grid points, {len(o.witness['failures'])} failures, "
                       f"{len(o.witness['degenerate'])} degenerate, equality case "
                       f"{'ok' if o.witness['equality_case'] else 'BROKEN'}")
            elif lid == "pentagon":
                o = check_midpoint_sum(paper_pentagon(), args.seed)
                entry = {"lemma": "pentagon", "holds": o.holds,
                         **{k: o.witness[k] for k in ("sum", "perimeter", "margin", "decimal_agrees")}}
                if not o.holds:
                    failures.append(o)
                msg = f"pentagon: midpoint sum {o.witness['sum'][:12]} < perimeter {o.witness['perimeter'][:12]}"
            else:
                fixed = [check_depth(paper_pentagon(), args.seed), check_depth(regular_approx(5), args.seed)]
                res = run_depth(args.samples, args.seed, args.jobs)
                bad = [o for o in fixed if not o.holds] + res.failures
                failures.extend(bad)
                entry = {"lemma": "depth", "fixed": [o.witness["depth"] for o in fixed],
                         "polygons": res.polygons, "histogram": {str(k): v for k, v in sorted(res.sizes.items())},
                         "failures": len(bad)}
                msg = (f"depth: fixed pentagon {fixed[0].witness['depth']}, regular {fixed[1].witness['depth']}, "
                       f"{res.polygons} generated pentagons, max {max(res.sizes) if res.sizes else 0}")
        results.append(entry)
        print(msg)
    config = {"lemma": args.lemma, "samples": args.samples, "seed": args.seed, "grid": grid}
    totals = {"lemmas": len(results),
              "accepted": sum(r.get("accepted", 0) for r in results),
              "rejections": sum(r.get("rejected", 0) for r in results)}
    rep = _report("lemmas", config, totals, failures, timer, args, {"results": results})
    print(f"{len(failures)} failures")
    return _emit(rep, args)


# --- oracle ------------------------------------------------------------------------

def cmd_oracle(args) -> int:
    if not 3 <= args.n <= ORACLE_MAX_N:
        raise UsageError(f"--n must be between 3 and {ORACLE_MAX_N}")
    if args.count <= 0:
        raise UsageError("--count must be positive")
    timer = _Timer()
    with timer.phase("oracle"):
        res = run_oracle(args.n, args.count, args.seed, args.jobs)
    how = "exhaustive" if res.exhaustive else "random"
    print(f"oracle n={args.n} ({how}): {res.instances} instances, {res.planar} planar, "
          f"{len(res.disagreements)} disagreements")
    config = {"n": args.n, "count": args.count if not res.exhaustive else None, "seed": args.seed,
              "exhaustive": res.exhaustive}
    totals = {"instances": res.instances, "planar": res.planar, "lemma_checks": res.instances,
              "rejections": 0}
    rep = _report("oracle", config, totals, res.disagreements, timer, args)
    return _emit(rep, args)


# --- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="sidedisks", description="Side-disk intersection graphs of convex polygons.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, jobs=True):
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--timings", action="store_true", help="include per-phase timings in the report")
        if jobs:
            p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("analyze", help="analyze one polygon JSON file")
    p.add_argument("polygon")
    p.add_argument("--svg", help="write a two-panel SVG figure")
    common(p, jobs=False)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("render", help="draw one polygon as SVG")
    p.add_argument("polygon")
    p.add_argument("--svg", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("fuzz", help="random polygons through planarity, 1-Chord and No-3-Cycles")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--family", choices=FAMILIES, default=None, help="default: mixed")
    p.add_argument("--corpus", help="also write the polygons as JSON lines")
    common(p)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("lemmas", help="seeded lemma campaigns")
    p.add_argument("--lemma", default="all", help=f"one of {', '.join(LEMMA_CHOICES)} or all")
    p.add_argument("--samples", type=int, default=1000, help="accepted configurations per campaign")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", default="1000,500,1001", help="inequality grid ALPHA,BETA,WEDGE")
    common(p)
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("oracle", help="bipartite-chord test against the Kuratowski search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=5000)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if args.command is None:
            raise UsageError("missing command")
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be >= 1")
        if getattr(args, "seed", 0) < 0 or getattr(args, "seed", 0) >= 2**64:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        return args.func(args)
    except (UsageError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
