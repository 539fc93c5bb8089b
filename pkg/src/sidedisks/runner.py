"""Fuzz and oracle campaigns over generated polygons and chord subsets.

Both follow the lemma campaign layout: item k gets its own Philox stream
from ``SeedSequence([seed, tag, k])``, items are cut into fixed blocks, and
blocks are merged in order, so a report never depends on ``jobs``.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .gen import GenSpec, GeneratorError, generate, rng_for
from .graph import (
    BRUTE_FORCE_MAX_N, IntersectGraph, brute_force_planar, cycle_edges, is_planar_hamiltonian,
    polygon_graph,
)
from .io import polygon_to_json
from .lemmas import LemmaOutcome, check_depth, check_no_3_cycles, check_one_chord, conflict_triangles
from .poly import PolygonError

__all__ = [
    "FUZZ_FAMILIES", "FuzzResult", "fuzz_item", "fuzz_corpus", "run_fuzz", "OracleResult", "run_oracle",
    "ORACLE_MAX_N", "EXHAUSTIVE_MAX_N", "item_seed", "run_depth",
]

FUZZ_FAMILIES = ("RandomEdgeVectors", "RandomHullOfPoints", "RegularApprox", "ThinSliver")
ORACLE_MAX_N = 8
EXHAUSTIVE_MAX_N = 7
SIX_SAMPLES = 200  # 6-subsets drawn per polygon when n > 10
BLOCK = 500
_FUZZ_TAG, _ORACLE_TAG = 0xF0, 0x0C


def item_seed(seed: int, tag: int, k: int) -> int:
    ss = np.random.SeedSequence([int(seed) % 2**64, tag, k])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _in_blocks(fn, args, count: int, jobs: int):
    """Evaluate ``fn(*args, start, stop)`` over fixed blocks, results in block order."""
    spans = [(a, min(a + BLOCK, count)) for a in range(0, count, BLOCK)]
    if jobs > 1 and len(spans) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(_call, [(fn, args, a, b) for a, b in spans]))
    return [fn(*args, a, b) for a, b in spans]


def _call(t):
    fn, args, a, b = t
    return fn(*args, a, b)


# --- fuzz --------------------------------------------------------------------------

@dataclass
class FuzzResult:
    polygons: int = 0
    lemma_checks: int = 0
    rejections: int = 0
    rescreened: int = 0
    failures: list = field(default_factory=list)
    families: Counter = field(default_factory=Counter)
    sizes: Counter = field(default_factory=Counter)

    def merge(self, other: "FuzzResult"):
        self.polygons += other.polygons
        self.lemma_checks += other.lemma_checks
        self.rejections += other.rejections
        self.rescreened += other.rescreened
        self.failures.extend(other.failures)
        self.families.update(other.families)
        self.sizes.update(other.sizes)


def _spec_for(k: int, seed: int, n_min: int, n_max: int, family: str | None) -> GenSpec:
    s = item_seed(seed, _FUZZ_TAG, k)
    rng = rng_for(s)
    n = int(rng.integers(n_min, n_max + 1))
    fam = family or FUZZ_FAMILIES[int(rng.integers(0, len(FUZZ_FAMILIES)))]
    return GenSpec(n, s, fam)


def _six_sets(n: int, rng):
    if n <= 10:
        return list(combinations(range(n), 6))
    picks = np.sort(np.argsort(rng.random((SIX_SAMPLES, n)), axis=1)[:, :6], axis=1)
    return [tuple(row) for row in picks.tolist()]


def _checks(p, g: IntersectGraph, spec: GenSpec):
    """Run planarity, 1-Chord and No-3-Cycles; returns (checks run, failing outcomes)."""
    fails = []
    pj = polygon_to_json(p)
    ok, cert = is_planar_hamiltonian(g)
    checks = 1
    if not ok:
        fails.append(LemmaOutcome("planar", False, {"polygon": pj,
                                                    "odd_cycle": [list(c) for c in cert.odd_cycle]},
                                  spec.seed))
    if p.n >= 5:
        checks += 1
        o = check_one_chord(p, g, spec.seed)
        if not o.holds:
            fails.append(o)
    if p.n >= 6:
        rng = rng_for(spec.seed ^ 0x5EED)
        for six in _six_sets(p.n, rng):
            checks += 1
            o = check_no_3_cycles(p, six, g, spec.seed, pj)
            if not o.holds:
                fails.append(o)
                break
        checks += 1
        tri = conflict_triangles(g)
        if tri:
            fails.append(LemmaOutcome("L2", False, {"polygon": pj,
                                                    "conflict_triangle": [[list(c) for c in t] for t in tri[:1]]},
                                      spec.seed))
    return checks, fails


def fuzz_item(spec: GenSpec, mode: str = "exact"):
    """Generate one polygon and check it; returns (polygon, checks, failures)."""
    p = generate(spec)
    g = polygon_graph(p, mode)
    checks, fails = _checks(p, g, spec)
    return p, checks, fails


def fuzz_block(seed: int, n_min: int, n_max: int, family, mode: str, start: int, stop: int) -> FuzzResult:
    res = FuzzResult()
    for k in range(start, stop):
        spec = _spec_for(k, seed, n_min, n_max, family)
        try:
            p, checks, fails = fuzz_item(spec, mode)
        except (GeneratorError, PolygonError):
            res.rejections += 1
            continue
        if fails and mode != "exact":
            # screening failure: decide it exactly before reporting
            res.rescreened += 1
            p, checks, fails = fuzz_item(spec, "exact")
        res.polygons += 1
        res.lemma_checks += checks
        res.families[spec.family] += 1
        res.sizes[p.n] += 1
        for o in fails:
            o.witness["genspec"] = spec.to_json()
            res.failures.append(o)
    return res


def fuzz_corpus(count: int, seed: int, n_min: int = 3, n_max: int = 12, family: str | None = None):
    """The (spec, polygon) pairs a fuzz run with these flags visits."""
    for k in range(count):
        spec = _spec_for(k, seed, n_min, n_max, family)
        try:
            yield spec, generate(spec)
        except (GeneratorError, PolygonError):
            continue


def run_fuzz(count: int, seed: int, n_min: int = 3, n_max: int = 12, family: str | None = None,
             mode: str = "exact", jobs: int = 1) -> FuzzResult:
    if count <= 0:
        raise ValueError("empty campaign")
    if not 3 <= n_min <= n_max:
        raise ValueError("need 3 <= n_min <= n_max")
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    total = FuzzResult()
    for part in _in_blocks(fuzz_block, (seed, n_min, n_max, family, mode), count, jobs):
        total.merge(part)
    return total


# --- oracle ------------------------------------------------------------------------

@dataclass
class OracleResult:
    n: int
    exhaustive: bool
    instances: int = 0
    planar: int = 0
    disagreements: list = field(default_factory=list)

    def merge(self, other: "OracleResult"):
        self.instances += other.instances
        self.planar += other.planar
        self.disagreements.extend(other.disagreements)


def _chords(n: int):
    cyc = cycle_edges(n)
    return [c for c in combinations(range(n), 2) if c not in cyc]


def _compare(n: int, chosen, res: OracleResult):
    g = IntersectGraph.from_edges(n, list(cycle_edges(n)) + list(chosen))
    fast, _ = is_planar_hamiltonian(g)
    slow = brute_force_planar(g)
    res.instances += 1
    res.planar += fast
    if fast != slow:
        res.disagreements.append({"n": n, "chords": [list(c) for c in chosen],
                                  "bipartite_test": fast, "brute_force": slow})


def oracle_block(n: int, seed: int, exhaustive: bool, start: int, stop: int) -> OracleResult:
    res = OracleResult(n, exhaustive)
    ch = _chords(n)
    for k in range(start, stop):
        if exhaustive:
            chosen = [ch[t] for t in range(len(ch)) if k >> t & 1]
        else:
            rng = rng_for(item_seed(seed, _ORACLE_TAG, k))
            density = rng.uniform(0, 1)
            chosen = [c for c, keep in zip(ch, rng.uniform(0, 1, size=len(ch)) < density) if keep]
        _compare(n, chosen, res)
    return res


def run_oracle(n: int, count: int = 5000, seed: int = 0, jobs: int = 1) -> OracleResult:
    """Compare the bipartite-chord test with the Kuratowski search.

    Every chord subset of the n-cycle for n <= EXHAUSTIVE_MAX_N, ``count``
    random subsets (random density per instance) otherwise.
    """
    if not 3 <= n <= ORACLE_MAX_N or n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"n must be in [3, {ORACLE_MAX_N}]")
    exhaustive = n <= EXHAUSTIVE_MAX_N
    total_items = 1 << len(_chords(n)) if exhaustive else count
    if total_items <= 0:
        raise ValueError("empty campaign")
    total = OracleResult(n, exhaustive)
    for part in _in_blocks(oracle_block, (n, seed, exhaustive), total_items, jobs):
        total.merge(part)
    return total


# --- pentagon depth ----------------------------------------------------------------

_DEPTH_TAG = 0xD5


def depth_block(seed: int, start: int, stop: int) -> FuzzResult:
    res = FuzzResult()
    for k in range(start, stop):
        spec = _spec_for(k, item_seed(seed, _DEPTH_TAG, 0), 5, 5, None)
        try:
            p = generate(spec)
        except (GeneratorError, PolygonError):
            res.rejections += 1
            continue
        o = check_depth(p, spec.seed)
        res.polygons += 1
        res.lemma_checks += 1
        res.families[spec.family] += 1
        res.sizes[o.witness["depth"]] += 1  # histogram of depths
        if not o.holds:
            o.witness["genspec"] = spec.to_json()
            res.failures.append(o)
    return res


def run_depth(count: int, seed: int = 0, jobs: int = 1) -> FuzzResult:
    """Disk depth of ``count`` generated pentagons; ``sizes`` holds the depth histogram."""
    if count <= 0:
        raise ValueError("empty campaign")
    total = FuzzResult()
    for part in _in_blocks(depth_block, (seed,), count, jobs):
        total.merge(part)
    return total
