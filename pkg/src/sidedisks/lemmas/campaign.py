"""Seeded lemma campaigns with acceptance / rejection accounting.

Candidate k of a campaign draws from its own Philox stream keyed by
``derive_seed(seed, lemma, k)``, so any single candidate can be replayed.
Work is cut into fixed blocks of candidates; the merged result only depends
on the block layout, never on how many workers ran them.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..gen import GenSpec, GeneratorError, generate, rng_for
from ..geom import Line, line_intersection
from ..poly import PolygonError, validate
from .outcome import Rejected
from .polychecks import ab_configs, abcx_configs, check_tri_tangent
from .quadlemmas import check_3pairs, check_quad, hex_config, quad_config
from .wedge import WEDGE_CASES, _rat, unit_near, verify_wedge_lemma, wedge_config

__all__ = ["CAMPAIGN_IDS", "CampaignResult", "derive_seed", "run_campaign", "run_block",
           "tangent_polygon", "MAX_REJECTION"]

CAMPAIGN_IDS = ("L3", "L4", "L5", "L6", "L7", "L8", "L9", "L10", "L11", "L12")
MAX_REJECTION = 0.999
BLOCK = 500  # candidates per work item


def derive_seed(seed: int, lemma: str, k: int) -> int:
    tag = CAMPAIGN_IDS.index(lemma)
    ss = np.random.SeedSequence([int(seed) % 2**64, tag, k])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass
class CampaignResult:
    lemma: str
    candidates: int = 0
    accepted: int = 0
    rejected: int = 0
    failures: list = field(default_factory=list)
    reasons: Counter = field(default_factory=Counter)

    @property
    def rejection_rate(self) -> float:
        tot = self.accepted + self.rejected
        return self.rejected / tot if tot else 1.0

    @property
    def vacuous(self) -> bool:
        return self.accepted == 0 or self.rejection_rate >= MAX_REJECTION

    @property
    def ok(self) -> bool:
        return not self.failures and not self.vacuous

    def merge(self, other: "CampaignResult"):
        self.candidates += other.candidates
        self.accepted += other.accepted
        self.rejected += other.rejected
        self.failures.extend(other.failures)
        self.reasons.update(other.reasons)

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma, "candidates": self.candidates, "accepted": self.accepted,
            "rejected": self.rejected, "rejection_rate": round(self.rejection_rate, 6),
            "vacuous": self.vacuous, "failures": [f.to_json() for f in self.failures],
            "top_rejections": dict(sorted(self.reasons.most_common(5))),
        }


# --- polygon sources -------------------------------------------------------------

def tangent_polygon(n: int, rng: np.random.Generator):
    """Polygon whose sides are tangent lines of a rational circle, some pushed out.

    Three consecutive sides always stay tangent, so their tri-tangent disk
    is the circle itself and every coordinate stays rational.
    """
    r = _rat(rng, "1/2", 8, 1 << 10)
    for _ in range(100):
        angs = np.sort(rng.uniform(0, 2 * np.pi, size=n))
        gaps = np.diff(np.append(angs, angs[0] + 2 * np.pi))
        if gaps.max() < 0.95 * np.pi and gaps.min() > 1e-3:
            break
    else:
        raise GeneratorError("no admissible tangent directions")
    normals = [unit_near(a) for a in angs]
    k0 = int(rng.integers(0, n))
    pushed = bool(rng.integers(0, 4))  # one in four stays fully tangential
    offs = []
    for k in range(n):
        if not pushed or (k - k0) % n < 3:
            offs.append(r)
        else:
            offs.append(r + _rat(rng, 0, r / 2, 1 << 10))
    lines = [Line(u.x, u.y, -h) for u, h in zip(normals, offs)]
    vs = [line_intersection(lines[k - 1], lines[k]) for k in range(n)]
    if any(v is None for v in vs):
        raise GeneratorError("parallel neighbours")
    return validate(vs)


def _polygon_for(lemma: str, rng: np.random.Generator, s: int):
    """Pick a polygon source for a polygon-level campaign; returns (polygon, spec-json)."""
    roll = int(rng.integers(0, 10))
    lo = 4 if lemma == "L10" else 5
    n = int(rng.integers(lo, 13))
    if lemma == "L9" and roll < 4:
        return tangent_polygon(n, rng), {"family": "Tangential", "n": n, "seed": s}
    if lemma in ("L9", "L10") and roll >= 8:
        spec = GenSpec(n, s, "UnboundedClip")
    else:
        fam = ("RandomEdgeVectors", "RandomHullOfPoints", "ThinSliver", "RandomEdgeVectors")[roll % 4]
        spec = GenSpec(n, s, fam)
    return generate(spec), spec.to_json()


# --- one block of candidates -------------------------------------------------------

def _single(lemma: str, rng):
    if lemma in WEDGE_CASES:
        return verify_wedge_lemma(wedge_config(lemma, rng))
    if lemma == "L11":
        return check_quad(quad_config(rng))
    return check_3pairs(hex_config(rng))


def run_block(lemma: str, seed: int, start: int, stop: int) -> CampaignResult:
    res = CampaignResult(lemma)
    for k in range(start, stop):
        s = derive_seed(seed, lemma, k)
        rng = rng_for(s)
        res.candidates += 1
        if lemma in ("L8", "L9", "L10"):
            try:
                p, spec = _polygon_for(lemma, rng, s)
            except (GeneratorError, PolygonError) as exc:
                res.rejected += 1
                res.reasons[f"generator: {exc.__class__.__name__}"] += 1
                continue
            if lemma == "L8":
                items = [(check_tri_tangent(p, s), "")]
            elif lemma == "L9":
                items = abcx_configs(p, s)
            else:
                items = ab_configs(p, s)
            for out, why in items:
                if out is None:
                    res.rejected += 1
                    res.reasons[why] += 1
                    continue
                res.accepted += 1
                if not out.holds:
                    out.witness["genspec"] = spec
                    res.failures.append(out)
            continue
        try:
            out = _single(lemma, rng)
        except Rejected as exc:
            res.rejected += 1
            res.reasons[str(exc)] += 1
            continue
        out.seed = s
        res.accepted += 1
        if not out.holds:
            res.failures.append(out)
    return res


def _block_job(args):
    return run_block(*args)


def run_campaign(lemma: str, accepted: int, seed: int = 0, jobs: int = 1,
                 max_candidates: int | None = None) -> CampaignResult:
    """Run blocks in order until ``accepted`` configurations passed the hypotheses.

    Stops early (and is flagged vacuous) once the candidate budget is spent.
    """
    if lemma not in CAMPAIGN_IDS:
        raise ValueError(f"unknown lemma {lemma!r}")
    budget = max_candidates or max(BLOCK, int(accepted / (1 - MAX_REJECTION)))
    total = CampaignResult(lemma)
    b = 0
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        while total.accepted < accepted and total.candidates < budget:
            width = jobs if pool else 1
            args = [(lemma, seed, (b + t) * BLOCK, (b + t + 1) * BLOCK) for t in range(width)]
            parts = list(pool.map(_block_job, args)) if pool else [run_block(*args[0])]
            for part in parts:
                if total.accepted >= accepted or total.candidates >= budget:
                    break  # later blocks are discarded so jobs never change the result
                total.merge(part)
            b += width
    finally:
        if pool:
            pool.shutdown()
    return total
