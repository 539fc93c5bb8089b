"""Full-scale acceptance runs. Slow: about a quarter of an hour on one core.

Each test prints a single ``ACCEPT <k> PASS|FAIL ...`` line.
"""
import time

import numpy as np
import pytest

from oracles import apollonius_instance, tangential_instance
from sidedisks.cli import main
from sidedisks.gen import paper_pentagon, regular_approx
from sidedisks.geom import apollonius_pm2, tangential_diagonal2
from sidedisks.lemmas.campaign import MAX_REJECTION, run_campaign
from sidedisks.lemmas.ineq import check_proof_inequalities
from sidedisks.lemmas.polychecks import check_depth, check_midpoint_sum
from sidedisks.runner import run_depth, run_fuzz, run_oracle

FUZZ_COUNT = 100_000
CAMPAIGN_LEMMAS = ("L3", "L4", "L5", "L6", "L7", "L9", "L10", "L11", "L12")


def report(k, ok, detail):
    print(f"\nACCEPT {k} {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def fuzz():
    t0 = time.perf_counter()
    res = run_fuzz(FUZZ_COUNT, seed=7, n_min=3, n_max=12)
    return res, time.perf_counter() - t0


def _by_lemma(res, lemma):
    return [f for f in res.failures if f.lemma == lemma]


def test_1_main_theorem_fuzz(fuzz):
    res, secs = fuzz
    attempted = res.polygons + res.rejections
    ok = attempted == FUZZ_COUNT and res.polygons > 0.9 * FUZZ_COUNT and not _by_lemma(res, "planar")
    report(1, ok, f"{res.polygons} polygons ({res.rejections} generator rejects), "
                  f"{len(_by_lemma(res, 'planar'))} non-bipartite, families {dict(sorted(res.families.items()))}, "
                  f"{secs:.0f}s")


def test_2_oracle_equivalence():
    parts = [run_oracle(6), run_oracle(7), run_oracle(8, count=5000, seed=0)]
    counts = [r.instances for r in parts]
    bad = sum(len(r.disagreements) for r in parts)
    ok = counts == [2 ** 9, 2 ** 14, 5000] and all(r.exhaustive for r in parts[:2]) and bad == 0
    report(2, ok, f"instances {counts}, disagreements {bad}")


def test_3_one_chord_on_corpus(fuzz):
    res, _ = fuzz
    checked = sum(c for n, c in res.sizes.items() if n >= 5)
    fails = _by_lemma(res, "L1")
    report(3, checked > 0 and not fails, f"{checked} polygons with n >= 5, {len(fails)} failures")


def test_4_no_three_cycles_on_corpus(fuzz):
    res, _ = fuzz
    checked = sum(c for n, c in res.sizes.items() if n >= 6)
    fails = _by_lemma(res, "L2")
    report(4, checked > 0 and not fails,
           f"{checked} polygons with n >= 6 (6-subsets and conflict triangles), {len(fails)} failures")


def test_5_pentagon_midpoint_sum():
    o = check_midpoint_sum(paper_pentagon())
    w = o.witness
    near = abs(float(w["sum"]) - 137.23) < 0.005 and abs(float(w["perimeter"]) - 137.53) < 0.005
    report(5, o.holds and near and w["decimal_agrees"],
           f"sum {w['sum'][:10]}, perimeter {w['perimeter'][:10]}, margin {w['margin'][:8]}")


def test_6_depth_bound():
    fixed = [check_depth(paper_pentagon()), check_depth(regular_approx(5))]
    res = run_depth(10_000)
    ok = all(o.holds for o in fixed) and res.polygons == 10_000 and not res.failures
    report(6, ok, f"fixed pentagon {fixed[0].witness['depth']}, regular {fixed[1].witness['depth']}, "
                  f"{res.polygons} generated: depth histogram {dict(sorted(res.sizes.items()))}")


def test_7_formula_oracles():
    rng = np.random.default_rng(2024)
    bad_a = bad_t = 0
    for _ in range(1000):
        args, expect = apollonius_instance(rng)
        bad_a += apollonius_pm2(*args) != expect
        args, expect, *_ = tangential_instance(rng)
        bad_t += tangential_diagonal2(*args) != expect
    report(7, bad_a == 0 and bad_t == 0, f"1000 + 1000 instances, mismatches {bad_a} / {bad_t}")


@pytest.mark.parametrize("lemma", CAMPAIGN_LEMMAS)
def test_8_lemma_campaigns(lemma):
    t0 = time.perf_counter()
    r = run_campaign(lemma, 100_000)
    ok = r.accepted >= 100_000 and not r.failures and r.rejection_rate < MAX_REJECTION
    report(8, ok, f"{lemma}: accepted {r.accepted}, rejection rate {r.rejection_rate:.4f}, "
                  f"failures {len(r.failures)}, {time.perf_counter() - t0:.0f}s")


def test_9_inequality_grid():
    o = check_proof_inequalities(1000, 500, 1001)
    w = o.witness
    report(9, o.holds and w["points"] >= 10 ** 6,
           f"{w['points']} points, failures {len(w['failures'])}, min {w['min']}")


def test_10_determinism(tmp_path):
    poly = tmp_path / "p.json"
    poly.write_text('{"vertices": [["1","9"],["0","3"],["0","-3"],["1","-9"],["60","0"]]}')
    commands = [
        ["analyze", str(poly)],
        ["fuzz", "--count", "2000", "--seed", "7"],
        ["lemmas", "--lemma", "L9", "--samples", "1000"],
        ["oracle", "--n", "8", "--count", "500"],
    ]
    same = []
    for k, cmd in enumerate(commands):
        outs = []
        for rep in range(2):
            out = tmp_path / f"r{k}_{rep}.json"
            main(cmd + ["--out", str(out)])
            outs.append(out.read_bytes())
        same.append(outs[0] == outs[1])
    report(10, all(same), f"{sum(same)}/{len(commands)} commands byte-identical")
