import pytest

from sidedisks.graph import IntersectGraph, brute_force_planar, is_planar_hamiltonian
from sidedisks.io import dumps, polygon_to_json
from sidedisks.runner import fuzz_corpus, run_depth, run_fuzz, run_oracle


def test_fuzz_small_run():
    res = run_fuzz(300, seed=3)
    assert res.failures == []
    assert res.polygons + res.rejections == 300
    assert sum(res.sizes.values()) == res.polygons
    assert min(res.sizes) >= 3 and max(res.sizes) <= 12


def test_fuzz_jobs_do_not_change_results():
    a = run_fuzz(1200, seed=4, jobs=1)
    b = run_fuzz(1200, seed=4, jobs=2)
    assert (a.polygons, a.lemma_checks, a.rejections, a.families, a.sizes) == \
        (b.polygons, b.lemma_checks, b.rejections, b.families, b.sizes)


def test_float_screening_matches_exact():
    a = run_fuzz(300, seed=5, mode="exact")
    b = run_fuzz(300, seed=5, mode="float")
    assert b.failures == [] and a.lemma_checks == b.lemma_checks


def test_fuzz_rejects_bad_arguments():
    with pytest.raises(ValueError):
        run_fuzz(0, seed=1)
    with pytest.raises(ValueError):
        run_fuzz(10, seed=1, n_min=2)
    with pytest.raises(ValueError):
        run_fuzz(10, seed=1, mode="fast")


def test_corpus_is_reproducible():
    a = [dumps(polygon_to_json(p)) for _, p in fuzz_corpus(50, 8)]
    b = [dumps(polygon_to_json(p)) for _, p in fuzz_corpus(50, 8)]
    assert a == b and len(a) > 40


def test_oracle_small_n():
    for n in (4, 5, 6):
        res = run_oracle(n)
        assert res.exhaustive
        assert res.instances == 2 ** (n * (n - 3) // 2)
        assert res.disagreements == []


def test_oracle_random_n8():
    res = run_oracle(8, count=200, seed=1)
    assert not res.exhaustive and res.instances == 200
    assert res.disagreements == []
    assert 0 < res.planar < 200


def test_oracle_bounds():
    with pytest.raises(ValueError):
        run_oracle(9)
    with pytest.raises(ValueError):
        run_oracle(2)


def test_k5_both_nonplanar():
    k5 = IntersectGraph.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    assert not is_planar_hamiltonian(k5)[0]
    assert not brute_force_planar(k5)


def test_depth_run():
    res = run_depth(200, seed=1)
    assert res.failures == []
    assert max(res.sizes) <= 3
