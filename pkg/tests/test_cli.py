import json
import subprocess
import sys

import pytest

from sidedisks.cli import main

PAPER = {"vertices": [["1", "9"], ["0", "3"], ["0", "-3"], ["1", "-9"], ["60", "0"]]}
SQUARE = {"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}


@pytest.fixture
def poly_file(tmp_path):
    def make(obj, name="poly.json"):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)
    return make


def _report(path):
    with open(path) as fh:
        return json.load(fh)


def test_analyze_paper_pentagon(poly_file, tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["analyze", poly_file(PAPER), "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "verdict: planar" in text and "missing edges" in text
    rep = _report(out)
    assert rep["analysis"]["missing"] == [[0, 2]]
    assert rep["analysis"]["chords"] == [[0, 3], [1, 3], [1, 4], [2, 4]]
    assert rep["exit_code"] == 0 and rep["failures"] == []
    assert "timings_ms" not in rep


def test_analyze_square(poly_file, tmp_path):
    out = tmp_path / "r.json"
    svg = tmp_path / "sq.svg"
    assert main(["analyze", poly_file(SQUARE), "--out", str(out), "--svg", str(svg)]) == 0
    a = _report(out)["analysis"]
    assert len(a["edges"]) == 6
    col = dict((tuple(c), k) for c, k in a["coloring"])
    assert col[(0, 2)] != col[(1, 3)]
    assert svg.read_text().startswith("<?xml")


def test_analyze_unbounded(poly_file, capsys):
    obj = {"kind": "unbounded", "vertices": [[0, 0], [1, 0]], "first_dir": [-1, 1], "last_dir": [1, 1]}
    assert main(["analyze", poly_file(obj)]) == 0
    assert "not applicable" in capsys.readouterr().out


def test_malformed_json(poly_file, capsys):
    assert main(["analyze", poly_file('{"vertices": [\n [0, 0],, ]}')]) == 2
    err = capsys.readouterr().err
    assert "line 2, column" in err


def test_invalid_polygon_and_missing_file(poly_file, capsys):
    assert main(["analyze", poly_file({"vertices": [[0, 0], [1, 0], [2, 0]]})]) == 2
    assert main(["analyze", "/nonexistent/p.json"]) == 2
    assert "error:" in capsys.readouterr().err


def test_render(poly_file, tmp_path):
    svg = tmp_path / "f.svg"
    assert main(["render", poly_file(PAPER), "--svg", str(svg)]) == 0
    assert "</svg>" in svg.read_text()


def test_fuzz_exit_codes(capsys):
    assert main(["fuzz", "--count", "0"]) == 2
    assert main(["fuzz", "--count", "10", "--n-min", "2"]) == 2
    assert main(["fuzz", "--count", "10", "--family", "UnboundedClip"]) == 2
    assert main(["fuzz", "--count", "10", "--mode", "fast"]) == 2
    assert main(["fuzz", "--count", "10", "--jobs", "0"]) == 2
    assert main(["fuzz", "--count", "10", "--seed", "-1"]) == 2
    assert main(["fuzz", "--count", "50", "--seed", "1"]) == 0
    assert main([]) == 2


def test_fuzz_report_is_deterministic(tmp_path):
    paths = [tmp_path / f"r{k}.json" for k in range(3)]
    main(["fuzz", "--count", "600", "--seed", "7", "--out", str(paths[0])])
    main(["fuzz", "--count", "600", "--seed", "7", "--out", str(paths[1])])
    main(["fuzz", "--count", "600", "--seed", "7", "--out", str(paths[2]), "--jobs", "2"])
    texts = [p.read_bytes() for p in paths]
    assert texts[0] == texts[1] == texts[2]
    rep = json.loads(texts[0])
    assert rep["totals"]["polygons"] + rep["totals"]["rejections"] == 600


def test_timings_only_on_request(tmp_path):
    out = tmp_path / "r.json"
    main(["fuzz", "--count", "20", "--out", str(out), "--timings"])
    assert "fuzz" in _report(out)["timings_ms"]


def test_fuzz_corpus_file(tmp_path):
    corpus = tmp_path / "c.jsonl"
    assert main(["fuzz", "--count", "20", "--seed", "2", "--corpus", str(corpus)]) == 0
    rows = [json.loads(line) for line in corpus.read_text().splitlines()]
    assert rows and all({"genspec", "polygon"} <= set(r) for r in rows)


def test_lemmas_command(tmp_path):
    out = tmp_path / "r.json"
    assert main(["lemmas", "--lemma", "L11", "--samples", "200", "--out", str(out)]) == 0
    rep = _report(out)
    r = rep["results"][0]
    assert r["accepted"] >= 200 and 0 <= r["rejection_rate"] < 0.999
    assert main(["lemmas", "--lemma", "L99"]) == 2
    assert main(["lemmas", "--lemma", "ineq", "--grid", "1,2"]) == 2
    assert main(["lemmas", "--lemma", "L3", "--samples", "0"]) == 2


def test_lemmas_ineq_pentagon_depth(tmp_path):
    out = tmp_path / "r.json"
    for lid in ("ineq", "pentagon", "depth"):
        assert main(["lemmas", "--lemma", lid, "--samples", "50", "--grid", "20,10,21",
                     "--out", str(out)]) == 0
        assert _report(out)["results"][0]["lemma"] == lid


def test_oracle_command(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["oracle", "--n", "6", "--out", str(out)]) == 0
    rep = _report(out)
    assert rep["totals"]["instances"] == 512 and rep["failures"] == []
    assert main(["oracle", "--n", "9"]) == 2
    assert main(["oracle", "--n", "8", "--count", "0"]) == 2


def test_console_entry_point(poly_file):
    proc = subprocess.run([sys.executable, "-m", "sidedisks.cli", "analyze", poly_file(SQUARE)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "verdict: planar" in proc.stdout
