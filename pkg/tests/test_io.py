import json

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from sidedisks.gen import GenSpec, generate, paper_pentagon
from sidedisks.io import (
    InputError, dumps, load_polygon, parse_scalar, polygon_from_json, polygon_to_json, scalar_str,
)
from sidedisks.qext import sqrt_q


@given(st.fractions(max_denominator=10**6))
def test_scalar_round_trip(f):
    q = mpq(f)
    assert parse_scalar(scalar_str(q)) == q


def test_scalar_forms():
    assert scalar_str(mpq(3)) == "3"
    assert scalar_str(mpq(-1, 4)) == "-1/4"
    assert parse_scalar("0.25") == mpq(1, 4)
    assert parse_scalar(7) == 7
    assert scalar_str(sqrt_q(2)).startswith("(")
    for bad in (1.5, True, None, "abc", "1/0"):
        with pytest.raises(InputError):
            parse_scalar(bad)


def test_polygon_round_trip():
    for fam in ("RandomEdgeVectors", "RandomHullOfPoints", "ThinSliver", "UnboundedClip"):
        p = generate(GenSpec(6, 42, fam))
        obj = json.loads(dumps(polygon_to_json(p)))
        assert polygon_from_json(obj) == p


def test_load_polygon_text():
    p = load_polygon('{"vertices": [["1","9"],["0","3"],["0","-3"],["1","-9"],["60","0"]]}')
    assert p == paper_pentagon()


def test_load_clockwise_with_normalize():
    p = load_polygon('{"vertices": [[0,0],[0,1],[1,1],[1,0]], "normalize": true}')
    assert p.n == 4


def test_malformed_json_has_position():
    with pytest.raises(InputError, match=r"line 2, column \d+"):
        load_polygon('{"vertices":\n  [[0,0], [1,0]')


@pytest.mark.parametrize("text", [
    "[1, 2]",
    '{"verts": []}',
    '{"vertices": [[0,0],[1,0],[2,0]]}',
    '{"vertices": [[0,0],[1,0]], "kind": "unbounded"}',
    '{"vertices": [[0,0],[1,0],[0,1]], "kind": "weird"}',
    '{"vertices": [[0,0],[1,0],[0]]}',
])
def test_bad_polygons(text):
    with pytest.raises(InputError):
        load_polygon(text)


def test_dumps_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == dumps({"a": [1, 2], "b": 1})
    assert dumps({}).endswith("\n")
