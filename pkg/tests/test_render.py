import xml.etree.ElementTree as ET

from sidedisks.gen import paper_pentagon, regular_approx
from sidedisks.graph import IntersectGraph, polygon_graph
from sidedisks.poly import validate
from sidedisks.render import ODD, PALETTE, render_svg

NS = "{http://www.w3.org/2000/svg}"


def _parse(svg):
    root = ET.fromstring(svg.encode())
    assert root.tag == NS + "svg"
    return root


def test_paper_pentagon_figure():
    p = paper_pentagon()
    root = _parse(render_svg(p, polygon_graph(p), title="five & <sides>"))
    assert root.find(NS + "title").text == "five & <sides>"
    assert len(root.findall(f".//{NS}g[@id='polygon-panel']/{NS}circle")) >= 5
    lines = root.findall(f".//{NS}g[@id='embedding-panel']/{NS}line")
    assert len(lines) == len(polygon_graph(p).edges)


def test_square_chords_coloured_differently():
    p = validate([(0, 0), (1, 0), (1, 1), (0, 1)])
    root = _parse(render_svg(p, polygon_graph(p)))
    colours = {ln.find(NS + "title").text: ln.get("stroke")
               for ln in root.findall(f".//{NS}g[@id='embedding-panel']/{NS}line")}
    assert {colours["0-2"], colours["1-3"]} == set(PALETTE)


def test_odd_cycle_highlighted():
    p = regular_approx(5)
    k5 = IntersectGraph.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    svg = render_svg(p, k5)
    _parse(svg)
    assert ODD in svg and "NOT planar" in svg


def test_unbounded_figure():
    p = validate([(0, 0), (2, -1), (4, -1), (6, 0)], (-1, 1), (1, 1))
    svg = render_svg(p)
    root = _parse(svg)
    assert root.findall(f".//{NS}polyline")
    assert "no circular embedding" in svg
