from __future__ import annotations

import pytest

from kecs.errors import FormatError
from kecs.graph import Graph, KEdgeColoring
from kecs.io import format_coloring, format_kecs, parse_coloring, parse_kecs


def test_kecs_round_trip_with_everything():
    g = Graph(3, ((0, 1), (1, 2)), labels=((0, 0), (1, 0), (2, 1)))
    w = {(0, 1): 4 ** 32, (1, 2): 7}
    wc = {0: frozenset({1}), 2: frozenset()}
    text = format_kecs(g, w, wc)
    doc = parse_kecs(text)
    assert doc.graph == g and doc.weights == w
    assert doc.constraints == wc
    assert format_kecs(doc.graph, doc.weights, doc.constraints) == text


def test_kecs_defaults_and_comments():
    doc = parse_kecs("# header\ngraph 2\nedge 1 0  # trailing\n")
    assert doc.graph.edges == ((0, 1),)
    assert doc.weights is None and doc.unit_weights and doc.constraints is None


@pytest.mark.parametrize("text, line", [
    ("graph 2\nedge 0 x\n", 2),
    ("edge 0 1\n", 1),
    ("graph 2\nedge 0 5\n", None),
    ("graph 2\nbogus 1\n", 2),
])
def test_kecs_format_errors(text, line):
    with pytest.raises(FormatError) as exc:
        parse_kecs(text)
    if line is not None:
        assert exc.value.line == line


def test_coloring_round_trip_and_errors():
    c = KEdgeColoring(3, {(2, 1): 3, (0, 1): 1})
    text = format_coloring(c)
    assert text == "color 0 1 1\ncolor 1 2 3\n"
    assert parse_coloring(text, 3) == c
    with pytest.raises(FormatError, match="line 1"):
        parse_coloring("color 0 1 4\n", 3)
    with pytest.raises(FormatError, match="twice"):
        parse_coloring("color 0 1 1\ncolor 1 0 2\n", 3)
