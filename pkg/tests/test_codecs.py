import json
from fractions import Fraction

import pytest

from app.services.graph_service import GraphService
from app.services.oka_service import OkaService
from app.utils.codecs import (
    diagram_to_json,
    diagram_vertices_from_json,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    orbifold_from_json,
    orbifold_to_dot,
    orbifold_to_json,
    parse_support,
)
from app.utils.exceptions import InputError


def test_parse_support_with_comments():
    text = "# E8\n5 0 0\n0 3 0  # z2^3\n\n0 0 2\n"
    assert parse_support(text) == [(5, 0, 0), (0, 3, 0), (0, 0, 2)]


@pytest.mark.parametrize("text", ["", "# только комментарий\n", "1 2\n", "1 -2 0\n", "a b c\n"])
def test_parse_support_errors(text):
    with pytest.raises(InputError):
        parse_support(text)


def test_diagram_json(e8):
    payload = json.loads(diagram_to_json(e8))
    (face,) = payload["faces"]
    assert face["normal"] == [6, 10, 15]
    assert face["m"] == 30
    assert sorted(edge["det"] for edge in payload["edges"]) == [2, 3, 5]
    assert diagram_vertices_from_json(diagram_to_json(e8)) == list(e8.vertices)


def test_graph_json(unrealizable_graph):
    parsed = graph_from_json(graph_to_json(unrealizable_graph))
    assert parsed.weights == unrealizable_graph.weights
    assert GraphService.graph_iso(parsed, unrealizable_graph)


def test_graph_json_unknown_vertex():
    with pytest.raises(InputError):
        graph_from_json('{"vertices": [{"id": 0, "b": -2}], "edges": [[0, 1]]}')


def test_orbifold_json(e8):
    orbifold = GraphService.orbifold(OkaService.oka_graph(e8))
    payload = json.loads(orbifold_to_json(orbifold))
    assert payload["nodes"][0]["e"] == [-1, 30]
    assert payload["free_edge"] is None
    assert GraphService.orb_iso(orbifold_from_json(orbifold_to_json(orbifold)), orbifold)


def test_free_edge_json():
    orbifold = orbifold_from_json('{"free_edge": 4}')
    assert orbifold.free_edge == 4
    assert not orbifold.nodes


@pytest.mark.parametrize(
    "text",
    [
        "{}",
        '{"nodes": [{"id": 0, "e": [1, 0]}]}',
        '{"nodes": [{"id": 0, "e": [-1, 2]}], "legs": [{"node": 3, "det": 2}]}',
        '{"nodes": [{"id": 0, "e": [-1, 2]}], "free_edge": 3}',
        "not json",
    ],
)
def test_orbifold_json_errors(text):
    with pytest.raises(InputError):
        orbifold_from_json(text)


def test_orbifold_node_euler():
    orbifold = orbifold_from_json('{"nodes": [{"id": 7, "e": [-19, 3]}]}')
    assert orbifold.euler(7) == Fraction(-19, 3)


def test_dot(e8, segment4):
    dot = graph_to_dot(OkaService.oka_graph(e8))
    assert dot.startswith("graph resolution {")
    assert dot.count('label="-2"') == 8
    assert 'label="4"' in orbifold_to_dot(GraphService.orbifold(OkaService.oka_graph(segment4)))
