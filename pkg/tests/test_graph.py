from fractions import Fraction

import pytest

from app.models import OrbEdge, OrbifoldDiagram, OrbNode, ResolutionGraph
from app.services.graph_service import GraphService, string_det
from app.services.oka_service import OkaService
from app.utils.exceptions import InputError, NotNegativeDefiniteError


@pytest.mark.parametrize("k", [1, 2, 5, 9])
def test_a_series_string_det(k):
    assert string_det([-2] * k) == k + 1


def test_e8_orbifold(e8):
    orbifold = GraphService.orbifold(GraphService.minimize(OkaService.oka_graph(e8)))
    (node,) = orbifold.nodes
    assert node.e == Fraction(-1, 30)
    assert orbifold.leg_dets(node.id) == [2, 3, 5]
    assert GraphService.orbifold_det(orbifold) * GraphService.det_product(orbifold) == 1


def test_segment_orbifold_is_free_edge(segment4):
    orbifold = GraphService.orbifold(OkaService.oka_graph(segment4))
    assert orbifold.free_edge == 4
    assert not orbifold.nodes


def test_unrealizable_graph(unrealizable_graph):
    assert GraphService.is_negative_definite(unrealizable_graph)
    assert GraphService.graph_det(unrealizable_graph) == 3
    assert GraphService.graph_iso(GraphService.minimize(unrealizable_graph), unrealizable_graph)

    orbifold = GraphService.orbifold(unrealizable_graph)
    assert orbifold.euler(1) == Fraction(-19, 3)
    assert orbifold.euler(2) == Fraction(-1, 6)
    assert orbifold.leg_groups(1) == {3: 2}
    assert orbifold.leg_groups(2) == {2: 1, 3: 1}
    assert orbifold.edge_det(1, 2) == 1
    assert GraphService.orbifold_det(orbifold) * GraphService.det_product(orbifold) == 3


def test_not_negative_definite():
    graph = ResolutionGraph(weights={0: -1, 1: -1}, edges=((0, 1),))
    assert not GraphService.is_negative_definite(graph)
    with pytest.raises(NotNegativeDefiniteError):
        GraphService.graph_det(graph)


def test_cycle_is_rejected():
    graph = ResolutionGraph(weights={0: -2, 1: -2, 2: -2}, edges=((0, 1), (1, 2), (2, 0)))
    with pytest.raises(InputError):
        GraphService.is_negative_definite(graph)


def test_minimize_undoes_blow_up(e8):
    graph = OkaService.oka_graph(e8)
    node = e8.compact_faces[0].id
    at_vertex = GraphService.blow_up(graph, node)
    at_edge = GraphService.blow_up(graph, graph.edges[0])
    assert at_vertex.size == graph.size + 1
    assert GraphService.graph_iso(GraphService.minimize(at_vertex), graph)
    assert GraphService.graph_iso(GraphService.minimize(at_edge), graph)
    assert GraphService.graph_det(at_vertex) == GraphService.graph_det(graph)


def test_minimize_smooth_point():
    with pytest.raises(InputError):
        GraphService.minimize(ResolutionGraph(weights={0: -1}))


def test_orb_iso_relabelled(unrealizable_graph):
    orbifold = GraphService.orbifold(unrealizable_graph)
    relabelled = OrbifoldDiagram(
        nodes=tuple(node.model_copy(update={"id": node.id + 10}) for node in orbifold.nodes),
        edges=tuple(edge.model_copy(update={"a": edge.a + 10, "b": edge.b + 10}) for edge in orbifold.edges),
        legs=tuple(leg.model_copy(update={"node": leg.node + 10}) for leg in orbifold.legs),
    )
    assert GraphService.orb_iso(orbifold, relabelled)
    assert not GraphService.orb_iso(orbifold, OrbifoldDiagram(free_edge=3))


def test_solve_restricted_single_node(e8):
    orbifold = GraphService.orbifold(OkaService.oka_graph(e8))
    (node,) = orbifold.node_ids
    solution = GraphService.solve_restricted(orbifold, [node], {}, {node: [Fraction(-1)]})
    assert solution[node] == (Fraction(30),)


def test_orbifold_equations(e8):
    orbifold = GraphService.orbifold(OkaService.oka_graph(e8))
    ids, matrix = GraphService.orbifold_equations(orbifold)
    assert ids == orbifold.node_ids
    assert matrix.shape == (1, 1)
    assert Fraction(int(matrix[0, 0].p), int(matrix[0, 0].q)) == Fraction(-1, 30)


@pytest.mark.parametrize("weights, expected", [([-2] * 8, 9), ([-2, -3, -2], 8), ([-5], 5)])
def test_graph_det_of_strings(weights, expected):
    graph = ResolutionGraph(
        weights=dict(enumerate(weights)), edges=tuple((i, i + 1) for i in range(len(weights) - 1))
    )
    assert GraphService.is_negative_definite(graph)
    assert GraphService.graph_det(graph) == expected == string_det(weights)


def test_e8_tree_det():
    # E8 с (-2)-вершинами: det = 1
    weights = {v: -2 for v in range(8)}
    edges = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7))
    assert GraphService.graph_det(ResolutionGraph(weights=weights, edges=edges)) == 1


def test_orbifold_negative_definite(e8):
    orbifold = GraphService.orbifold(OkaService.oka_graph(e8))
    assert GraphService.orbifold_is_negative_definite(orbifold)
    assert GraphService.orbifold_is_negative_definite(OrbifoldDiagram(free_edge=3))

    # -1/2 и -1/2 с ребром det 1: det(-I^o) = 1/4 - 1 < 0
    pair = OrbifoldDiagram(
        nodes=(OrbNode(id=0, e=Fraction(-1, 2)), OrbNode(id=1, e=Fraction(-1, 2))),
        edges=(OrbEdge(a=0, b=1, det=1),),
    )
    assert not GraphService.orbifold_is_negative_definite(pair)
