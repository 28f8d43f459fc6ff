from fractions import Fraction

from app.services.graph_service import GraphService
from app.services.oka_service import OkaService


def test_chain_between_e8_and_axes():
    chain = OkaService.chain_between((6, 10, 15), (1, 0, 0))
    assert (chain.det, chain.lam, chain.weights) == (5, 4, (2, 2, 2, 2))
    chain = OkaService.chain_between((6, 10, 15), (0, 1, 0))
    assert (chain.det, chain.lam, chain.weights) == (3, 2, (2, 2))
    chain = OkaService.chain_between((6, 10, 15), (0, 0, 1))
    assert (chain.det, chain.lam, chain.weights) == (2, 1, (2,))


def test_unimodular_chain_is_empty():
    chain = OkaService.chain_between((1, 1, 1), (1, 0, 0))
    assert chain.det == 1
    assert chain.weights == ()


def test_e8_self_intersection(e8):
    face = e8.compact_faces[0]
    assert OkaService.self_intersection(e8, face) == -2
    assert OkaService.face_euler(e8, face) == Fraction(-1, 30)


def test_e8_graph(e8):
    graph = OkaService.oka_graph(e8)
    assert graph.size == 8
    assert sorted(graph.weights.values()) == [-2] * 8
    assert GraphService.graph_det(graph) == 1
    assert sorted(graph.degree(v) for v in graph.weights) == [1, 1, 1, 2, 2, 2, 2, 3]


def test_segment_graph_is_a_string(segment4):
    graph = OkaService.oka_graph(segment4)
    assert sorted(graph.weights.values()) == [-2, -2, -2]
    assert len(graph.edges) == 2
    assert GraphService.graph_det(graph) == 4


def test_symm_graph_is_negative_definite(symm):
    graph = OkaService.oka_graph(symm)
    assert GraphService.is_negative_definite(graph)
    assert all(b <= -1 for b in graph.weights.values())
