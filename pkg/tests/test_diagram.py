from random import Random

import pytest

from app.models import EdgeKind
from app.services.diagram_service import DiagramService
from app.services.graph_service import GraphService
from app.services.invariant_service import InvariantService
from app.services.oka_service import OkaService
from app.utils.exceptions import InvalidDiagramError
from tests.conftest import SYMM_SUPPORT, segment


def test_e8_boundary(e8):
    assert len(e8.compact_faces) == 1
    face = e8.compact_faces[0]
    assert face.normal == (6, 10, 15)
    assert face.value == 30
    assert sorted(edge.det for edge in e8.edges) == [2, 3, 5]
    assert all(edge.boundary and edge.kind == EdgeKind.COORDINATE_PLANE for edge in e8.edges)


def test_non_minimal_points_are_dropped():
    diagram = DiagramService.newton_boundary([(5, 0, 0), (0, 3, 0), (0, 0, 2), (5, 3, 2), (6, 0, 0)])
    assert diagram.key() == ((0, 0, 2), (0, 3, 0), (5, 0, 0))


def test_empty_support_rejected():
    with pytest.raises(InvalidDiagramError):
        DiagramService.newton_boundary([])


def test_polyline_boundary():
    # Ни одной компактной грани: ломаная из двух рёбер
    diagram = DiagramService.newton_boundary([(0, 0, 2), (2, 0, 1), (7, 1, 0)])
    assert not diagram.compact_faces
    assert diagram.key() == ((0, 0, 2), (2, 0, 1), (7, 1, 0))
    assert sorted(edge.ends for edge in diagram.edges) == [((0, 0, 2), (2, 0, 1)), ((2, 0, 1), (7, 1, 0))]
    assert all(edge.boundary and len(set(edge.faces)) == 2 for edge in diagram.edges)
    assert not DiagramService.is_valid(diagram)


def test_collinear_support_is_one_edge():
    diagram = DiagramService.newton_boundary([(0, 2, 2), (2, 1, 1), (4, 0, 0)])
    assert diagram.key() == ((0, 2, 2), (4, 0, 0))
    assert len(diagram.edges) == 1


def test_moves_of_symmetric_example(symm):
    # Удаление вершины может давать ломаную; такие ходы отбрасываются
    moves = DiagramService.enumerate_moves(symm)
    for move in moves:
        assert DiagramService.is_valid(DiagramService.apply_move(symm, move))


def test_e8_is_valid(e8):
    assert DiagramService.check_isolated(e8).ok
    assert DiagramService.check_qhs(e8)
    assert DiagramService.is_valid(e8)


def test_non_qhs_brieskorn():
    diagram = DiagramService.newton_boundary([(3, 0, 0), (0, 7, 0), (0, 0, 21)])
    assert DiagramService.check_isolated(diagram).ok
    assert not DiagramService.check_qhs(diagram)
    assert (1, 1, 11) in DiagramService.lattice_points(diagram)
    with pytest.raises(InvalidDiagramError):
        DiagramService.require_valid(diagram)


def test_not_isolated():
    diagram = DiagramService.newton_boundary([(2, 2, 0), (0, 0, 3)])
    report = DiagramService.check_isolated(diagram)
    assert not report.ok
    assert report.violations


def test_segment(segment4):
    assert segment4.is_segment
    assert DiagramService.is_valid(segment4)
    assert DiagramService.structure_class(segment4).tag == "Segment"
    assert DiagramService.a_series_class(segment4) == 4


def test_brieskorn_is_central_triangle(e8):
    assert DiagramService.structure_class(e8).tag == "▲0"
    assert DiagramService.a_series_class(e8) is None


def test_permutation_normalization(e8):
    permuted = DiagramService.permute(e8, (2, 0, 1))
    normalized, _ = DiagramService.normalize_permutation(permuted)
    assert normalized.key() == DiagramService.normalize_permutation(e8)[0].key()
    assert DiagramService.equivalent(e8, permuted)


def test_d_minimal_segment_class():
    # z1^3 + z2·z3 + z2^5: точка (0,1,1) на диаграмме
    diagram = DiagramService.newton_boundary([(0, 1, 1), (3, 0, 0), (0, 5, 0)])
    assert DiagramService.d_minimal(diagram).key() == ((0, 1, 1), (3, 0, 0))


def test_d_minimal_is_idempotent(symm):
    minimal = DiagramService.d_minimal(symm)
    assert DiagramService.d_minimal(minimal).key() == minimal.key()
    assert DiagramService.is_valid(minimal)


def test_d_minimal_keeps_graph(symm):
    minimal = DiagramService.d_minimal(symm)
    first = GraphService.minimize(OkaService.oka_graph(symm))
    second = GraphService.minimize(OkaService.oka_graph(minimal))
    assert GraphService.graph_iso(first, second)


def test_symm_support_is_valid():
    assert DiagramService.is_valid(DiagramService.newton_boundary(SYMM_SUPPORT))


def test_different_segments_not_equivalent():
    assert not DiagramService.equivalent(segment(3), segment(4))


def test_random_move_walk_keeps_invariants(e8):
    expected = InvariantService.report(e8)
    graph = GraphService.minimize(OkaService.oka_graph(e8))
    for _, current in DiagramService.random_move_walk(e8, 4, Random(3)):
        assert DiagramService.is_valid(current)
        assert InvariantService.report(current) == expected
        assert GraphService.graph_iso(GraphService.minimize(OkaService.oka_graph(current)), graph)


TRAPEZOID_SUPPORT = [(1, 0, 2), (0, 1, 2), (0, 4, 0), (4, 0, 0)]


def test_trapezoid_label():
    diagram = DiagramService.newton_boundary(TRAPEZOID_SUPPORT)
    (shape,) = DiagramService.classify_faces(diagram)
    assert shape.shape == "trapezoid"
    label = shape.trapezoid
    assert (label.p, label.q, label.n, label.t, label.r1, label.r2) == (1, 1, 2, 4, 0, 0)
    assert DiagramService.removable_trapezoid(label)
    assert DiagramService.removable_vertices(label) == ["A", "B"]


def test_canonical_keeps_maximal_trapezoid():
    diagram = DiagramService.newton_boundary(TRAPEZOID_SUPPORT)
    assert DiagramService.canonical(diagram).key() == tuple(sorted(TRAPEZOID_SUPPORT))


def test_noncompact_faces(e8):
    faces = DiagramService.noncompact_faces(e8)
    assert sorted(face.normal for face in faces) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert all(face.value == 0 for face in faces)


def test_is_subdiagram(e8, segment4):
    assert DiagramService.is_subdiagram(e8, e8)
    assert not DiagramService.is_subdiagram(segment4, e8)


def test_det_criterion(e8):
    assert DiagramService.det_criterion_check(e8)


@pytest.mark.slow
def test_moves_keep_d_minimal_and_graph():
    pairs = 0
    for support in (SYMM_SUPPORT, TRAPEZOID_SUPPORT, [(2, 1, 0), (1, 3, 0), (0, 0, 2)]):
        diagram = DiagramService.newton_boundary(support)
        expected = DiagramService.d_minimal(diagram).key()
        graph = GraphService.minimize(OkaService.oka_graph(diagram))
        for seed in range(100):
            for _, current in DiagramService.random_move_walk(diagram, 2, Random(seed)):
                assert DiagramService.d_minimal(current).key() == expected
                assert GraphService.graph_iso(GraphService.minimize(OkaService.oka_graph(current)), graph)
                pairs += 1
    assert pairs >= 200
