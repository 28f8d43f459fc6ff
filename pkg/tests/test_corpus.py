import json

import pytest

from app.models import CorpusSpec, RoundtripFailure
from app.services.corpus_service import CorpusService
from app.services.diagram_service import DiagramService
from app.services.graph_service import GraphService
from app.services.invariant_service import InvariantService
from app.services.inverse_service import InverseService
from app.services.oka_service import OkaService

SPEC = CorpusSpec(bound=5, max_support=4, count=8, seed=11)


def test_generation_is_deterministic():
    first = [diagram.key() for diagram in CorpusService.generate(SPEC)]
    second = [diagram.key() for diagram in CorpusService.generate(SPEC)]
    assert first == second
    assert len(first) == SPEC.count


def test_generated_diagrams_are_valid():
    assert all(DiagramService.is_valid(diagram) for diagram in CorpusService.generate(SPEC))


def test_corpus_properties():
    for diagram in CorpusService.generate(SPEC):
        graph = OkaService.oka_graph(diagram)
        orbifold = GraphService.orbifold(GraphService.minimize(graph))
        if orbifold.free_edge is not None:
            assert orbifold.free_edge == GraphService.graph_det(graph)
            continue
        assert GraphService.orbifold_det(orbifold) * GraphService.det_product(orbifold) == GraphService.graph_det(graph)
        if diagram.compact_faces:
            checks = InvariantService.face_equations(diagram)
            assert all(check.normal_identity and check.value_identity for check in checks)


def test_corpus_roundtrip():
    summary = CorpusService.run(SPEC)
    assert summary.failed == 0, summary.failures
    assert summary.passed == SPEC.count


def test_minimal_graph_is_realizable():
    for diagram in CorpusService.generate(SPEC):
        assert InverseService.realizable(OkaService.oka_graph(diagram)).ok


def test_dump_bundle(tmp_path):
    failure = RoundtripFailure(support=((5, 0, 0), (0, 3, 0), (0, 0, 2)), stage="compare", reason="тест")
    path = CorpusService.dump_bundle(failure, tmp_path / "bundles", 1)
    bundle = json.loads(path.read_text(encoding="utf-8"))
    assert bundle["stage"] == "compare"
    assert bundle["orbifold"]["nodes"][0]["e"] == [-1, 30]


def test_segment_graph_det_is_free_edge():
    graph = OkaService.oka_graph(DiagramService.newton_boundary([(0, 1, 1), (6, 0, 0)]))
    orbifold = GraphService.orbifold(GraphService.minimize(graph))
    assert orbifold.free_edge == GraphService.graph_det(graph) == 6


# Трапеции (1,0,2), (0,1,2), (0,t,0), (t,0,0) с нормалью (2, 2, t-1)
@pytest.mark.parametrize("t", [4, 6, 8])
def test_trapezoid_family_roundtrip(t):
    diagram = DiagramService.newton_boundary([(1, 0, 2), (0, 1, 2), (0, t, 0), (t, 0, 0)])
    assert DiagramService.is_valid(diagram)
    assert CorpusService.roundtrip(diagram) is None


@pytest.mark.slow
@pytest.mark.parametrize("seed", [1, 2])
def test_full_corpus_roundtrip(seed):
    spec = CorpusSpec(bound=10, max_support=5, count=500, seed=seed)
    summary = CorpusService.run(spec)
    assert summary.passed == spec.count, summary.failures
