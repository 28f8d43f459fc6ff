from fractions import Fraction

import pytest

from app.models import OrbEdge, OrbifoldDiagram, OrbLeg, OrbNode
from app.services.corpus_service import CorpusService
from app.services.diagram_service import DiagramService
from app.services.inverse_service import ONE_NODE_CASES, InverseService
from tests.conftest import segment

D4_SUPPORT = [(2, 0, 0), (0, 2, 1), (0, 1, 2)]


def _two_nodes(first_legs, second_legs):
    return OrbifoldDiagram(
        nodes=(OrbNode(id=0, e=Fraction(-1)), OrbNode(id=1, e=Fraction(-1))),
        edges=(OrbEdge(a=0, b=1, det=1),),
        legs=tuple(OrbLeg(node=0, det=d) for d in first_legs)
        + tuple(OrbLeg(node=1, det=d) for d in second_legs),
    )


def test_free_edge():
    result = InverseService.invert(OrbifoldDiagram(free_edge=4))
    assert result.ok
    assert result.family == "Segment"
    assert result.diagram.key() == ((0, 1, 1), (4, 0, 0))


def test_free_edge_too_small():
    result = InverseService.invert(OrbifoldDiagram(free_edge=1))
    assert not result.ok
    assert result.stage == "n0"


def test_e8_is_recovered(e8):
    orbifold = InverseService.forward(e8)
    diagram, number = InverseService.case_n1(orbifold)
    assert number == 11
    assert DiagramService.equivalent(diagram, e8)

    result = InverseService.invert(orbifold)
    assert result.ok
    assert result.diagram.key() == DiagramService.d_minimal(e8).key()


def test_single_leg_group():
    diagram = DiagramService.newton_boundary(D4_SUPPORT)
    orbifold = InverseService.forward(diagram)
    assert orbifold.leg_groups(orbifold.node_ids[0]) == {2: 3}
    _, number = InverseService.case_n1(orbifold)
    assert number == 1


def test_verify(e8, segment4):
    orbifold = InverseService.forward(e8)
    assert InverseService.verify(e8, orbifold)
    assert not InverseService.verify(segment4, orbifold)


def test_unrealizable_graph_is_not_realizable(unrealizable_graph):
    result = InverseService.realizable(unrealizable_graph)
    assert not result.ok
    assert result.stage
    assert result.diagram is None


def test_e8_graph_is_realizable(e8):
    from app.services.oka_service import OkaService

    result = InverseService.realizable(OkaService.oka_graph(e8))
    assert result.ok
    assert DiagramService.equivalent(result.diagram, e8)


def test_er_hand_is_preferred():
    orbifold = _two_nodes([2, 3], [4, 6])
    assert InverseService.is_er_hand(orbifold, 1)
    assert not InverseService.is_er_hand(orbifold, 0)
    assert InverseService.find_hand(orbifold)[0] == 1


def test_hand_with_smaller_r_is_preferred():
    # r = 2·1 + 3·1 = 5 против 2·1 + 5·1 = 7
    orbifold = _two_nodes([2, 5], [2, 3])
    assert InverseService.find_hand(orbifold) == [1, 0]


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_segment_roundtrip(n):
    assert CorpusService.roundtrip(segment(n)) is None


@pytest.mark.parametrize(
    "support",
    [
        [(5, 0, 0), (0, 3, 0), (0, 0, 2)],
        [(2, 0, 0), (0, 3, 0), (0, 0, 7)],
        D4_SUPPORT,
    ],
)
def test_one_node_roundtrip(support):
    assert CorpusService.roundtrip(DiagramService.newton_boundary(support)) is None


def test_symmetric_example_roundtrip(symm):
    assert CorpusService.roundtrip(symm) is None


ONE_NODE_EXAMPLES = [
    (1, D4_SUPPORT),
    # z1^4 + z2^3·z3 + z3^2
    (2, [(4, 0, 0), (0, 3, 1), (0, 0, 2)]),
    # z1^2·z2 + z1·z2^3 + z3^2
    (3, [(2, 1, 0), (1, 3, 0), (0, 0, 2)]),
    # E6
    (4, [(3, 0, 0), (0, 4, 0), (0, 0, 2)]),
    # z1^2·z2 + z2^2·z3 + z3^2
    (5, [(2, 1, 0), (0, 2, 1), (0, 0, 2)]),
    (6, [(4, 0, 0), (0, 6, 0), (0, 0, 10)]),
    # z1^3·z2 + z1·z2^4 + z3^2
    (7, [(3, 1, 0), (1, 4, 0), (0, 0, 2)]),
    # z1^2·z2 + z2^4 + z3^6
    (8, [(2, 1, 0), (0, 4, 0), (0, 0, 6)]),
    # E7
    (9, [(3, 1, 0), (0, 3, 0), (0, 0, 2)]),
    # z1^2·z2 + z2^5 + z1·z3^2
    (10, [(2, 1, 0), (0, 5, 0), (1, 0, 2)]),
    # z1^7 + z2^10 + z3^6: две ноги с det 7
    (11, [(7, 0, 0), (0, 10, 0), (0, 0, 6)]),
    # z1^3·z2 + z2^2·z3 + z3^2·z1
    (12, [(3, 1, 0), (0, 2, 1), (1, 0, 2)]),
]


@pytest.mark.parametrize("number, support", ONE_NODE_EXAMPLES)
def test_one_node_case(number, support):
    diagram = DiagramService.newton_boundary(support)
    assert DiagramService.is_valid(diagram)
    orbifold = InverseService.forward(diagram)
    assert len(orbifold.nodes) == 1

    found, case = InverseService.case_n1(orbifold)
    assert case == number
    assert DiagramService.equivalent(found, diagram)
    assert CorpusService.roundtrip(diagram) is None


def test_e6_legs():
    orbifold = InverseService.forward(DiagramService.newton_boundary([(3, 0, 0), (0, 4, 0), (0, 0, 2)]))
    node = orbifold.node_ids[0]
    assert orbifold.leg_groups(node) == {2: 1, 3: 2}
    assert orbifold.euler(node) == Fraction(-1, 6)


def test_repeated_leg_brieskorn():
    orbifold = InverseService.forward(DiagramService.newton_boundary([(7, 0, 0), (0, 10, 0), (0, 0, 6)]))
    node = orbifold.node_ids[0]
    assert orbifold.leg_groups(node) == {3: 1, 5: 1, 7: 2}
    assert orbifold.euler(node) == Fraction(-1, 105)
    assert InverseService.invert(orbifold).ok


def _one_node(e, legs, edges=()):
    return OrbifoldDiagram(
        nodes=(OrbNode(id=0, e=Fraction(e)),),
        edges=edges,
        legs=tuple(OrbLeg(node=0, det=d) for d in legs),
    )


@pytest.mark.parametrize(
    "orbifold",
    [
        _one_node(Fraction(-1, 30), [1, 3, 5]),
        _one_node(Fraction(1, 30), [2, 3, 5]),
        _one_node(Fraction(-1, 30), [2, 3], edges=(OrbEdge(a=0, b=7, det=1),)),
        OrbifoldDiagram(
            nodes=(OrbNode(id=0, e=Fraction(-1)), OrbNode(id=1, e=Fraction(-1)), OrbNode(id=2, e=Fraction(-1))),
            edges=(OrbEdge(a=0, b=1, det=1), OrbEdge(a=1, b=2, det=1), OrbEdge(a=2, b=0, det=1)),
        ),
        OrbifoldDiagram(nodes=(OrbNode(id=0, e=Fraction(-1)),), free_edge=3),
    ],
)
def test_invalid_orbifold_is_rejected(orbifold):
    result = InverseService.invert(orbifold)
    assert not result.ok
    assert result.stage == "input"


def test_brieskorn_case_needs_pairwise_free_dets():
    build = {number: builder for number, _, builder in ONE_NODE_CASES}[11]
    assert build(Fraction(-1, 40), [(2, 1), (4, 1), (5, 1)]) == []
    assert build(Fraction(-1, 30), [(2, 1), (3, 1), (5, 1)]) == [[(2, 0, 0), (0, 5, 0), (0, 0, 3)]]
