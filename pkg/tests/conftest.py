"""
Общие фикстуры тестов
"""

import pytest

from app.models import ResolutionGraph
from app.services.diagram_service import DiagramService

E8_SUPPORT = [(5, 0, 0), (0, 3, 0), (0, 0, 2)]
SYMM_SUPPORT = [(0, 0, 2), (2, 0, 1), (0, 3, 1), (7, 1, 0)]


def segment(n: int):
    return DiagramService.newton_boundary([(0, 1, 1), (n, 0, 0)])


@pytest.fixture
def e8():
    """z1^5 + z2^3 + z3^2"""
    return DiagramService.newton_boundary(E8_SUPPORT)


@pytest.fixture
def segment4():
    """z1^4 + z2·z3"""
    return segment(4)


@pytest.fixture
def symm():
    return DiagramService.newton_boundary(SYMM_SUPPORT)


@pytest.fixture
def unrealizable_graph():
    """
    Нереализуемый граф: a(-3) - b(-7) - c(-1) - d(-2), e(-3) - b, f(-3) - c
    """
    return ResolutionGraph(
        weights={0: -3, 1: -7, 2: -1, 3: -2, 4: -3, 5: -3},
        edges=((0, 1), (1, 2), (2, 3), (4, 1), (5, 2)),
    )
