from fractions import Fraction
from math import gcd

import pytest

from app.models import InvariantReport
from app.services.diagram_service import DiagramService
from app.services.invariant_service import InvariantService
from tests.conftest import segment


def test_e8_invariants(e8):
    report = InvariantService.report(e8)
    assert isinstance(report, InvariantReport)
    assert report.milnor == 8
    assert report.geometric_genus == 0
    assert report.multiplicity == 2


@pytest.mark.parametrize("n", [2, 3, 4, 7])
def test_segment_milnor(n):
    assert InvariantService.milnor(segment(n)) == n - 1


def _coprime_triples(limit):
    for a in range(2, limit + 1):
        for b in range(a + 1, limit + 1):
            for c in range(b + 1, limit + 1):
                if gcd(a, b) == gcd(b, c) == gcd(a, c) == 1:
                    yield a, b, c


@pytest.mark.parametrize("a, b, c", list(_coprime_triples(12)))
def test_brieskorn_milnor(a, b, c):
    diagram = DiagramService.newton_boundary([(a, 0, 0), (0, b, 0), (0, 0, c)])
    if not DiagramService.is_valid(diagram):
        pytest.skip("диаграмма не QHS")
    assert InvariantService.milnor(diagram) == (a - 1) * (b - 1) * (c - 1)


def test_convenient_completion(segment4):
    full = InvariantService.convenient_completion(segment4)
    assert (0, 11, 0) in full.vertices
    assert (0, 0, 11) in full.vertices


def test_face_equations_e8(e8):
    (check,) = InvariantService.face_equations(e8)
    assert check.euler == Fraction(-1, 30)
    assert check.normal_identity
    assert check.value_identity


def test_face_equations_symm(symm):
    checks = InvariantService.face_equations(symm)
    assert len(checks) == len(symm.compact_faces)
    assert all(check.normal_identity and check.value_identity for check in checks)


def test_divisibility_report(e8, symm):
    assert InvariantService.divisibility_report(e8) == []
    assert InvariantService.divisibility_report(DiagramService.d_minimal(symm)) == []


def test_leg_face_value_mm():
    value = InvariantService.leg_face_value_mm((6, 10, 15), Fraction(-1, 30), [(0, 5), (0, 3), (0, 2)])
    assert value == 30


def test_brieskorn_triples_include_qhs_cases():
    valid = [
        (a, b, c)
        for a, b, c in _coprime_triples(12)
        if DiagramService.is_valid(DiagramService.newton_boundary([(a, 0, 0), (0, b, 0), (0, 0, c)]))
    ]
    assert {(2, 3, 5), (2, 3, 7), (2, 3, 11), (2, 5, 7)} <= set(valid)
