from fractions import Fraction

import pytest

from app.utils.exceptions import ArithmeticContractError
from app.utils.lattice import (
    PlaneSide,
    comb_area,
    cont_frac_value,
    cross,
    crossing_edge_det,
    det_via_vertex,
    edge_vector,
    empty_triangle_normal,
    face_det,
    neg_cont_frac,
    plane_side_test,
    primitive,
    segment_points,
)


@pytest.mark.parametrize(
    "t, s, expected",
    [
        (7, 3, [3, 2, 2]),
        (5, 4, [2, 2, 2, 2]),
        (3, 2, [2, 2]),
        (2, 1, [2]),
        (5, 1, [5]),
    ],
)
def test_neg_cont_frac(t, s, expected):
    assert neg_cont_frac(t, s) == expected
    assert cont_frac_value(expected) == Fraction(t, s)


def test_neg_cont_frac_range():
    with pytest.raises(ArithmeticContractError):
        neg_cont_frac(3, 3)


def test_e8_triangle_normal():
    assert empty_triangle_normal((5, 0, 0), (0, 3, 0), (0, 0, 2)) == (6, 10, 15)


def test_non_empty_triangle_rejected():
    with pytest.raises(ArithmeticContractError):
        empty_triangle_normal((2, 0, 0), (0, 2, 0), (0, 0, 2))


def test_face_det_and_parallel_normals():
    assert face_det((6, 10, 15), (1, 0, 0)) == 5
    assert face_det((6, 10, 15), (0, 1, 0)) == 3
    assert face_det((6, 10, 15), (0, 0, 1)) == 2
    with pytest.raises(ArithmeticContractError):
        face_det((1, 2, 3), (2, 4, 6))


def test_cross_and_primitive():
    assert cross((1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    assert primitive((4, 6, 8)) == (2, 3, 4)


def test_segment_points():
    assert segment_points((0, 0, 4), (2, 0, 0)) == [(0, 0, 4), (1, 0, 2), (2, 0, 0)]


def test_comb_area():
    assert comb_area([(5, 0, 0), (0, 3, 0), (0, 0, 2)]) == 1
    # Треугольник (2,0,0),(0,2,0),(0,0,2): 6 граничных точек, внутренних нет
    assert comb_area([(2, 0, 0), (0, 2, 0), (0, 0, 2)]) == 4


def test_plane_side_test():
    assert plane_side_test(2, 2, 3) == PlaneSide.OTHER
    assert plane_side_test(2, 2, 4) == PlaneSide.SAME
    assert plane_side_test(2, 3, 5) == PlaneSide.OTHER


@pytest.mark.parametrize("args", [(2, 4, 6), (1, 1, 5)])
def test_plane_side_test_undecidable(args):
    with pytest.raises(ArithmeticContractError):
        plane_side_test(*args)


@pytest.mark.parametrize(
    "f1, f2, expected",
    [
        ((6, 10, 15), (1, 0, 0), (0, 3, -2)),
        ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
        ((1, 2, 0), (1, 0, 2), (2, -1, -1)),
    ],
)
def test_edge_vector(f1, f2, expected):
    assert edge_vector(f1, f2, 1) == expected


def test_edge_vector_parallel():
    with pytest.raises(ArithmeticContractError):
        edge_vector((1, 2, 3), (2, 4, 6), 1)


def test_det_via_vertex():
    # Пересекающее ребро [(3,0,c),(0,1,b)], третья вершина (0,2,u): r + (s-1)a = 3
    assert det_via_vertex((0, 1, 5), (1, 3, 0), 1, 1) == 3
    # Соседняя грань - плоскость z1z3: детерминант равен p2
    assert det_via_vertex((-2, 4, 1), (0, 1, 0), 1, 1) == 4
    with pytest.raises(ArithmeticContractError):
        det_via_vertex((1, 0, 3), (0, 1, 0), 1, 1)


def test_crossing_edge_det():
    assert crossing_edge_det((3, 2, 12)) == 12
    assert crossing_edge_det((1, 1, 1)) == 1
    with pytest.raises(ArithmeticContractError):
        crossing_edge_det((1, 1, 0))
