"""
Сервис диаграмм Ньютона: построение границы, проверки, структура,
элементарные ходы и выделенные представители классов
"""

from fractions import Fraction
from itertools import combinations
from math import gcd
from random import Random
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from app.models import (
    ArmInfo,
    Edge,
    EdgeKind,
    Face,
    FaceShape,
    IsolationReport,
    Move,
    MoveKind,
    MovingTriangle,
    NewtonDiagram,
    StructureClass,
    TrapezoidLabel,
)
from app.services.logger import get_logger
from app.utils.constants import A_SERIES_MARKERS, PERMUTATIONS
from app.utils.exceptions import InvalidDiagramError
from app.utils.lattice import (
    E1,
    E2,
    E3,
    UNIT_VECTORS,
    IVec3,
    add,
    cross,
    dot,
    face_det,
    gcd3,
    permute,
    primitive,
    scale,
    segment_points,
    sub,
    vec,
)

logger = get_logger(__name__)

Plane = Tuple[IVec3, int]
Point2 = Tuple[int, int]


def _minimal_points(points: Iterable[IVec3]) -> List[IVec3]:
    """Покомпонентно минимальные точки носителя"""
    pts = sorted(set(points))
    return [
        p
        for p in pts
        if not any(q != p and q[0] <= p[0] and q[1] <= p[1] and q[2] <= p[2] for q in pts)
    ]


def _turn(o: Point2, a: Point2, b: Point2) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(points: List[Point2]) -> List[Point2]:
    """Выпуклая оболочка на плоскости без коллинеарных вершин (против часовой стрелки)"""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: List[Point2] = []
    for p in pts:
        while len(lower) >= 2 and _turn(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point2] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _turn(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _face_polygon(points: Sequence[IVec3]) -> Tuple[IVec3, ...]:
    # Нормаль компактной грани положительна, проекция вдоль z инъективна
    lifted = {(p[0], p[1]): p for p in points}
    return tuple(lifted[p] for p in _hull_2d(list(lifted)))


def _compact_planes(points: List[IVec3]) -> Dict[Plane, List[IVec3]]:
    """Опорные плоскости компактных граней и лежащие на них точки"""
    found: Dict[Plane, List[IVec3]] = {}
    for a, b, c in combinations(points, 3):
        normal = cross(sub(b, a), sub(c, a))
        if all(x < 0 for x in normal):
            normal = scale(-1, normal)
        elif not all(x > 0 for x in normal):
            continue
        normal = primitive(normal)
        value = dot(normal, a)
        if (normal, value) in found:
            continue
        if all(dot(normal, s) >= value for s in points):
            found[(normal, value)] = [s for s in points if dot(normal, s) == value]
    return found


def _noncompact_normals(a: IVec3, b: IVec3, points: List[IVec3]) -> List[IVec3]:
    """Нормали некомпактных граней Γ₊, содержащих отрезок [a, b]"""
    direction = sub(b, a)
    result: List[IVec3] = []
    for axis in UNIT_VECTORS:
        candidate = cross(direction, axis)
        if all(x >= 0 for x in candidate) and any(candidate):
            normal = primitive(candidate)
        elif all(x <= 0 for x in candidate) and any(candidate):
            normal = primitive(scale(-1, candidate))
        else:
            continue
        value = dot(normal, a)
        if normal not in result and all(dot(normal, s) >= value for s in points):
            result.append(normal)
    return result


def _edge_mult(a: IVec3, b: IVec3) -> int:
    """Число компонент отрезка после удаления не строго положительных точек решётки"""
    points = segment_points(a, b)
    deleted = [k for k, p in enumerate(points) if min(p) == 0]
    if not deleted:
        return 1
    components = len(deleted) - 1
    if deleted[0] > 0:
        components += 1
    if deleted[-1] < len(points) - 1:
        components += 1
    return max(components, 1)


def _edge_kind(a: IVec3, b: IVec3) -> EdgeKind:
    if any(a[i] == 0 and b[i] == 0 for i in range(3)):
        return EdgeKind.COORDINATE_PLANE
    return EdgeKind.CROSSING


def _between(p: IVec3, a: IVec3, b: IVec3) -> bool:
    """Точка p, коллинеарная a и b, лежит на отрезке [a, b]"""
    return all(min(a[i], b[i]) <= p[i] <= max(a[i], b[i]) for i in range(3))


def _crossing_axis(a: IVec3, b: IVec3) -> Optional[int]:
    """Ось, которую пересекает ребро [(p,0,a),(0,q,b)] (с точностью до перестановки)"""
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        for u, v in ((a, b), (b, a)):
            if u[k] == 0 and u[j] > 0 and v[j] == 0 and v[k] > 0 and u[i] + v[i] > 0:
                return i
    return None


def _unpermute(u: Sequence[int], perm: Sequence[int]) -> IVec3:
    """Обратная к permute: возвращает точку в исходных координатах"""
    result = [0, 0, 0]
    for i, source in enumerate(perm):
        result[source] = u[i]
    return (result[0], result[1], result[2])


def _planes(diagram: NewtonDiagram) -> FrozenSet[Plane]:
    return frozenset((face.normal, face.value) for face in diagram.compact_faces)


def _face_signature(face: Face) -> Tuple[IVec3, int, FrozenSet[IVec3]]:
    return (face.normal, face.value, frozenset(face.vertices))


def _face_lattice_points(face: Face) -> List[IVec3]:
    """Все точки решётки компактной грани (включая границу)"""
    vertices = face.vertices
    a1, a2, a3 = face.normal
    xs = [v[0] for v in vertices]
    ys = [v[1] for v in vertices]
    zs = [v[2] for v in vertices]
    polygon = [(v[0], v[1]) for v in vertices]
    result = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            rest = face.value - a1 * x - a2 * y
            if rest % a3:
                continue
            z = rest // a3
            if z < min(zs) or z > max(zs):
                continue
            turns = [
                _turn(polygon[i], polygon[(i + 1) % len(polygon)], (x, y))
                for i in range(len(polygon))
            ]
            if all(t >= 0 for t in turns) or all(t <= 0 for t in turns):
                result.append((x, y, z))
    return result


def _plane_points(normal: IVec3, value: int) -> List[IVec3]:
    """Неотрицательные точки решётки плоскости <normal, x> = value"""
    a1, a2, a3 = normal
    result = []
    for x in range(value // a1 + 1):
        for y in range((value - a1 * x) // a2 + 1):
            rest = value - a1 * x - a2 * y
            if rest % a3 == 0:
                result.append((x, y, rest // a3))
    return result


class DiagramService:
    """Сервис для работы с диаграммами Ньютона"""

    @staticmethod
    def newton_boundary(support: Iterable[Sequence[int]]) -> NewtonDiagram:
        """Строит границу Ньютона носителя: компактные грани, рёбра и прилегающие некомпактные грани"""
        points = {vec(*p) for p in support}
        if not points:
            raise InvalidDiagramError("Пустой носитель")
        if any(min(p) < 0 for p in points):
            raise InvalidDiagramError("Носитель содержит точки с отрицательными координатами")

        minimal = _minimal_points(points)
        planes = _compact_planes(minimal)
        if not planes:
            return DiagramService._degenerate_boundary(minimal)

        faces: List[Face] = []
        for face_id, (normal, value) in enumerate(sorted(planes)):
            polygon = _face_polygon(planes[(normal, value)])
            faces.append(Face(id=face_id, vertices=polygon, normal=normal, value=value))

        owners: Dict[FrozenSet[IVec3], List[int]] = {}
        for face in faces:
            vs = face.vertices
            for i in range(len(vs)):
                owners.setdefault(frozenset((vs[i], vs[(i + 1) % len(vs)])), []).append(face.id)

        noncompact: Dict[IVec3, Set[IVec3]] = {}
        boundary_normals: Dict[FrozenSet[IVec3], IVec3] = {}
        for ends, face_ids in owners.items():
            if len(face_ids) > 1:
                continue
            a, b = sorted(ends)
            normals = _noncompact_normals(a, b, minimal)
            if not normals:
                raise InvalidDiagramError(f"Не найдена некомпактная грань для ребра {a}-{b}")
            boundary_normals[ends] = normals[0]
            noncompact.setdefault(normals[0], set()).update((a, b))

        ids: Dict[IVec3, int] = {}
        for normal in sorted(noncompact):
            ids[normal] = len(faces)
            members = sorted(noncompact[normal])
            faces.append(
                Face(
                    id=ids[normal],
                    vertices=tuple(members),
                    normal=normal,
                    value=dot(normal, members[0]),
                    compact=False,
                )
            )

        edges: List[Edge] = []
        for ends, face_ids in sorted(owners.items(), key=lambda item: sorted(item[0])):
            a, b = sorted(ends)
            if len(face_ids) > 1:
                pair = (face_ids[0], face_ids[1])
                boundary = False
            else:
                pair = (face_ids[0], ids[boundary_normals[ends]])
                boundary = True
            edges.append(
                Edge(
                    ends=(a, b),
                    faces=pair,
                    det=face_det(faces[pair[0]].normal, faces[pair[1]].normal),
                    mult=_edge_mult(a, b),
                    kind=_edge_kind(a, b),
                    boundary=boundary,
                )
            )

        vertices = sorted({v for face in faces if face.compact for v in face.vertices})
        return NewtonDiagram(vertices=tuple(vertices), faces=tuple(faces), edges=tuple(edges))

    @staticmethod
    def _degenerate_boundary(minimal: List[IVec3]) -> NewtonDiagram:
        """Граница без двумерных граней: вершина, отрезок или ломаная из компактных рёбер"""
        if len(minimal) == 1:
            return NewtonDiagram(vertices=(minimal[0],))

        pairs = []
        for a, b in combinations(minimal, 2):
            direction = sub(b, a)
            # Ребро - максимальный отрезок своей прямой
            if any(
                p not in (a, b) and cross(sub(p, a), direction) == (0, 0, 0) and not _between(p, a, b)
                for p in minimal
            ):
                continue
            normals = _noncompact_normals(a, b, minimal)
            if len(normals) >= 2:
                pairs.append((a, b, normals[:2]))
        if not pairs:
            logger.warning(f"Не найдено ни одного компактного ребра для {minimal}")
            return NewtonDiagram(vertices=tuple(minimal))

        faces: List[Face] = []
        ids: Dict[IVec3, int] = {}
        members: Dict[IVec3, Set[IVec3]] = {}
        for a, b, normals in pairs:
            for normal in normals:
                members.setdefault(normal, set()).update((a, b))
        for normal in sorted(members):
            ids[normal] = len(faces)
            pts = sorted(members[normal])
            faces.append(
                Face(id=ids[normal], vertices=tuple(pts), normal=normal, value=dot(normal, pts[0]), compact=False)
            )
        edges = [
            Edge(
                ends=(a, b),
                faces=(ids[normals[0]], ids[normals[1]]),
                det=face_det(normals[0], normals[1]),
                mult=_edge_mult(a, b),
                kind=_edge_kind(a, b),
                boundary=True,
            )
            for a, b, normals in pairs
        ]
        vertices = sorted({v for a, b, _ in pairs for v in (a, b)})
        return NewtonDiagram(vertices=tuple(vertices), faces=tuple(faces), edges=tuple(edges))

    @staticmethod
    def lattice_points(diagram: NewtonDiagram) -> List[IVec3]:
        """Все точки решётки на Γ: грани, рёбра и вершины"""
        points: Set[IVec3] = set(diagram.vertices)
        for face in diagram.compact_faces:
            points.update(_face_lattice_points(face))
        for edge in diagram.edges:
            points.update(segment_points(*edge.ends))
        return sorted(points)

    @staticmethod
    def noncompact_faces(diagram: NewtonDiagram) -> List[Face]:
        """Некомпактные грани, прилегающие к рёбрам ∂Γ"""
        return diagram.noncompact_faces

    @staticmethod
    def check_qhs(diagram: NewtonDiagram) -> bool:
        """Γ не содержит строго положительных точек решётки"""
        return all(min(p) == 0 for p in DiagramService.lattice_points(diagram))

    @staticmethod
    def check_isolated(diagram: NewtonDiagram) -> IsolationReport:
        """Проверка критерия изолированности"""
        violations = []
        points = set(DiagramService.lattice_points(diagram))
        for forbidden in ((0, 0, 0), E1, E2, E3):
            if forbidden in points:
                violations.append(f"точка {forbidden} лежит на диаграмме")
        for i in range(3):
            if not any(v[i] == 0 for v in diagram.vertices):
                violations.append(f"нет вершины на координатной плоскости z{i + 1}=0")
        for i in range(3):
            others = [x for x in range(3) if x != i]
            if not any(v[others[0]] + v[others[1]] <= 1 for v in diagram.vertices):
                violations.append(f"нет вершины на расстоянии не больше 1 от оси z{i + 1}")
        return IsolationReport(ok=not violations, violations=tuple(violations))

    @staticmethod
    def is_valid(diagram: NewtonDiagram) -> bool:
        return DiagramService.check_isolated(diagram).ok and DiagramService.check_qhs(diagram)

    @staticmethod
    def require_valid(diagram: NewtonDiagram) -> None:
        report = DiagramService.check_isolated(diagram)
        if not report.ok:
            raise InvalidDiagramError(f"Нарушен критерий изолированности: {'; '.join(report.violations)}")
        if not DiagramService.check_qhs(diagram):
            raise InvalidDiagramError("Диаграмма содержит строго положительную точку решётки")

    @staticmethod
    def permute(diagram: NewtonDiagram, perm: Sequence[int]) -> NewtonDiagram:
        """Перестановка координат: i-я новая координата равна старой perm[i]"""
        return DiagramService.newton_boundary(permute(v, perm) for v in diagram.vertices)

    @staticmethod
    def normalize_permutation(diagram: NewtonDiagram) -> Tuple[NewtonDiagram, Tuple[int, int, int]]:
        """Лексикографически наименьший отсортированный список вершин среди шести перестановок"""
        best = min(
            PERMUTATIONS,
            key=lambda perm: sorted(permute(v, perm) for v in diagram.vertices),
        )
        return DiagramService.permute(diagram, best), best

    @staticmethod
    def classify_faces(diagram: NewtonDiagram) -> List[FaceShape]:
        """Треугольники и трапеции с параметрами (p, q, n, t, r1, r2)"""
        shapes = []
        for face in diagram.compact_faces:
            if len(face.vertices) == 3:
                shapes.append(FaceShape(face_id=face.id, shape="triangle"))
            elif len(face.vertices) == 4:
                label = DiagramService._trapezoid_label(face)
                shapes.append(FaceShape(face_id=face.id, shape="trapezoid", trapezoid=label))
            else:
                raise InvalidDiagramError(
                    f"Грань {face.id} с {len(face.vertices)} вершинами не треугольник и не трапеция"
                )
        return shapes

    @staticmethod
    def _trapezoid_label(face: Face) -> TrapezoidLabel:
        vs = face.vertices
        bottoms = []
        for idx in range(4):
            a, b = vs[idx], vs[(idx + 1) % 4]
            for i in range(3):
                if a[i] == 0 and b[i] == 0:
                    # Сначала ребро с внутренними точками, затем наименьшая плоскость
                    bottoms.append((gcd3(sub(b, a)) == 1, i, idx))
        for _, plane, idx in sorted(bottoms):
            bottom = (vs[idx], vs[(idx + 1) % 4])
            top = (vs[(idx + 2) % 4], vs[(idx + 3) % 4])
            for perm in PERMUTATIONS:
                if perm[2] != plane:
                    continue
                upper = [permute(v, perm) for v in top]
                a_vertex = next((v for v in upper if v[1] == 0 and v[0] > 0), None)
                b_vertex = next((v for v in upper if v[0] == 0 and v[1] > 0), None)
                if a_vertex is None or b_vertex is None or a_vertex[2] != b_vertex[2]:
                    continue
                p, q, n = a_vertex[0], b_vertex[1], a_vertex[2]
                lower = [permute(v, perm) for v in bottom]
                c_vertex = max(lower, key=lambda v: v[1])
                d_vertex = min(lower, key=lambda v: v[1])
                if n <= 0 or (d_vertex[0] - c_vertex[0]) % p:
                    continue
                t = (d_vertex[0] - c_vertex[0]) // p
                r1, r2 = c_vertex[0], d_vertex[1]
                if (
                    t >= 1
                    and gcd(p, q) == 1
                    and c_vertex == (r1, r2 + t * q, 0)
                    and d_vertex == (r1 + t * p, r2, 0)
                ):
                    return TrapezoidLabel(
                        face_id=face.id, p=p, q=q, n=n, t=t, r1=r1, r2=r2, perm=perm
                    )
        raise InvalidDiagramError(f"Четырёхугольная грань {face.id} не является трапецией {vs}")

    @staticmethod
    def removable_vertices(label: TrapezoidLabel) -> List[str]:
        """Вершины трапеции, удаляемые ходом M2-"""
        result = []
        if label.r2 + label.q == 1:
            result.append("A")
        if label.r1 + label.p == 1:
            result.append("B")
        if label.n == 1 or label.r1 + label.t * label.p == 1:
            result.append("C")
        if label.n == 1 or label.r2 + label.t * label.q == 1:
            result.append("D")
        return result

    @staticmethod
    def removable_trapezoid(label: TrapezoidLabel) -> bool:
        """Трапеция неудаляема, если n > 1, r1 + p > 1 и r2 + q > 1"""
        return not (label.n > 1 and label.r1 + label.p > 1 and label.r2 + label.q > 1)

    @staticmethod
    def arms(diagram: NewtonDiagram) -> List[ArmInfo]:
        """Руки по направлениям осей: треугольники от кисти к плечу или вырожденное ребро"""
        result = []
        for axis in range(3):
            j, k = [x for x in range(3) if x != axis]
            members = []
            for face in diagram.compact_faces:
                if len(face.vertices) != 3:
                    continue
                if not all(v[j] == 0 or v[k] == 0 for v in face.vertices):
                    continue
                if not any(
                    _crossing_axis(edge.ends[0], edge.ends[1]) == axis
                    for edge in diagram.face_edges(face.id)
                ):
                    continue
                centre = add(add(face.vertices[0], face.vertices[1]), face.vertices[2])
                # Ближе к оси в проекции на треугольник z1+z2+z3=1
                members.append((-Fraction(centre[axis], sum(centre)), face.id))
            if members:
                result.append(ArmInfo(axis=axis, triangles=tuple(fid for _, fid in sorted(members))))
                continue
            crossing = [
                edge.ends for edge in diagram.edges if _crossing_axis(edge.ends[0], edge.ends[1]) == axis
            ]
            if crossing and diagram.compact_faces:
                result.append(ArmInfo(axis=axis, degenerate_edge=crossing[0]))
        return result

    @staticmethod
    def structure_class(diagram: NewtonDiagram) -> StructureClass:
        """Семейство ■/▲/l с числом кистей или отрезок"""
        if not diagram.compact_faces:
            return StructureClass(family="segment")
        arms = DiagramService.arms(diagram)
        hands = sum(1 for arm in arms if arm.triangles)
        in_arms = {fid for arm in arms for fid in arm.triangles}
        if any(len(face.vertices) == 4 for face in diagram.compact_faces):
            family = "trapezoid"
        elif any(face.id not in in_arms for face in diagram.compact_faces):
            family = "triangle"
        else:
            family = "edge"
        return StructureClass(family=family, hands=hands)

    @staticmethod
    def moving_triangles(diagram: NewtonDiagram) -> List[MovingTriangle]:
        """Треугольники P=(p,0,1), Q=(0,q,1), R=(m,n,0) с общим ребром PQ и p ≤ q"""
        result = []
        for face in diagram.compact_faces:
            if len(face.vertices) != 3:
                continue
            for perm in PERMUTATIONS:
                vs = [permute(v, perm) for v in face.vertices]
                p_vertex = next((v for v in vs if v[0] > 0 and v[1] == 0 and v[2] == 1), None)
                q_vertex = next((v for v in vs if v[0] == 0 and v[1] > 0 and v[2] == 1), None)
                r_vertex = next((v for v in vs if v[2] == 0), None)
                if p_vertex is None or q_vertex is None or r_vertex is None:
                    continue
                if p_vertex[0] > q_vertex[1]:
                    continue
                pq = frozenset((_unpermute(p_vertex, perm), _unpermute(q_vertex, perm)))
                shared = any(
                    frozenset(edge.ends) == pq and not edge.boundary for edge in diagram.edges
                )
                if not shared:
                    continue
                result.append(
                    MovingTriangle(
                        face_id=face.id,
                        perm=perm,
                        p=p_vertex[0],
                        q=q_vertex[1],
                        m=r_vertex[0],
                        n=r_vertex[1],
                    )
                )
                break
        return result

    @staticmethod
    def moving_vertex_target(triangle: MovingTriangle) -> IVec3:
        """Положение движущейся вершины R в d-минимальном представителе (координаты perm)"""
        p, q, m, n = triangle.p, triangle.q, triangle.m, triangle.n
        if n % q == 0:
            return (m + (n // q) * p, 0, 0)
        if m % p == 0:
            return (0, n + (m // p) * q, 0)
        return (m + (n // q) * p, n % q, 0)

    @staticmethod
    def a_series_class(diagram: NewtonDiagram) -> Optional[int]:
        """Определитель n класса отрезка [(0,1,1),(n,0,0)] или None"""
        points = set(DiagramService.lattice_points(diagram))
        if not any(marker in points for marker in A_SERIES_MARKERS):
            return None
        from app.services.invariant_service import InvariantService

        return InvariantService.milnor(diagram) + 1

    @staticmethod
    def is_subdiagram(inner: NewtonDiagram, outer: NewtonDiagram) -> bool:
        """Γ₁ ⊂ Γ₂ как подмножества"""
        outer_points = set(DiagramService.lattice_points(outer))
        if not set(DiagramService.lattice_points(inner)) <= outer_points:
            return False
        planes = _planes(outer)
        if not all((face.normal, face.value) in planes for face in inner.compact_faces):
            return False
        if inner.compact_faces:
            return True
        for edge in inner.edges:
            a, b = edge.ends
            on_plane = any(dot(n, a) == m and dot(n, b) == m for n, m in planes)
            on_edge = any(
                a in segment_points(*other.ends) and b in segment_points(*other.ends)
                for other in outer.edges
            )
            if not (on_plane or on_edge):
                return False
        return True

    @staticmethod
    def _trial(points: Iterable[IVec3]) -> Optional[NewtonDiagram]:
        """Пробная граница для хода; None, если носитель не даёт диаграммы"""
        try:
            return DiagramService.newton_boundary(points)
        except InvalidDiagramError as e:
            logger.debug(f"Пробная граница отброшена: {e}")
            return None

    @staticmethod
    def _with_points(diagram: NewtonDiagram, added=(), removed=()) -> Optional[NewtonDiagram]:
        points = set(DiagramService.lattice_points(diagram))
        points.update(added)
        points.difference_update(removed)
        return DiagramService._trial(points)

    @staticmethod
    def _m1_minus_moves(diagram: NewtonDiagram) -> List[Tuple[Move, NewtonDiagram]]:
        compact = diagram.compact_faces
        if len(compact) < 2:
            return []
        result = []
        for face in compact:
            if len(face.vertices) != 3:
                continue
            edges = diagram.face_edges(face.id)
            shared = [edge for edge in edges if not edge.boundary]
            if not shared or not any(edge.boundary for edge in edges):
                continue
            others = set()
            for other in compact:
                if other.id != face.id:
                    others.update(_face_lattice_points(other))
            removed = tuple(p for p in _face_lattice_points(face) if p not in others)
            if not removed:
                continue
            trial = DiagramService._with_points(diagram, removed=removed)
            if trial is None:
                continue
            expected = {_face_signature(f) for f in compact if f.id != face.id}
            if {_face_signature(f) for f in trial.compact_faces} != expected:
                continue
            if not DiagramService.check_isolated(trial).ok:
                continue
            move = Move(kind=MoveKind.M1_MINUS, axis=shared[0].ends, points=removed)
            result.append((move, trial))
        return result

    @staticmethod
    def _m2_minus_moves(diagram: NewtonDiagram) -> List[Tuple[Move, NewtonDiagram]]:
        planes = _planes(diagram)
        points = set(DiagramService.lattice_points(diagram))
        old_edges = {edge.ends for edge in diagram.edges}
        result = []
        for vertex in diagram.vertices:
            if len(points) < 2:
                break
            trial = DiagramService._trial(points - {vertex})
            if trial is None or _planes(trial) != planes or not DiagramService.is_valid(trial):
                continue
            new_edges = sorted(
                edge.ends for edge in trial.edges if edge.boundary and edge.ends not in old_edges
            )
            axis = new_edges[0] if new_edges else (vertex, vertex)
            removed = tuple(sorted(points - set(DiagramService.lattice_points(trial))))
            result.append((Move(kind=MoveKind.M2_MINUS, axis=axis, points=removed), trial))
        return result

    @staticmethod
    def _crossing_frame(a: IVec3, b: IVec3) -> Optional[Tuple[IVec3, IVec3, int, int, int]]:
        """Ориентация ребра как A=(a,0,c), B=(0,1,b): (A, B, i, j, k)"""
        for u, v in ((a, b), (b, a)):
            for i in range(3):
                for j in range(3):
                    if i == j:
                        continue
                    k = 3 - i - j
                    if u[i] > 0 and u[j] == 0 and v[i] == 0 and v[j] == 1:
                        return u, v, i, j, k
        return None

    @staticmethod
    def _m1_plus_moves(diagram: NewtonDiagram) -> List[Tuple[Move, NewtonDiagram]]:
        if not diagram.compact_faces and not diagram.is_segment:
            return []
        bound = max(sum(v) for v in diagram.vertices) + 2
        before = {_face_signature(f) for f in diagram.compact_faces}
        result = []
        for edge in diagram.edges:
            if not edge.boundary or edge.kind != EdgeKind.CROSSING:
                continue
            frame = DiagramService._crossing_frame(*edge.ends)
            if frame is None:
                continue
            a_vertex, b_vertex, i, j, k = frame
            for first in range(a_vertex[i]):
                for third in range(bound + 1):
                    c_vertex = [0, 0, 0]
                    c_vertex[i], c_vertex[k] = first, third
                    c_vertex = tuple(c_vertex)
                    trial = DiagramService._with_points(diagram, added=(c_vertex,))
                    if trial is None:
                        continue
                    after = {_face_signature(f) for f in trial.compact_faces}
                    if not before <= after or len(after) != len(before) + 1:
                        continue
                    (extra,) = after - before
                    if extra[2] != frozenset((a_vertex, b_vertex, c_vertex)):
                        continue
                    if not DiagramService.is_valid(trial):
                        continue
                    move = Move(kind=MoveKind.M1_PLUS, axis=edge.ends, points=(c_vertex,))
                    result.append((move, trial))
        return result

    @staticmethod
    def _m2_plus_moves(diagram: NewtonDiagram) -> List[Tuple[Move, NewtonDiagram]]:
        planes = _planes(diagram)
        points = set(DiagramService.lattice_points(diagram))
        result = []
        for face in diagram.compact_faces:
            unchanged = {_face_signature(f) for f in diagram.compact_faces if f.id != face.id}
            for edge in diagram.face_edges(face.id):
                if not edge.boundary or edge.kind != EdgeKind.CROSSING:
                    continue
                a, b = edge.ends
                inside = next(v for v in face.vertices if v not in edge.ends)
                side = dot(face.normal, cross(sub(b, a), sub(inside, a)))
                for candidate in _plane_points(face.normal, face.value):
                    if candidate in points:
                        continue
                    if dot(face.normal, cross(sub(b, a), sub(candidate, a))) * side >= 0:
                        continue
                    trial = DiagramService._trial(points | {candidate})
                    if trial is None or _planes(trial) != planes:
                        continue
                    if not unchanged <= {_face_signature(f) for f in trial.compact_faces}:
                        continue
                    if not DiagramService.is_valid(trial):
                        continue
                    move = Move(kind=MoveKind.M2_PLUS, axis=edge.ends, points=(candidate,))
                    result.append((move, trial))
        return result

    @staticmethod
    def _moves_with_results(
        diagram: NewtonDiagram, kinds: Iterable[MoveKind]
    ) -> List[Tuple[Move, NewtonDiagram]]:
        builders = {
            MoveKind.M1_PLUS: DiagramService._m1_plus_moves,
            MoveKind.M1_MINUS: DiagramService._m1_minus_moves,
            MoveKind.M2_PLUS: DiagramService._m2_plus_moves,
            MoveKind.M2_MINUS: DiagramService._m2_minus_moves,
        }
        wanted = set(kinds)
        result = []
        for kind in MoveKind:
            if kind in wanted:
                result.extend(builders[kind](diagram))
        return result

    @staticmethod
    def enumerate_moves(diagram: NewtonDiagram, kinds: Iterable[MoveKind] = tuple(MoveKind)) -> List[Move]:
        """Все применимые ходы заданных типов, сохраняющие изолированность"""
        return [move for move, _ in DiagramService._moves_with_results(diagram, kinds)]

    @staticmethod
    def apply_move(diagram: NewtonDiagram, move: Move) -> NewtonDiagram:
        """Применяет ход и перепроверяет изолированность и QHS"""
        for candidate, result in DiagramService._moves_with_results(diagram, [move.kind]):
            if candidate.kind == move.kind and set(candidate.points) == set(move.points):
                DiagramService.require_valid(result)
                return result
        raise InvalidDiagramError(f"Ход {move.kind.value} с точками {list(move.points)} неприменим")

    @staticmethod
    def random_move_walk(
        diagram: NewtonDiagram, length: int, rng: Random
    ) -> List[Tuple[Move, NewtonDiagram]]:
        """Случайная последовательность допустимых ходов"""
        walk = []
        current = diagram
        for _ in range(length):
            options = DiagramService._moves_with_results(current, MoveKind)
            if not options:
                break
            move, current = options[rng.randrange(len(options))]
            walk.append((move, current))
        logger.debug(f"Случайная прогулка: {[move.kind.value for move, _ in walk]}")
        return walk

    @staticmethod
    def m1_minimal(diagram: NewtonDiagram) -> NewtonDiagram:
        """Удаление треугольников ходами M1- до M1-минимальности"""
        current = diagram
        while True:
            moves = DiagramService._m1_minus_moves(current)
            if not moves:
                return current
            current = moves[0][1]

    @staticmethod
    def _maximize(diagram: NewtonDiagram) -> NewtonDiagram:
        """Расширение всех граней до максимальных в своих опорных плоскостях"""
        planes = _planes(diagram)
        points = set(DiagramService.lattice_points(diagram))
        candidates = sorted(
            {
                x
                for normal, value in planes
                for x in _plane_points(normal, value)
                if all(dot(n, x) >= m for n, m in planes)
            }
            - points
        )
        if not candidates:
            return diagram
        trial = DiagramService._trial(points | set(candidates))
        if trial is not None and _planes(trial) == planes and DiagramService.check_isolated(trial).ok:
            return trial

        current = diagram
        changed = True
        while changed:
            changed = False
            current_points = set(DiagramService.lattice_points(current))
            for x in candidates:
                if x in current_points:
                    continue
                trial = DiagramService._trial(current_points | {x})
                if trial is not None and _planes(trial) == planes and DiagramService.check_isolated(trial).ok:
                    current = trial
                    current_points = set(DiagramService.lattice_points(current))
                    changed = True
        return current

    @staticmethod
    def canonical(diagram: NewtonDiagram) -> NewtonDiagram:
        """Канонический представитель: M1-минимальный с максимальными гранями"""
        DiagramService.require_valid(diagram)
        if DiagramService.a_series_class(diagram) is not None:
            raise InvalidDiagramError("Для класса отрезка канонический представитель не определён")
        return DiagramService._maximize(DiagramService.m1_minimal(diagram))

    @staticmethod
    def _minimal_rank(diagram: NewtonDiagram):
        trapezoids = sum(1 for face in diagram.compact_faces if len(face.vertices) == 4)
        normalized, _ = DiagramService.normalize_permutation(diagram)
        return (trapezoids, len(diagram.vertices), normalized.key())

    @staticmethod
    def _best_minimal(canonical: NewtonDiagram) -> NewtonDiagram:
        """Обход всех уменьшений M2- и выбор предпочтительного минимального представителя"""
        seen = {canonical.key()}
        stack = [canonical]
        terminals = []
        while stack:
            current = stack.pop()
            successors = DiagramService._m2_minus_moves(current)
            if not successors:
                terminals.append(current)
            for _, trial in successors:
                if trial.key() not in seen:
                    seen.add(trial.key())
                    stack.append(trial)
        logger.debug(f"Минимальных представителей: {len(terminals)}, состояний: {len(seen)}")
        return min(terminals, key=DiagramService._minimal_rank)

    @staticmethod
    def _place_moving_vertices(diagram: NewtonDiagram) -> NewtonDiagram:
        current = diagram
        for triangle in DiagramService.moving_triangles(diagram):
            face = current.face(triangle.face_id)
            r_vertex = _unpermute((triangle.m, triangle.n, 0), triangle.perm)
            target = _unpermute(DiagramService.moving_vertex_target(triangle), triangle.perm)
            if target == r_vertex or r_vertex not in face.vertices:
                continue
            trial = DiagramService._with_points(current, added=(target,), removed=(r_vertex,))
            unchanged = {_face_signature(f) for f in current.compact_faces if f.id != face.id}
            if (
                trial is not None
                and _planes(trial) == _planes(current)
                and unchanged <= {_face_signature(f) for f in trial.compact_faces}
                and DiagramService.is_valid(trial)
            ):
                logger.debug(f"Движущаяся вершина {r_vertex} перенесена в {target}")
                current = trial
        return current

    @staticmethod
    def d_minimal(diagram: NewtonDiagram) -> NewtonDiagram:
        """Выделенный минимальный представитель класса эквивалентности"""
        DiagramService.require_valid(diagram)
        n = DiagramService.a_series_class(diagram)
        if n is not None:
            logger.debug(f"Класс отрезка, n={n}")
            return DiagramService.newton_boundary([(0, 1, 1), (n, 0, 0)])

        reduced = DiagramService.m1_minimal(diagram)
        canonical = DiagramService._maximize(reduced)
        logger.debug(
            f"Канонический представитель: {len(canonical.compact_faces)} граней, "
            f"{len(canonical.vertices)} вершин"
        )
        minimal = DiagramService._place_moving_vertices(DiagramService._best_minimal(canonical))
        normalized, _ = DiagramService.normalize_permutation(minimal)
        return normalized

    @staticmethod
    def equivalent(first: NewtonDiagram, second: NewtonDiagram) -> bool:
        """Γ₁ ∼ Γ₂ с точностью до перестановки координат"""
        return DiagramService.d_minimal(first).key() == DiagramService.d_minimal(second).key()

    @staticmethod
    def det_criterion_check(diagram: NewtonDiagram) -> bool:
        """Все рёбра ∂Γ имеют определитель больше 1"""
        return all(edge.det > 1 for edge in diagram.edges if edge.boundary)
