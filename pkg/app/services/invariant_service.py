"""
Инварианты, вычисляемые по границе Ньютона
"""

from fractions import Fraction
from typing import List, Sequence, Tuple

from app.models import EdgeKind, FaceEquationCheck, InvariantReport, NewtonDiagram
from app.services.diagram_service import DiagramService
from app.services.logger import get_logger
from app.services.oka_service import OkaService
from app.utils.exceptions import ArithmeticContractError
from app.utils.lattice import UNIT_VECTORS, IVec3, comb_area, gcd3, scale

logger = get_logger(__name__)


def _det3(a: IVec3, b: IVec3, c: IVec3) -> int:
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


class InvariantService:
    """Сервис инвариантов диаграммы"""

    @staticmethod
    def convenient_completion(diagram: NewtonDiagram) -> NewtonDiagram:
        """Добавляет d·E_i для каждой пропущенной оси, d = 2·max Σp + 3"""
        missed = [
            i
            for i in range(3)
            if not any(v[i] > 0 and sum(v) == v[i] for v in diagram.vertices)
        ]
        if not missed:
            return diagram
        d = 2 * max(sum(v) for v in diagram.vertices) + 3
        support = list(diagram.vertices) + [scale(d, UNIT_VECTORS[i]) for i in missed]
        logger.debug(f"Пополнение по осям {missed} с d={d}")
        return DiagramService.newton_boundary(support)

    @staticmethod
    def milnor(diagram: NewtonDiagram) -> int:
        """Число Милнора ν = 6V₃ - 2V₂ + V₁ - 1"""
        DiagramService.require_valid(diagram)
        full = InvariantService.convenient_completion(diagram)

        volume3 = 0
        for face in full.compact_faces:
            vs = face.vertices
            for i in range(1, len(vs) - 1):
                volume3 += abs(_det3(vs[0], vs[i], vs[i + 1]))

        volume2 = 0
        for edge in full.edges:
            a, b = edge.ends
            for k in range(3):
                if a[k] == 0 and b[k] == 0:
                    u, w = [x for x in range(3) if x != k]
                    volume2 += abs(a[u] * b[w] - a[w] * b[u])

        volume1 = sum(v[i] for v in full.vertices for i in range(3) if sum(v) == v[i])
        mu = volume3 - volume2 + volume1 - 1
        if mu < 0:
            raise ArithmeticContractError(f"Отрицательное число Милнора {mu}")
        return mu

    @staticmethod
    def geom_genus(diagram: NewtonDiagram) -> int:
        """Число строго положительных точек решётки под диаграммой"""
        DiagramService.require_valid(diagram)
        full = InvariantService.convenient_completion(diagram)
        faces = full.compact_faces
        bound = max(max(v) for v in full.vertices)

        count = 0
        for x in range(1, bound + 1):
            for y in range(1, bound + 1):
                highest = 0
                for face in faces:
                    a1, a2, a3 = face.normal
                    rest = face.value - a1 * x - a2 * y
                    if rest >= a3:
                        highest = max(highest, rest // a3)
                count += highest
        return count

    @staticmethod
    def multiplicity(diagram: NewtonDiagram) -> int:
        return min(sum(v) for v in diagram.vertices)

    @staticmethod
    def report(diagram: NewtonDiagram) -> InvariantReport:
        return InvariantReport(
            milnor=InvariantService.milnor(diagram),
            geometric_genus=InvariantService.geom_genus(diagram),
            multiplicity=InvariantService.multiplicity(diagram),
        )

    @staticmethod
    def face_equations(diagram: NewtonDiagram) -> List[FaceEquationCheck]:
        """
        Проверка тождеств для каждой компактной грани:
        e·F + Σ (m/t)·F▽ = 0 и e·m_△ + Σ (m/t)·m▽ = -g(△)
        """
        result = []
        for face in diagram.compact_faces:
            e = OkaService.face_euler(diagram, face)
            vector = [e * x for x in face.normal]
            value = e * face.value
            for edge in diagram.face_edges(face.id):
                other = diagram.face(edge.faces[1] if edge.faces[0] == face.id else edge.faces[0])
                weight = Fraction(edge.mult, edge.det)
                vector = [vector[i] + weight * other.normal[i] for i in range(3)]
                value += weight * other.value
            result.append(
                FaceEquationCheck(
                    face_id=face.id,
                    euler=e,
                    normal_identity=all(x == 0 for x in vector),
                    value_identity=value == -comb_area(face.vertices),
                )
            )
        return result

    @staticmethod
    def divisibility_report(diagram: NewtonDiagram) -> List[str]:
        """Нарушения свойств делимости детерминантов ног; пустой список - всё выполнено"""
        violations = []
        for edge in diagram.edges:
            if not edge.boundary:
                continue
            compact = diagram.face(edge.faces[0])
            outer = diagram.face(edge.faces[1])
            if not compact.compact:
                continue
            if outer.normal in UNIT_VECTORS:
                k = UNIT_VECTORS.index(outer.normal)
                others = [compact.normal[i] for i in range(3) if i != k]
                expected = gcd3((others[0], others[1], 0))
                if edge.det != expected:
                    violations.append(
                        f"нога {edge.ends}: детерминант {edge.det}, ожидался НОД {expected}"
                    )
            elif edge.kind == EdgeKind.CROSSING:
                k = outer.normal.index(0)
                if compact.normal[k] % edge.det:
                    violations.append(
                        f"нога {edge.ends}: детерминант {edge.det} не делит {compact.normal[k]}"
                    )

        for shape in DiagramService.classify_faces(diagram):
            if shape.shape != "trapezoid":
                continue
            neighbours = set()
            leg_dets = set()
            for edge in diagram.face_edges(shape.face_id):
                other = edge.faces[1] if edge.faces[0] == shape.face_id else edge.faces[0]
                if diagram.face(other).compact:
                    neighbours.add(other)
                elif edge.det > 1:
                    leg_dets.add(edge.det)
            groups = len(neighbours) + len(leg_dets)
            if groups < 4:
                violations.append(f"трапеция {shape.face_id}: {groups} групп смежности вместо 4")
        return violations

    @staticmethod
    def leg_face_value_mm(
        normal: IVec3, e: Fraction, neighbours: Sequence[Tuple[int, int]]
    ) -> int:
        """
        Значение m центрального треугольника:
        -m = a1·a2·a3·(e + Σ a_i^(i) / (n_i·a_i)).

        neighbours[i] - пара (i-я координата нормали соседней грани, детерминант ребра).
        """
        total = Fraction(e)
        for i, (coordinate, det) in enumerate(neighbours):
            total += Fraction(coordinate, det * normal[i])
        value = -normal[0] * normal[1] * normal[2] * total
        if value.denominator != 1 or value <= 0:
            raise ArithmeticContractError(f"Нецелое или неположительное значение грани {value}")
        return int(value)

