"""
Алгоритм Оки: диаграмма Ньютона -> дуальный граф разрешения
"""

from fractions import Fraction
from typing import Dict, List, Tuple

from app.models import ChainSpec, Face, NewtonDiagram, ResolutionGraph
from app.services.logger import get_logger
from app.utils.exceptions import ArithmeticContractError, InvalidDiagramError
from app.utils.lattice import IVec3, add, face_det, neg_cont_frac, scale

logger = get_logger(__name__)


def _c_vector(f_from: IVec3, f_to: IVec3, t: int, lam: int) -> IVec3:
    total = add(f_to, scale(lam, f_from))
    return (total[0] // t, total[1] // t, total[2] // t)


class OkaService:
    """Сервис построения графа разрешения по диаграмме"""

    @staticmethod
    def chain_between(
        f_from: IVec3, f_to: IVec3, mult: int = 1, from_face: int = -1, to_face: int = -1
    ) -> ChainSpec:
        """Цепочка между вершинами граней: детерминант, λ и веса -b_i"""
        t = face_det(f_from, f_to)
        if t == 1:
            return ChainSpec(from_face=from_face, to_face=to_face, det=1, lam=0, mult=mult)

        for lam in range(1, t):
            total = add(f_to, scale(lam, f_from))
            if all(x % t == 0 for x in total):
                weights = tuple(neg_cont_frac(t, lam))
                return ChainSpec(
                    from_face=from_face,
                    to_face=to_face,
                    det=t,
                    lam=lam,
                    mult=mult,
                    weights=weights,
                )

        raise ArithmeticContractError(f"Нет λ для нормалей {f_from}, {f_to} (t={t})")

    @staticmethod
    def _neighbours(diagram: NewtonDiagram, face: Face) -> List[Tuple[Face, int]]:
        """Соседние грани вместе с кратностью общего ребра"""
        result = []
        for edge in diagram.face_edges(face.id):
            other = edge.faces[1] if edge.faces[0] == face.id else edge.faces[0]
            result.append((diagram.face(other), edge.mult))
        return result

    @staticmethod
    def self_intersection(diagram: NewtonDiagram, face: Face) -> int:
        """b_△ из b_△F_△ + Σ m·c_{△,▽} = 0"""
        if not face.compact:
            raise InvalidDiagramError(f"Грань {face.id} некомпактна")

        total = (0, 0, 0)
        for other, mult in OkaService._neighbours(diagram, face):
            chain = OkaService.chain_between(face.normal, other.normal)
            c = _c_vector(face.normal, other.normal, chain.det, chain.lam)
            total = add(total, scale(mult, c))

        values = set()
        for i in range(3):
            if total[i] % face.normal[i]:
                raise InvalidDiagramError(
                    f"Нецелое самопересечение грани {face.id}: {total} / {face.normal}"
                )
            values.add(-total[i] // face.normal[i])

        if len(values) != 1:
            raise InvalidDiagramError(f"Несогласованные координаты для грани {face.id}: {values}")
        b = values.pop()
        if b > -1:
            raise InvalidDiagramError(f"Самопересечение грани {face.id} равно {b}")
        return b

    @staticmethod
    def face_euler(diagram: NewtonDiagram, face: Face) -> Fraction:
        """Орбифолдное число Эйлера узла грани: b + Σ m·λ/t"""
        e = Fraction(OkaService.self_intersection(diagram, face))
        for other, mult in OkaService._neighbours(diagram, face):
            chain = OkaService.chain_between(face.normal, other.normal)
            e += Fraction(mult * chain.lam, chain.det)
        return e

    @staticmethod
    def oka_graph(diagram: NewtonDiagram) -> ResolutionGraph:
        """
        Граф разрешения G(Γ).

        Вершины компактных граней нумеруются id граней, вершины цепочек
        получают следующие свободные номера. Вершины некомпактных граней
        удаляются, обрезанные цепочки становятся ногами.
        """
        compact = diagram.compact_faces
        if not compact and not diagram.is_segment:
            raise InvalidDiagramError("Диаграмма без компактных граней и не отрезок")

        weights: Dict[int, int] = {}
        edges: List[Tuple[int, int]] = []
        for face in compact:
            weights[face.id] = OkaService.self_intersection(diagram, face)

        next_id = max((face.id for face in diagram.faces), default=-1) + 1

        def add_string(values: Tuple[int, ...], start=None, end=None) -> None:
            nonlocal next_id
            previous = start
            for b in values:
                weights[next_id] = -b
                if previous is not None:
                    edges.append((previous, next_id))
                previous = next_id
                next_id += 1
            if end is not None and previous is not None:
                edges.append((previous, end))

        for edge in diagram.edges:
            first, second = diagram.face(edge.faces[0]), diagram.face(edge.faces[1])
            if not first.compact and second.compact:
                first, second = second, first
            chain = OkaService.chain_between(first.normal, second.normal, edge.mult, first.id, second.id)

            for _ in range(edge.mult):
                if first.compact and second.compact:
                    add_string(chain.weights, first.id, second.id)
                elif first.compact:
                    add_string(chain.weights, first.id)
                else:
                    add_string(chain.weights)

        graph = ResolutionGraph(weights=weights, edges=tuple(edges))
        logger.debug(f"Граф Оки: {graph.size} вершин, {len(compact)} узловых граней")
        return graph


