"""
Центральные грани обратного алгоритма: треугольник, трапеция или
центральное ребро вместе с размещением рук
"""

from fractions import Fraction
from itertools import product
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from app.models import ArmPlacement, BasicData, CenterCandidate, OrbifoldDiagram
from app.services.arm_service import ArmService
from app.services.graph_service import GraphService
from app.services.invariant_service import InvariantService
from app.services.logger import get_logger
from app.utils.exceptions import SingLinkError
from app.utils.lattice import E3, IVec3, dot, empty_triangle_normal

logger = get_logger(__name__)


def _other(pair: Sequence[int], value: int) -> Optional[int]:
    """Второй элемент пары, если value в ней есть"""
    if pair[0] == value:
        return pair[1]
    if pair[1] == value:
        return pair[0]
    return None


def _orders(pair: Sequence[int]) -> List[Tuple[int, int]]:
    first, second = pair
    return [(first, second)] if first == second else [(first, second), (second, first)]


def _is_triangle(normal: IVec3, value: int, a: IVec3, b: IVec3, c: IVec3) -> bool:
    if any(dot(normal, p) != value for p in (a, b, c)):
        return False
    try:
        return empty_triangle_normal(a, b, c) == normal
    except SingLinkError:
        return False


def _trapezoid(p: int, q: int, n: int, t: int, r1: int, r2: int) -> Tuple[IVec3, int, Tuple[IVec3, ...]]:
    """Нормаль, значение и вершины A, B, C, D трапеции"""
    normal = (n * q, n * p, r1 * q + r2 * p + (t - 1) * p * q)
    vertices = ((p, 0, n), (0, q, n), (r1, r2 + t * q, 0), (r1 + t * p, r2, 0))
    return normal, dot(normal, vertices[0]), vertices


def _placements(arms: Sequence[BasicData], axes: Sequence[int], normal: IVec3, value: int) -> Tuple[ArmPlacement, ...]:
    return tuple(
        ArmPlacement(basic=basic, axis=axis, beyond_normal=normal, beyond_value=value)
        for basic, axis in zip(arms, axes)
    )


class CenterService:
    """Решатели центральной грани по семействам"""

    @staticmethod
    def _global_values(orbifold: OrbifoldDiagram, arms: Sequence[BasicData]) -> Dict[int, Fraction]:
        """Значения граней всех узлов из полной системы для m"""
        legs = ArmService.leg_values(arms)
        extra = {
            r: [Fraction(-(orbifold.degree(r) - 2)) - legs.get(r, Fraction(0))]
            for r in orbifold.node_ids
        }
        solution = GraphService.solve_restricted(orbifold, orbifold.node_ids, {}, extra)
        return {r: values[0] for r, values in solution.items()}

    @staticmethod
    def _enumerate_triangle(
        family: str,
        normal: IVec3,
        value: int,
        sets: Tuple[Sequence[int], Sequence[int], Sequence[int]],
        arms: Sequence[BasicData],
        axes: Sequence[int],
    ) -> List[CenterCandidate]:
        """
        Перебор назначений {r2,q3}, {p3,r1}, {q1,p2} для треугольника
        A=(0,p2,p3), B=(q1,0,q3), C=(r1,r2,0)
        """
        result = []
        for (r2, q3), (p3, r1), (q1, p2) in product(*(_orders(s) for s in sets)):
            a, b, c = (0, p2, p3), (q1, 0, q3), (r1, r2, 0)
            if _is_triangle(normal, value, a, b, c):
                result.append(
                    CenterCandidate(
                        family=family,
                        vertices=(a, b, c),
                        arms=_placements(arms, axes, normal, value),
                    )
                )
        return result

    @staticmethod
    def triangle3(orbifold: OrbifoldDiagram, center: int, arms: Sequence[BasicData]) -> List[CenterCandidate]:
        """Центральный треугольник без ног с тремя руками"""
        logger.debug(f"Решатель центра ▲3, узел {center}")
        normal = tuple(basic.stop_a3 for basic in arms)
        m = CenterService._global_values(orbifold, arms)[center]
        if m.denominator != 1 or m <= 0:
            return []
        sets = (arms[0].shoulder_set, arms[1].shoulder_set, arms[2].shoulder_set)
        return CenterService._enumerate_triangle("▲3", normal, int(m), sets, arms, (0, 1, 2))

    @staticmethod
    def triangle2(orbifold: OrbifoldDiagram, center: int, arms: Sequence[BasicData]) -> List[CenterCandidate]:
        """Центральный треугольник с двумя руками и одной пересекающей ногой"""
        logger.debug(f"Решатель центра ▲2, узел {center}")
        groups = orbifold.leg_groups(center)
        if len(groups) != 1 or list(groups.values()) != [1]:
            return []
        a3 = next(iter(groups))
        result = []
        for first, second in ((arms[0], arms[1]), (arms[1], arms[0])):
            normal = (first.stop_a3, second.stop_a3, a3)
            n1 = orbifold.edge_det(center, first.last.node)
            n2 = orbifold.edge_det(center, second.last.node)
            try:
                m = InvariantService.leg_face_value_mm(
                    normal,
                    orbifold.euler(center),
                    [(first.last.a3, n1), (second.last.a3, n2), (0, a3)],
                )
                legs = ArmService.leg_values([first, second])
                nodes = first.nodes + second.nodes
                extra = {r: [Fraction(-(orbifold.degree(r) - 2)) - legs[r]] for r in nodes}
                values = GraphService.solve_restricted(orbifold, nodes, {center: [Fraction(m)]}, extra)
            except SingLinkError as e:
                logger.debug(f"▲2: {e}")
                continue

            g = orbifold.degree(center) - 2
            leg_value = -a3 * (
                g
                + orbifold.euler(center) * m
                + values[first.last.node][0] / n1
                + values[second.last.node][0] / n2
            )
            if leg_value.denominator != 1 or leg_value <= 0:
                continue
            sets = (first.shoulder_set, second.shoulder_set, (1, int(leg_value)))
            result.extend(
                CenterService._enumerate_triangle("▲2", normal, m, sets, (first, second), (0, 1))
            )
        return result

    @staticmethod
    def triangle1(orbifold: OrbifoldDiagram, center: int, arm: BasicData) -> List[CenterCandidate]:
        """Движущийся треугольник с одной рукой в направлении z3"""
        logger.debug(f"Решатель центра ▲1, узел {center}")
        groups = orbifold.leg_groups(center)
        if len(groups) != 2:
            return []
        legs = tuple(sorted(groups))
        shoulder = arm.shoulder_set
        a3 = arm.stop_a3
        result = []

        if legs == shoulder:
            for q1, p2 in _orders(shoulder):
                normal = (p2, q1, a3)
                total = a3 + q1 * p2
                found = 0
                for r1 in range(0, total // p2 + 1):
                    rest = total - r1 * p2
                    if rest < 0 or rest % q1:
                        continue
                    r2 = rest // q1
                    a, b, c = (q1, 0, 1), (0, p2, 1), (r1, r2, 0)
                    if not _is_triangle(normal, dot(normal, c), a, b, c):
                        continue
                    result.append(
                        CenterCandidate(
                            family="▲1",
                            vertices=(a, b, c),
                            arms=_placements([arm], [2], normal, dot(normal, c)),
                        )
                    )
                    found += 1
                    if found >= 4:
                        break
            return result

        for a1, a2 in _orders(legs):
            if a2 < 2 or gcd(a1, a2) != 1:
                continue
            r1 = a3 * pow(a1, -1, a2) % a2
            if r1 == 0 or (r1 * a1 - a3) % a2:
                continue
            p2 = 1 + (r1 * a1 - a3) // a2
            q1 = _other(shoulder, p2)
            if q1 is None or p2 < 2 or (a1 - 1) % (p2 - 1):
                continue
            q3 = (a1 - 1) // (p2 - 1)
            normal = (a1, a2, a3)
            a, b, c = (q1, 0, q3), (0, p2, 1), (r1, 1, 0)
            value = dot(normal, c)
            if _is_triangle(normal, value, a, b, c):
                result.append(
                    CenterCandidate(family="▲1", vertices=(a, b, c), arms=_placements([arm], [2], normal, value))
                )
        return result

    @staticmethod
    def edge2(orbifold: OrbifoldDiagram, first: BasicData, second: BasicData) -> List[CenterCandidate]:
        """Центральное ребро [(p,q,0),(0,0,c)] между двумя руками"""
        logger.debug("Решатель центрального ребра l2")
        if first.stop_node != second.last.node or second.stop_node != first.last.node:
            return []
        low = (first.last.a3, second.stop_a3)
        high = (first.stop_a3, second.last.a3)
        t = orbifold.edge_det(first.last.node, second.last.node)
        cross = abs(low[0] * high[1] - low[1] * high[0])
        if cross == 0 or cross % t:
            return []
        c = cross // t
        q = _other(first.shoulder_set, c)
        p = _other(second.shoulder_set, c)
        if p is None or q is None:
            return []

        faces = []
        for a1, a2 in (low, high):
            total = p * a1 + q * a2
            if total % c:
                return []
            a3 = total // c
            faces.append(((a1, a2, a3), c * a3))
        (f_low, m_low), (f_high, m_high) = faces
        return [
            CenterCandidate(
                family="l2",
                vertices=((p, q, 0), (0, 0, c)),
                arms=(
                    ArmPlacement(basic=first, axis=0, beyond_normal=f_high, beyond_value=m_high),
                    ArmPlacement(basic=second, axis=1, beyond_normal=f_low, beyond_value=m_low),
                ),
            )
        ]

    @staticmethod
    def edge1(arm: BasicData) -> List[CenterCandidate]:
        """Рука содержит все узлы: за плечом некомпактная грань"""
        logger.debug(f"Рука кисти {arm.hand} содержит все узлы")
        a3 = arm.stop_a3
        if a3 == 1:
            placement = ArmPlacement(basic=arm, axis=2, beyond_normal=E3, beyond_value=0)
        else:
            placement = ArmPlacement(basic=arm, axis=2, beyond_normal=(1, 0, a3), beyond_value=a3)
        return [CenterCandidate(family="l1", arms=(placement,))]

    @staticmethod
    def trapezoid3(orbifold: OrbifoldDiagram, center: int, arms: Sequence[BasicData]) -> List[CenterCandidate]:
        """Трапеция с тремя руками и нижним ребром на плоскости z1z2"""
        logger.debug(f"Решатель центра ■3, узел {center}")
        groups = orbifold.leg_groups(center)
        if len(groups) != 1:
            return []
        (n, t), = groups.items()
        result = []
        for k, top in enumerate(arms):
            if top.stop_a3 % n == 0:
                continue
            sides = [arm for j, arm in enumerate(arms) if j != k]
            for first, second in (sides, sides[::-1]):
                if first.stop_a3 % n or second.stop_a3 % n:
                    continue
                q, p = first.stop_a3 // n, second.stop_a3 // n
                r2 = _other(first.shoulder_set, n)
                r1 = _other(second.shoulder_set, n)
                if r1 is None or r2 is None:
                    continue
                normal, value, vertices = _trapezoid(p, q, n, t, r1, r2)
                if normal[2] != top.stop_a3:
                    continue
                result.append(
                    CenterCandidate(
                        family="■3",
                        vertices=vertices,
                        arms=_placements((first, second, top), (0, 1, 2), normal, value),
                    )
                )
        return result

    @staticmethod
    def trapezoid2(orbifold: OrbifoldDiagram, center: int, arms: Sequence[BasicData]) -> List[CenterCandidate]:
        """Трапеция с двумя руками: нижнее ребро с t ногами и вырожденная третья рука"""
        logger.debug(f"Решатель центра ■2, узел {center}")
        groups = orbifold.leg_groups(center)
        if len(groups) != 2:
            return []
        result = []
        for first, second in ((arms[0], arms[1]), (arms[1], arms[0])):
            # Случай 1: q = 1, руки z1 и z2
            n = first.stop_a3
            if n in groups and second.stop_a3 % n == 0:
                p, t = second.stop_a3 // n, groups[n]
                r2 = _other(first.shoulder_set, n)
                r1 = _other(second.shoulder_set, n)
                if r1 is not None and r2 is not None:
                    normal, value, vertices = _trapezoid(p, 1, n, t, r1, r2)
                    result.append(
                        CenterCandidate(
                            family="■2",
                            vertices=vertices,
                            arms=_placements((first, second), (0, 1), normal, value),
                        )
                    )

            # Случай 2: руки z1 и z3
            for n, t in groups.items():
                if first.stop_a3 % n:
                    continue
                q = first.stop_a3 // n
                p = _other(second.shoulder_set, q)
                r2 = _other(first.shoulder_set, n)
                if p is None or r2 is None:
                    continue
                for r1 in (0, 1):
                    normal, value, vertices = _trapezoid(p, q, n, t, r1, r2)
                    if normal[2] != second.stop_a3:
                        continue
                    result.append(
                        CenterCandidate(
                            family="■2",
                            vertices=vertices,
                            arms=_placements((first, second), (0, 2), normal, value),
                        )
                    )
        return result

    @staticmethod
    def trapezoid1(orbifold: OrbifoldDiagram, center: int, arm: BasicData) -> List[CenterCandidate]:
        """Трапеция с одной рукой и тремя группами ног"""
        logger.debug(f"Решатель центра ■1, узел {center}")
        groups = orbifold.leg_groups(center)
        if len(groups) != 3:
            return []
        a = arm.stop_a3
        shoulder = arm.shoulder_set
        result = []

        # Случай 1: A ∈ S ∩ D, рука z1, q = 1
        if a in groups and a in shoulder:
            n, t = a, groups[a]
            r2 = _other(shoulder, n)
            rest = sorted(d for d in groups if d != n)
            options = [(1, d // n) for d in rest if d % n == 0]
            if rest[1] % rest[0] == 0:
                options.append((0, rest[0]))
            for r1, p in options:
                normal, value, vertices = _trapezoid(p, 1, n, t, r1, r2)
                result.append(
                    CenterCandidate(family="■1", vertices=vertices, arms=_placements([arm], [0], normal, value))
                )

        # Случай 2: рука z3, n - наименьший детерминант, не делящий A
        for n in sorted(d for d in groups if a % d):
            t = groups[n]
            for p, q in _orders(shoulder):
                for r1, r2 in product((0, 1), repeat=2):
                    if set(groups) != {n, n ** r1 * p, n ** r2 * q}:
                        continue
                    normal, value, vertices = _trapezoid(p, q, n, t, r1, r2)
                    if normal[2] != a:
                        continue
                    result.append(
                        CenterCandidate(family="■1", vertices=vertices, arms=_placements([arm], [2], normal, value))
                    )
            break
        return result
