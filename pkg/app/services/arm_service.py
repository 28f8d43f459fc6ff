"""
Руки диаграммы в обратном алгоритме: предобработка (базовые данные
в системе руки) и постобработка (полные координаты вершин)
"""

from fractions import Fraction
from math import gcd
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

from app.models import ArmPlacement, ArmTriangle, BasicData, LegData, OrbifoldDiagram
from app.services.graph_service import GraphService
from app.services.logger import get_logger
from app.utils.exceptions import ArithmeticContractError, NotRealizableError, SingLinkError
from app.utils.lattice import E1, E2, IVec3, PlaneSide, gcd3, plane_side_test

logger = get_logger(__name__)

IVec2 = Tuple[int, int]

# Плоскость руки: 0 - u1=0 (точки (0, y)), 1 - u2=0 (точки (x, 0))
PLANE_NORMALS = (E1, E2)


def _positive_int(value: Fraction, what: str) -> int:
    if value.denominator != 1 or value <= 0:
        raise NotRealizableError("arm", f"{what} = {value} не является натуральным числом")
    return int(value)


class _Hand(NamedTuple):
    """Треугольник кисти и начальное состояние продолжения руки"""

    triangle: ArmTriangle
    plane: int
    leg_det: int
    consumed: FrozenSet[int]


class _State(NamedTuple):
    triangles: Tuple[ArmTriangle, ...]
    plane: int
    leg_det: int
    consumed: Dict[int, FrozenSet[int]]


class ArmService:
    """Сервис предобработки и постобработки рук"""

    @staticmethod
    def _hand_options(orbifold: OrbifoldDiagram, hand: int) -> List[_Hand]:
        """Варианты базовых данных кисти по группам её ног"""
        groups = orbifold.leg_groups(hand)
        options: List[_Hand] = []

        if len(groups) == 1:
            # Одна группа {n} из t+1 ног: одна нога пересекающая
            (n, count), = groups.items()
            if count < 2:
                return options
            t = count - 1
            triangle = ArmTriangle(
                node=hand,
                vertices=((0, 1), (n, 0), (0, 1 + t)),
                a3=n,
                legs=(
                    LegData(det=n, count=t, normal=E1, value=0),
                    LegData(det=n, count=1, normal=(1, n, 0), value=n),
                ),
                gamma=(n, 1 + t),
            )
            options.append(_Hand(triangle, 0, n, frozenset(groups)))
            return options

        if len(groups) != 2:
            return options

        (d1, c1), (d2, c2) = groups.items()
        if gcd(d1, d2) == 1:
            for n1, t, n2, single in ((d1, c1, d2, c2), (d2, c2, d1, c1)):
                if single != 1:
                    continue
                triangle = ArmTriangle(
                    node=hand,
                    vertices=((0, 0), (0, t * n2), (n1, 0)),
                    a3=n1 * n2,
                    legs=(
                        LegData(det=n1, count=t, normal=E1, value=0),
                        LegData(det=n2, count=1, normal=E2, value=0),
                    ),
                    gamma=(n1, t * n2),
                )
                options.append(_Hand(triangle, 0, n1, frozenset(groups)))
            return options

        for n1, t, n2, single in ((d1, c1, d2, c2), (d2, c2, d1, c1)):
            if n2 % n1 or single != 1:
                continue
            triangle = ArmTriangle(
                node=hand,
                vertices=((0, 1), (n1, 0), (0, 1 + t * n2 // n1)),
                a3=n2,
                legs=(
                    LegData(det=n1, count=t, normal=E1, value=0),
                    LegData(det=n2, count=1, normal=(1, n1, 0), value=n1),
                ),
                gamma=(n1, 1 + t * n2 // n1),
            )
            options.append(_Hand(triangle, 0, n1, frozenset(groups)))
        return options

    @staticmethod
    def preprocess(orbifold: OrbifoldDiagram, hand: int) -> List[BasicData]:
        """
        Базовые данные руки, начинающейся в узле hand.

        Неоднозначный тест плоскостей порождает обе ветви; каждая ветвь
        доводится до плеча. Пустой список означает, что рука не строится.
        """
        logger.debug(f"Предобработка руки с кистью {hand}")
        results: List[BasicData] = []
        for option in ArmService._hand_options(orbifold, hand):
            try:
                results.extend(ArmService._continue(orbifold, option))
            except SingLinkError as e:
                logger.debug(f"Рука с кистью {hand} отброшена: {e}")
        return results

    @staticmethod
    def _continue(orbifold: OrbifoldDiagram, hand: _Hand) -> List[BasicData]:
        # Состояние: треугольники, плоскость α и её детерминант, использованные группы
        stack: List[_State] = [
            _State((hand.triangle,), hand.plane, hand.leg_det, {hand.triangle.node: hand.consumed})
        ]
        finished: List[BasicData] = []
        while stack:
            try:
                done, states = ArmService._step(orbifold, stack.pop())
            except NotRealizableError as e:
                logger.debug(f"Ветвь руки с кистью {hand.triangle.node} отброшена: {e.reason}")
                continue
            if done is not None:
                finished.append(done)
            stack.extend(states)
        return finished

    @staticmethod
    def _step(orbifold: OrbifoldDiagram, state: _State) -> Tuple[Optional[BasicData], List[_State]]:
        """Один шаг продолжения руки: либо плечо, либо следующие состояния"""
        triangles, plane, leg_det, consumed = state
        current = triangles[-1]
        previous = triangles[-2] if len(triangles) > 1 else None
        visited = {triangle.node for triangle in triangles}
        nexts = [(w, det) for w, det in orbifold.neighbors(current.node) if w not in visited]
        if len(nexts) > 1:
            raise NotRealizableError("arm", f"Узел {current.node} ветвится внутри руки")

        base = orbifold.euler(current.node) * current.a3
        if previous is not None:
            base += Fraction(previous.a3, orbifold.edge_det(previous.node, current.node))

        remaining = {
            d: c for d, c in orbifold.leg_groups(current.node).items() if d not in consumed[current.node]
        }

        if not nexts:
            if len(remaining) != 1:
                raise NotRealizableError("arm", f"У последнего узла {current.node} нет ноги за плечом")
            (det, count), = remaining.items()
            a3 = _positive_int(-base * Fraction(det, count), "a3 за плечом")
            done = BasicData(
                hand=triangles[0].node,
                triangles=triangles,
                shoulder=current.gamma,
                shoulder_det=det,
                shoulder_count=count,
                stop_a3=a3,
                stop_reason="leg",
            )
            return done, []

        if remaining:
            raise NotRealizableError("arm", f"Лишние группы ног у узла {current.node}")

        w, t = nexts[0]
        a3 = _positive_int(-base * t, f"a3 узла {w}")
        groups = orbifold.leg_groups(w)
        reason = ""
        if orbifold.group_count(w) >= 4:
            reason = "trapezoid"
        elif not groups:
            reason = "legless"
        elif not any(a3 % d == 0 for d in groups):
            reason = "divisibility"
        if reason:
            done = BasicData(
                hand=triangles[0].node,
                triangles=triangles,
                shoulder=current.gamma,
                shoulder_det=t,
                stop_node=w,
                stop_a3=a3,
                stop_reason=reason,
            )
            return done, []

        next_det = max(d for d in groups if a3 % d == 0)
        count = groups[next_det]
        try:
            sides = [plane_side_test(leg_det, next_det, t)]
        except ArithmeticContractError:
            sides = [PlaneSide.SAME, PlaneSide.OTHER]

        gx, gy = current.gamma
        step = count * a3 // next_det
        states = []
        for side in sides:
            new_plane = plane if side == PlaneSide.SAME else 1 - plane
            if new_plane == 1:
                corner = (gx + step, 0)
                gamma = (gx + step, gy)
            else:
                corner = (0, gy + step)
                gamma = (gx, gy + step)
            triangle = ArmTriangle(
                node=w,
                vertices=((gx, 0), (0, gy), corner),
                a3=a3,
                legs=(LegData(det=next_det, count=count, normal=PLANE_NORMALS[new_plane], value=0),),
                gamma=gamma,
            )
            used = dict(consumed)
            used[w] = frozenset([next_det])
            states.append(_State(triangles + (triangle,), new_plane, next_det, used))
        return None, states

    @staticmethod
    def truncations(orbifold: OrbifoldDiagram, basic: BasicData) -> List[BasicData]:
        """Рука и все её начальные отрезки, от длинных к коротким"""
        result = [basic]
        for k in range(len(basic.triangles) - 1, 0, -1):
            last, beyond = basic.triangles[k - 1], basic.triangles[k]
            result.append(
                BasicData(
                    hand=basic.hand,
                    triangles=basic.triangles[:k],
                    shoulder=last.gamma,
                    shoulder_det=orbifold.edge_det(last.node, beyond.node),
                    stop_node=beyond.node,
                    stop_a3=beyond.a3,
                    stop_reason="truncated",
                )
            )
        return result

    @staticmethod
    def frame(axis: int, swap: bool) -> Tuple[int, int, int]:
        """Итоговые индексы координат u1, u2, u3 системы руки"""
        first, second = [i for i in range(3) if i != axis]
        if swap:
            first, second = second, first
        return first, second, axis

    @staticmethod
    def to_final(vector: Sequence[int], frame: Tuple[int, int, int]) -> IVec3:
        result = [0, 0, 0]
        for k in range(3):
            result[frame[k]] = vector[k]
        return (result[0], result[1], result[2])

    @staticmethod
    def postprocess(orbifold: OrbifoldDiagram, placement: ArmPlacement) -> List[FrozenSet[IVec3]]:
        """
        Полные координаты вершин руки для обеих ориентаций первых двух
        координат. Ориентация, при которой ограниченные системы не дают
        натуральных нормалей и значений, отбрасывается.
        """
        results = []
        for swap in (False, True):
            try:
                vertices = ArmService._solve_arm(orbifold, placement, ArmService.frame(placement.axis, swap))
            except SingLinkError as e:
                logger.debug(f"Ориентация swap={swap} руки {placement.basic.hand} отброшена: {e}")
                continue
            if vertices not in results:
                results.append(vertices)
        return results

    @staticmethod
    def _solve_arm(
        orbifold: OrbifoldDiagram, placement: ArmPlacement, frame: Tuple[int, int, int]
    ) -> FrozenSet[IVec3]:
        basic = placement.basic
        nodes = basic.nodes
        last = basic.last.node

        vector_rhs: Dict[int, List[Fraction]] = {}
        value_rhs: Dict[int, List[Fraction]] = {}
        for triangle in basic.triangles:
            vector = [Fraction(0)] * 3
            value = Fraction(-(orbifold.degree(triangle.node) - 2))
            for leg in triangle.legs:
                weight = Fraction(leg.count, leg.det)
                normal = ArmService.to_final(leg.normal, frame)
                vector = [vector[i] - weight * normal[i] for i in range(3)]
                value -= weight * leg.value
            vector_rhs[triangle.node] = vector
            value_rhs[triangle.node] = [value]

        known_vectors: Dict[int, Sequence[Fraction]] = {}
        known_values: Dict[int, Sequence[Fraction]] = {}
        if basic.stop_node is not None:
            known_vectors[basic.stop_node] = [Fraction(x) for x in placement.beyond_normal]
            known_values[basic.stop_node] = [Fraction(placement.beyond_value)]
        else:
            weight = Fraction(basic.shoulder_count, basic.shoulder_det)
            vector_rhs[last] = [
                vector_rhs[last][i] - weight * placement.beyond_normal[i] for i in range(3)
            ]
            value_rhs[last] = [value_rhs[last][0] - weight * placement.beyond_value]

        normals = GraphService.solve_restricted(orbifold, nodes, known_vectors, vector_rhs)
        values = GraphService.solve_restricted(orbifold, nodes, known_values, value_rhs)

        vertices: Dict[IVec2, IVec3] = {}
        for triangle in basic.triangles:
            normal = tuple(_positive_int(x, f"координата нормали узла {triangle.node}") for x in normals[triangle.node])
            if gcd3(normal) != 1 or normal[frame[2]] != triangle.a3:
                raise NotRealizableError("arm", f"Нормаль {normal} не согласована с a3={triangle.a3}")
            value = _positive_int(values[triangle.node][0], f"значение грани {triangle.node}")

            for x, y in triangle.vertices:
                rest = value - normal[frame[0]] * x - normal[frame[1]] * y
                if rest < 0 or rest % normal[frame[2]]:
                    raise NotRealizableError("arm", f"Вершина ({x}, {y}) не лежит на грани {triangle.node}")
                point = ArmService.to_final((x, y, rest // normal[frame[2]]), frame)
                if vertices.setdefault((x, y), point) != point:
                    raise NotRealizableError("arm", f"Несогласованная вершина ({x}, {y})")

        return frozenset(vertices.values())

    @staticmethod
    def leg_values(arms: Sequence[BasicData]) -> Dict[int, Fraction]:
        """Σ (count/det)·value по ногам каждого узла рук"""
        result: Dict[int, Fraction] = {}
        for basic in arms:
            for triangle in basic.triangles:
                result[triangle.node] = sum(
                    (Fraction(leg.count * leg.value, leg.det) for leg in triangle.legs), Fraction(0)
                )
        return result

    @staticmethod
    def branch(orbifold: OrbifoldDiagram, center: int, start: int) -> Optional[List[int]]:
        """Узлы ветви от соседа центра до концевого узла; None, если ветвь разветвляется"""
        path = [start]
        previous = center
        while True:
            nexts = [w for w, _ in orbifold.neighbors(path[-1]) if w != previous]
            if not nexts:
                return path
            if len(nexts) > 1:
                return None
            previous = path[-1]
            path.append(nexts[0])
