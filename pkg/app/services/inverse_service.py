"""
Обратный алгоритм: орбифолдная диаграмма -> d-минимальная диаграмма Ньютона
"""

from fractions import Fraction
from itertools import permutations, product
from math import gcd
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from app.models import (
    BasicData,
    CenterCandidate,
    InverseResult,
    NewtonDiagram,
    OrbifoldDiagram,
    ResolutionGraph,
)
from app.services.arm_service import ArmService
from app.services.center_service import CenterService
from app.services.diagram_service import DiagramService
from app.services.graph_service import GraphService
from app.services.logger import get_logger
from app.services.oka_service import OkaService
from app.utils.exceptions import InputError, NotRealizableError, SingLinkError
from app.utils.lattice import IVec3

logger = get_logger(__name__)

Group = Tuple[int, int]
Support = List[IVec3]


def _monomial(*exponents) -> Optional[IVec3]:
    """Моном с целыми неотрицательными показателями или None"""
    values = []
    for x in exponents:
        x = Fraction(x)
        if x.denominator != 1 or x < 0:
            return None
        values.append(int(x))
    return (values[0], values[1], values[2])


def _support(*monomials) -> List[Support]:
    if any(m is None for m in monomials):
        return []
    return [list(monomials)]


def _pairwise_free(*values: int) -> bool:
    """Ни одно из чисел не делит другое"""
    return all(x % y for x in values for y in values if x != y)


# Таблица одноузловых уравнений: (номер, число групп, построитель).
# Условия на e служат фильтром; окончательное решение за прямой проверкой.
def _case1(e: Fraction, g: Sequence[Group]) -> List[Support]:
    (d, k), = g
    powers = [d]
    scale = -e * d
    if scale.denominator == 1 and scale > 1 and gcd(k, int(scale) * d) == scale:
        powers.append(int(scale) * d)
    result: List[Support] = []
    for power in powers:
        result += _support(_monomial(power, 0, 0), _monomial(0, k - 1, 1), _monomial(0, 1, k - 1))
    return result


def _case2(e: Fraction, g: Sequence[Group]) -> List[Support]:
    (d, k), (dd, kk) = g
    if k != 2 or kk != 2:
        return []
    return _support(_monomial(d, 0, 1), _monomial(0, 2 * dd, 0), _monomial(0, 0, 2)) + _support(
        _monomial(2 * d, 0, 0), _monomial(0, dd, 1), _monomial(0, 0, 2)
    )


def _case3(e: Fraction, g: Sequence[Group]) -> List[Support]:
    (d, k), (dd, kk) = g
    if kk != 1 or dd % d:
        return []
    return _support(_monomial(k, 1, 0), _monomial(1, Fraction((k - 1) * dd, d) + 1, 0), _monomial(0, 0, d))


def _case4(e: Fraction, g: Sequence[Group]) -> List[Support]:
    (d, k), (dd, kk) = g
    if kk != 1 or gcd(d, dd) != 1:
        return []
    return _support(_monomial(d, 0, 0), _monomial(0, k * dd, 0), _monomial(0, 0, k))


def _case5(e: Fraction, g: Sequence[Group]) -> List[Support]:
    (d, k), (dd, kk) = g
    if kk != 1 or gcd(d, dd) != 1:
        return []
    result: List[Support] = []
    for s in range(1, dd + 1):
        if (k * s - 1) % dd == 0:
            result += _support(
                _monomial(Fraction(d * (k * s - 1), dd), 1, 0), _monomial(0, s * (k - 1), 1), _monomial(0, 0, k)
            )
    return result


def _case6(e: Fraction, g: Sequence[Group]) -> List[Support]:
    (a, ka), (b, kb), (c, kc) = g
    if (ka, kb, kc) != (2, 2, 2):
        return []
    return _support(_monomial(2 * a, 0, 0), _monomial(0, 2 * b, 0), _monomial(0, 0, 2 * c))


def _case7(e: Fraction, g: Sequence[Group]) -> List[Support]:
    (a, k), (b, kb), (c, kc) = g
    if (kb, kc) != (1, 1) or b % a or c % a:
        return []
    return _support(
        _monomial(Fraction(b * k, a) + 1, 1, 0), _monomial(1, Fraction(c * k, a) + 1, 0), _monomial(0, 0, a)
    )


def _case8(e: Fraction, g: Sequence[Group]) -> List[Support]:
    (a, k), (b, kb), (c, kc) = g
    if (kb, kc) != (1, 1) or c % b or k < 2:
        return []
    return _support(_monomial(a, 1, 0), _monomial(0, Fraction(c, b) + 1, 0), _monomial(0, 0, k * b))


def _case9(e: Fraction, g: Sequence[Group]) -> List[Support]:
    (a, k), (b, kb), (c, kc) = g
    if (kb, kc) != (1, 1) or b % a or c % a == 0:
        return []
    return _support(_monomial(k * c, 1, 0), _monomial(0, Fraction(b * k, a) + 1, 0), _monomial(0, 0, a))


def _case10(e: Fraction, g: Sequence[Group]) -> List[Support]:
    (a, k), (b, kb), (c, kc) = g
    big = -e * b * c
    if (kb, kc) != (1, 1) or b % a or c % a == 0 or big <= 1:
        return []
    return _support(_monomial((k * c - 1) / big + 1, 1, 0), _monomial(0, big, 0), _monomial(1, 0, a))


def _case11(e: Fraction, g: Sequence[Group]) -> List[Support]:
    (a, k), (b, kb), (c, kc) = g
    if (kb, kc) != (1, 1) or not _pairwise_free(a, b, c):
        return []
    return _support(_monomial(a, 0, 0), _monomial(0, k * c, 0), _monomial(0, 0, k * b))


def _case12(e: Fraction, g: Sequence[Group]) -> List[Support]:
    (a, k), (b, kb), (c, kc) = g
    big = -e * a * b * c
    if (k, kb, kc) != (1, 1, 1) or not _pairwise_free(a, b, c) or big <= 1:
        return []
    return _support(
        _monomial((big - b) / a, 1, 0), _monomial(0, (big - c) / b, 1), _monomial(1, 0, (big - a) / c)
    ) + _support(
        _monomial((big - b) / c, 1, 0), _monomial(0, (big - a) / b, 1), _monomial(1, 0, (big - c) / a)
    )


ONE_NODE_CASES: Tuple[Tuple[int, int, Callable[[Fraction, Sequence[Group]], List[Support]]], ...] = (
    (1, 1, _case1),
    (2, 2, _case2),
    (3, 2, _case3),
    (4, 2, _case4),
    (5, 2, _case5),
    (6, 3, _case6),
    (7, 3, _case7),
    (8, 3, _case8),
    (9, 3, _case9),
    (10, 3, _case10),
    (11, 3, _case11),
    (12, 3, _case12),
)


class InverseService:
    """Восстановление диаграммы по орбифолдной диаграмме"""

    @staticmethod
    def forward(diagram: NewtonDiagram) -> OrbifoldDiagram:
        """orbifold(minimize(oka_graph(Γ)))"""
        return GraphService.orbifold(GraphService.minimize(OkaService.oka_graph(diagram)))

    @staticmethod
    def verify(diagram: NewtonDiagram, orbifold: OrbifoldDiagram) -> bool:
        """Прямая проверка кандидата"""
        try:
            if not DiagramService.is_valid(diagram):
                return False
            return GraphService.orb_iso(InverseService.forward(diagram), orbifold)
        except SingLinkError as e:
            logger.debug(f"Кандидат не прошёл прямую проверку: {e}")
            return False

    @staticmethod
    def _accept(support: Sequence[IVec3], orbifold: OrbifoldDiagram) -> Optional[NewtonDiagram]:
        try:
            diagram = DiagramService.newton_boundary(support)
        except SingLinkError:
            return None
        if InverseService.verify(diagram, orbifold):
            return diagram
        return None

    @staticmethod
    def case_n0(orbifold: OrbifoldDiagram) -> NewtonDiagram:
        """Свободное ребро FreeEdge(n): диаграмма z1^n + z2·z3"""
        n = orbifold.free_edge
        if n is None or n < 2:
            raise NotRealizableError("n0", f"Свободное ребро с детерминантом {n}")
        return DiagramService.newton_boundary([(0, 1, 1), (n, 0, 0)])

    @staticmethod
    def case_n1(orbifold: OrbifoldDiagram) -> Tuple[NewtonDiagram, int]:
        """Один узел: перебор уравнений таблицы с прямой проверкой; возвращает диаграмму и номер случая"""
        node = orbifold.nodes[0]
        groups = list(orbifold.leg_groups(node.id).items())
        if any(d < 2 for d, _ in groups) or sum(k for _, k in groups) < 3:
            raise NotRealizableError("n1", f"Недопустимые ноги {groups}")

        for number, size, build in ONE_NODE_CASES:
            if size != len(groups):
                continue
            for assignment in permutations(groups):
                for support in build(node.e, assignment):
                    diagram = InverseService._accept(support, orbifold)
                    if diagram is not None:
                        logger.debug(f"Один узел: случай {number}, носитель {support}")
                        return diagram, number
        raise NotRealizableError("n1", f"Ни один случай не подходит для L={groups}, e={node.e}")

    @staticmethod
    def is_er_hand(orbifold: OrbifoldDiagram, node: int) -> bool:
        """Легко распознаваемая кисть: одна группа ног или некопростые детерминанты"""
        dets = list(orbifold.leg_groups(node))
        return len(dets) == 1 or (len(dets) == 2 and gcd(*dets) > 1)

    @staticmethod
    def find_hand(orbifold: OrbifoldDiagram) -> List[int]:
        """Концевые узлы в порядке предпочтения для роли кисти"""
        ends = [r for r in orbifold.node_ids if len(orbifold.neighbors(r)) == 1]
        if len(ends) != 2 or any(not orbifold.leg_groups(r) for r in ends):
            raise NotRealizableError("hand", "Форма диаграммы не допускает поиска кисти")

        def rank(r: int):
            groups = orbifold.leg_groups(r)
            if InverseService.is_er_hand(orbifold, r):
                return (0, 0, 0)
            if len(groups) != 2:
                return (2, 0, 0)
            (n1, t1), (n2, t2) = groups.items()
            return (1, n1 * t2 + n2 * t1, -orbifold.euler(r))

        return sorted(ends, key=rank)

    @staticmethod
    def solve_restricted(
        orbifold: OrbifoldDiagram,
        unknown: Sequence[int],
        known: Dict[int, Sequence[Fraction]],
        extra: Dict[int, Sequence[Fraction]],
    ) -> Dict[int, Tuple[Fraction, ...]]:
        return GraphService.solve_restricted(orbifold, unknown, known, extra)

    @staticmethod
    def _arms_from(orbifold: OrbifoldDiagram, hand: int) -> List[BasicData]:
        result = []
        for basic in ArmService.preprocess(orbifold, hand):
            result.extend(ArmService.truncations(orbifold, basic))
        return result

    @staticmethod
    def _string_candidates(orbifold: OrbifoldDiagram) -> Iterator[CenterCandidate]:
        """Все узлы на одной цепи: руки от концов и центр ▲1, ▲2, l1, l2"""
        nodes = set(orbifold.node_ids)
        ends = InverseService.find_hand(orbifold)
        for hand in ends:
            other = next(r for r in ends if r != hand)
            for first in InverseService._arms_from(orbifold, hand):
                rest = nodes - set(first.nodes)
                if not rest:
                    if first.stop_node is None:
                        yield from CenterService.edge1(first)
                    continue
                if rest == {other} and first.stop_node == other:
                    if not InverseService.is_er_hand(orbifold, other):
                        yield from CenterService.triangle1(orbifold, other, first)
                for second in InverseService._arms_from(orbifold, other):
                    if set(first.nodes) & set(second.nodes):
                        continue
                    left = rest - set(second.nodes)
                    if not left:
                        yield from CenterService.edge2(orbifold, first, second)
                    elif len(left) == 1:
                        center = next(iter(left))
                        if first.stop_node == center and second.stop_node == center:
                            yield from CenterService.triangle2(orbifold, center, (first, second))

    @staticmethod
    def _branch_arms(orbifold: OrbifoldDiagram, center: int) -> Optional[List[List[BasicData]]]:
        """Для каждого соседа центра: руки, покрывающие ветвь и упирающиеся в центр"""
        options = []
        for neighbour, _ in orbifold.neighbors(center):
            branch = ArmService.branch(orbifold, center, neighbour)
            if branch is None:
                return None
            arms = [
                basic
                for basic in InverseService._arms_from(orbifold, branch[-1])
                if basic.stop_node == center and set(basic.nodes) == set(branch)
            ]
            if not arms:
                return None
            options.append(arms)
        return options

    @staticmethod
    def _star_candidates(orbifold: OrbifoldDiagram, center: int) -> Iterator[CenterCandidate]:
        """Центр с четырьмя группами (трапеция) или без ног с тремя соседями"""
        options = InverseService._branch_arms(orbifold, center)
        if options is None:
            return
        trapezoid = orbifold.group_count(center) >= 4
        for arms in product(*options):
            if trapezoid and len(arms) == 3:
                yield from CenterService.trapezoid3(orbifold, center, arms)
            elif trapezoid and len(arms) == 2:
                yield from CenterService.trapezoid2(orbifold, center, arms)
            elif trapezoid and len(arms) == 1:
                yield from CenterService.trapezoid1(orbifold, center, arms[0])
            elif len(arms) == 3:
                yield from CenterService.triangle3(orbifold, center, arms)

    @staticmethod
    def _assemble(orbifold: OrbifoldDiagram, candidate: CenterCandidate) -> Optional[NewtonDiagram]:
        """Постобработка рук кандидата и прямая проверка всех сочетаний ориентаций"""
        arm_options: List[List[FrozenSet[IVec3]]] = []
        for placement in candidate.arms:
            vertices = ArmService.postprocess(orbifold, placement)
            if not vertices:
                return None
            arm_options.append(vertices)
        for choice in product(*arm_options):
            support = set(candidate.vertices)
            for vertices in choice:
                support |= vertices
            diagram = InverseService._accept(sorted(support), orbifold)
            if diagram is not None:
                return diagram
        return None

    @staticmethod
    def case_ngt1(orbifold: OrbifoldDiagram) -> Tuple[NewtonDiagram, str]:
        """Не менее двух узлов: выбор центра, руки и прямая проверка"""
        centers = [r for r in orbifold.node_ids if orbifold.group_count(r) >= 4]
        if len(centers) > 1:
            raise NotRealizableError("center", f"Несколько узлов с четырьмя группами: {centers}")
        if not centers:
            centers = [
                r
                for r in orbifold.node_ids
                if len(orbifold.neighbors(r)) == 3 and not orbifold.leg_groups(r)
            ]
            if len(centers) > 1:
                raise NotRealizableError("center", f"Несколько центральных треугольников: {centers}")

        if centers:
            candidates = InverseService._star_candidates(orbifold, centers[0])
        elif all(len(orbifold.neighbors(r)) <= 2 for r in orbifold.node_ids):
            candidates = InverseService._string_candidates(orbifold)
        else:
            raise NotRealizableError("center", "Не найден центр диаграммы")

        tried = 0
        for candidate in candidates:
            tried += 1
            diagram = InverseService._assemble(orbifold, candidate)
            if diagram is not None:
                logger.debug(f"Найден центр {candidate.family} после {tried} кандидатов")
                return diagram, candidate.family
        raise NotRealizableError("center", f"Ни один из {tried} кандидатов не прошёл проверку")

    @staticmethod
    def validate(orbifold: OrbifoldDiagram) -> None:
        """Орбифолдная диаграмма QHS-зацепления: дерево, ноги с det > 1, отрицательная определённость"""
        if orbifold.free_edge is not None:
            if orbifold.nodes or orbifold.edges or orbifold.legs:
                raise InputError("Свободное ребро не совместимо с узлами")
            return
        tree = nx.Graph()
        tree.add_nodes_from(orbifold.node_ids)
        for edge in orbifold.edges:
            if edge.a not in tree or edge.b not in tree or edge.det < 1:
                raise InputError(f"Некорректное ребро {edge.a}-{edge.b} с det {edge.det}")
            tree.add_edge(edge.a, edge.b)
        if (
            len(tree) != len(orbifold.nodes)
            or len(orbifold.edges) != max(len(orbifold.nodes) - 1, 0)
            or (tree.number_of_nodes() and not nx.is_tree(tree))
        ):
            raise InputError("Орбифолдная диаграмма QHS-зацепления должна быть деревом")
        for leg in orbifold.legs:
            if leg.node not in tree or leg.det < 2:
                raise InputError(f"Некорректная нога у узла {leg.node} с det {leg.det}")
        if not GraphService.orbifold_is_negative_definite(orbifold):
            raise InputError("Орбифолдная диаграмма не отрицательно определена")

    @staticmethod
    def invert(orbifold: OrbifoldDiagram) -> InverseResult:
        """Диспетчер по числу узлов; результат нормализован перестановкой"""
        try:
            InverseService.validate(orbifold)
        except InputError as e:
            logger.info(f"Некорректная орбифолдная диаграмма: {e}")
            return InverseResult(ok=False, stage="input", reason=str(e))

        try:
            if orbifold.free_edge is not None:
                diagram = InverseService.case_n0(orbifold)
                family = "Segment"
            elif len(orbifold.nodes) == 1:
                diagram, number = InverseService.case_n1(orbifold)
                family = f"one-node case {number}"
            elif orbifold.nodes:
                diagram, family = InverseService.case_ngt1(orbifold)
            else:
                raise NotRealizableError("dispatch", "Пустая орбифолдная диаграмма")
            result = DiagramService.d_minimal(diagram)
        except NotRealizableError as e:
            logger.info(f"Обращение не удалось на этапе {e.stage}: {e.reason}")
            return InverseResult(ok=False, stage=e.stage, reason=e.reason)
        except SingLinkError as e:
            logger.info(f"Обращение не удалось: {e}")
            return InverseResult(ok=False, stage="invert", reason=str(e))

        logger.debug(f"Обращение успешно: {family}, вершины {list(result.vertices)}")
        return InverseResult(ok=True, diagram=result, family=family)

    @staticmethod
    def realizable(graph: ResolutionGraph) -> InverseResult:
        """Реализуется ли граф диаграммой Ньютона"""
        try:
            if not GraphService.is_negative_definite(graph):
                return InverseResult(ok=False, stage="input", reason="граф не отрицательно определён")
            orbifold = GraphService.orbifold(GraphService.minimize(graph))
        except SingLinkError as e:
            return InverseResult(ok=False, stage="input", reason=str(e))

        result = InverseService.invert(orbifold)
        if result.ok and not InverseService.verify(result.diagram, orbifold):
            return InverseResult(ok=False, stage="verify", reason="прямое отображение не совпадает")
        return result
