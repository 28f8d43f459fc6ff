"""
Сервис графов разрешения: определители, раздутия и сдутия,
разложение на узлы, цепочки и ноги, орбифолдная диаграмма
"""

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

import networkx as nx
import sympy as sp
from networkx.algorithms.isomorphism import categorical_multiedge_match, categorical_node_match

from app.models import (
    Decomposition,
    OrbEdge,
    OrbifoldDiagram,
    OrbLeg,
    OrbNode,
    ResolutionGraph,
)
from app.services.logger import get_logger
from app.utils.exceptions import ArithmeticContractError, InputError, NotNegativeDefiniteError

logger = get_logger(__name__)


def string_det(weights: Sequence[int]) -> int:
    """det(-I) для цепочки с самопересечениями b_i (пустая цепочка -> 1)"""
    previous, current = 1, 1
    for k, b in enumerate(weights):
        if k == 0:
            previous, current = 1, -b
        else:
            previous, current = current, -b * current - previous
    return current


def _intersection_matrix(graph: ResolutionGraph) -> sp.Matrix:
    """Матрица -I графа-дерева"""
    tree = graph.to_networkx()
    if tree.number_of_nodes() and not nx.is_tree(tree):
        raise InputError("Граф разрешения должен быть деревом")
    index = {v: i for i, v in enumerate(tree.nodes)}
    matrix = sp.zeros(len(index), len(index))
    for v, b in tree.nodes(data="b"):
        matrix[index[v], index[v]] = -b
    for a, b in tree.edges:
        matrix[index[a], index[b]] = -1
        matrix[index[b], index[a]] = -1
    return matrix


class GraphService:
    """Операции над графами разрешения и орбифолдными диаграммами"""

    @staticmethod
    def is_negative_definite(graph: ResolutionGraph) -> bool:
        matrix = _intersection_matrix(graph)
        return not matrix.rows or bool(matrix.is_positive_definite)

    @staticmethod
    def graph_det(graph: ResolutionGraph) -> int:
        """det(G) = det(-I)"""
        matrix = _intersection_matrix(graph)
        if not matrix.rows:
            return 1
        if not matrix.is_positive_definite:
            raise NotNegativeDefiniteError("Матрица пересечений не отрицательно определена")
        return int(matrix.det(method="bareiss"))

    @staticmethod
    def minimize(graph: ResolutionGraph) -> ResolutionGraph:
        """Хорошая минимальная модель: сдутие (-1)-вершин степени не больше 2"""
        weights = dict(graph.weights)
        tree = graph.to_networkx()

        while True:
            candidates = [v for v in sorted(tree.nodes) if weights[v] == -1 and tree.degree(v) <= 2]
            if not candidates:
                break
            if tree.number_of_nodes() == 1:
                raise InputError("Граф сдувается в гладкую точку")
            v = candidates[0]
            neighbours = list(tree.neighbors(v))
            for w in neighbours:
                weights[w] += 1
            tree.remove_node(v)
            del weights[v]
            if len(neighbours) == 2:
                tree.add_edge(*neighbours)
            logger.debug(f"Сдута вершина {v}, соседи {neighbours}")

        edges = tuple(sorted(tuple(sorted(e)) for e in tree.edges))
        return ResolutionGraph(weights=weights, edges=edges)

    @staticmethod
    def blow_up(graph: ResolutionGraph, where: Union[int, Tuple[int, int]]) -> ResolutionGraph:
        """Раздутие в точке вершины или в точке пересечения двух вершин"""
        weights = dict(graph.weights)
        edges = [tuple(e) for e in graph.edges]
        new = max(weights, default=-1) + 1
        weights[new] = -1

        if isinstance(where, int):
            if where not in weights:
                raise InputError(f"Нет вершины {where}")
            weights[where] -= 1
            edges.append((where, new))
        else:
            a, b = where
            edge = next((e for e in edges if set(e) == {a, b}), None)
            if edge is None:
                raise InputError(f"Нет ребра {a}-{b}")
            edges.remove(edge)
            weights[a] -= 1
            weights[b] -= 1
            edges.extend([(a, new), (new, b)])

        return ResolutionGraph(weights=weights, edges=tuple(edges))

    @staticmethod
    def decompose(graph: ResolutionGraph) -> Decomposition:
        """Узлы (степень ≥ 3), цепочки между узлами и ноги"""
        tree = graph.to_networkx()
        nodes = sorted(v for v in tree.nodes if tree.degree(v) >= 3)
        if not nodes:
            return Decomposition(nodes=(), string=True)

        node_set = set(nodes)
        chains = []
        legs = []
        for r in nodes:
            for w in sorted(tree.neighbors(r)):
                path = []
                previous, current = r, w
                while current not in node_set and tree.degree(current) == 2:
                    path.append(current)
                    previous, current = current, next(x for x in tree.neighbors(current) if x != previous)
                if current in node_set:
                    if r < current:
                        chains.append((r, current, tuple(path)))
                else:
                    path.append(current)
                    legs.append((r, tuple(path)))

        return Decomposition(nodes=tuple(nodes), chains=tuple(chains), legs=tuple(legs))

    @staticmethod
    def _seifert_pair(graph: ResolutionGraph, path: Sequence[int]) -> Tuple[int, int]:
        """(α, ω) для цепочки, прочитанной от узла наружу"""
        if not path:
            return 1, 0
        alpha = string_det([graph.weights[v] for v in path])
        omega = string_det([graph.weights[v] for v in path[1:]])
        return alpha, omega

    @staticmethod
    def orbifold(graph: ResolutionGraph) -> OrbifoldDiagram:
        """Орбифолдная диаграмма G^o; без узлов - свободное ребро det(G)"""
        parts = GraphService.decompose(graph)
        if parts.string:
            return OrbifoldDiagram(free_edge=GraphService.graph_det(graph))

        euler: Dict[int, Fraction] = {r: Fraction(graph.weights[r]) for r in parts.nodes}
        edges = []
        legs = []
        for a, b, path in parts.chains:
            alpha, omega = GraphService._seifert_pair(graph, path)
            euler[a] += Fraction(omega, alpha)
            alpha_back, omega_back = GraphService._seifert_pair(graph, tuple(reversed(path)))
            euler[b] += Fraction(omega_back, alpha_back)
            edges.append(OrbEdge(a=a, b=b, det=alpha))
        for r, path in parts.legs:
            alpha, omega = GraphService._seifert_pair(graph, path)
            euler[r] += Fraction(omega, alpha)
            legs.append(OrbLeg(node=r, det=alpha))

        nodes = tuple(OrbNode(id=r, e=euler[r]) for r in parts.nodes)
        return OrbifoldDiagram(nodes=nodes, edges=tuple(edges), legs=tuple(legs))

    @staticmethod
    def orbifold_equations(orbifold: OrbifoldDiagram) -> Tuple[List[int], sp.Matrix]:
        """Матрица I^o: диагональ e_r, вне диагонали Σ 1/n_rs"""
        ids = orbifold.node_ids
        index = {r: i for i, r in enumerate(ids)}
        matrix = sp.zeros(len(ids), len(ids))
        for node in orbifold.nodes:
            matrix[index[node.id], index[node.id]] = sp.Rational(node.e.numerator, node.e.denominator)
        for edge in orbifold.edges:
            i, j = index[edge.a], index[edge.b]
            matrix[i, j] += sp.Rational(1, edge.det)
            matrix[j, i] += sp.Rational(1, edge.det)
        return ids, matrix

    @staticmethod
    def orbifold_det(orbifold: OrbifoldDiagram) -> Fraction:
        """det(-I^o); для свободного ребра по соглашению 1"""
        if orbifold.free_edge is not None:
            return Fraction(1)
        _, matrix = GraphService.orbifold_equations(orbifold)
        value = sp.Rational((-matrix).det())
        return Fraction(int(value.p), int(value.q))

    @staticmethod
    def orbifold_is_negative_definite(orbifold: OrbifoldDiagram) -> bool:
        if orbifold.free_edge is not None or not orbifold.nodes:
            return True
        _, matrix = GraphService.orbifold_equations(orbifold)
        return bool((-matrix).is_positive_definite)

    @staticmethod
    def det_product(orbifold: OrbifoldDiagram) -> int:
        """Произведение детерминантов всех цепочек и ног"""
        product = 1
        for edge in orbifold.edges:
            product *= edge.det
        for leg in orbifold.legs:
            product *= leg.det
        return product

    @staticmethod
    def graph_iso(first: ResolutionGraph, second: ResolutionGraph) -> bool:
        return nx.is_isomorphic(
            first.to_networkx(), second.to_networkx(), node_match=categorical_node_match("b", None)
        )

    @staticmethod
    def _orbifold_multigraph(orbifold: OrbifoldDiagram) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        for node in orbifold.nodes:
            graph.add_node(node.id, label=(node.e, tuple(orbifold.leg_dets(node.id))))
        for edge in orbifold.edges:
            graph.add_edge(edge.a, edge.b, det=edge.det)
        return graph

    @staticmethod
    def orb_iso(first: OrbifoldDiagram, second: OrbifoldDiagram) -> bool:
        """Изоморфизм орбифолдных диаграмм с учётом кратных рёбер и мультимножеств ног"""
        if first.free_edge is not None or second.free_edge is not None:
            return first.free_edge == second.free_edge
        return nx.is_isomorphic(
            GraphService._orbifold_multigraph(first),
            GraphService._orbifold_multigraph(second),
            node_match=categorical_node_match("label", None),
            edge_match=categorical_multiedge_match("det", None),
        )

    @staticmethod
    def solve_restricted(
        orbifold: OrbifoldDiagram,
        unknown: Sequence[int],
        known: Dict[int, Sequence[Fraction]],
        extra: Dict[int, Sequence[Fraction]],
    ) -> Dict[int, Tuple[Fraction, ...]]:
        """
        Решает систему e_r·x_r + Σ x_s/n_rs = extra_r по неизвестным узлам.

        Известные соседи (known) переносятся в правую часть; сосед вне
        обоих множеств означает несогласованные данные.
        """
        index = {r: i for i, r in enumerate(unknown)}
        width = len(next(iter(extra.values())))
        matrix = sp.zeros(len(index), len(index))
        rhs = sp.zeros(len(index), width)

        for r, i in index.items():
            e = orbifold.euler(r)
            matrix[i, i] = sp.Rational(e.numerator, e.denominator)
            for j in range(width):
                value = Fraction(extra[r][j])
                rhs[i, j] = sp.Rational(value.numerator, value.denominator)
            for s, det in orbifold.neighbors(r):
                if s in index:
                    matrix[i, index[s]] += sp.Rational(1, det)
                elif s in known:
                    for j in range(width):
                        value = Fraction(known[s][j])
                        rhs[i, j] -= sp.Rational(value.numerator, value.denominator * det)
                else:
                    raise ArithmeticContractError(f"Сосед {s} узла {r} вне системы")

        if matrix.det() == 0:
            raise ArithmeticContractError(f"Вырожденная система для узлов {list(unknown)}")
        solution = matrix.LUsolve(rhs)
        return {
            r: tuple(Fraction(int(solution[i, j].p), int(solution[i, j].q)) for j in range(width))
            for r, i in index.items()
        }
