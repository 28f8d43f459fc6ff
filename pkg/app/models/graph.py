"""
Модели графа разрешения и орбифолдной диаграммы
"""

from collections import Counter
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict


class ChainSpec(BaseModel):
    """Цепочка между вершинами двух соседних граней"""

    model_config = ConfigDict(frozen=True)

    from_face: int
    to_face: int
    det: int
    lam: int
    mult: int
    weights: Tuple[int, ...] = ()


class ResolutionGraph(BaseModel):
    """Дерево с самопересечениями b_v (все роды равны 0)"""

    model_config = ConfigDict(frozen=True)

    weights: Dict[int, int]
    edges: Tuple[Tuple[int, int], ...] = ()

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        for v, b in self.weights.items():
            graph.add_node(v, b=b)
        graph.add_edges_from(self.edges)
        return graph

    def neighbors(self, v: int) -> List[int]:
        result = []
        for a, b in self.edges:
            if a == v:
                result.append(b)
            elif b == v:
                result.append(a)
        return result

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    @property
    def size(self) -> int:
        return len(self.weights)


class OrbNode(BaseModel):
    """Узел с орбифолдным числом Эйлера"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    id: int
    e: Fraction


class OrbEdge(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    det: int


class OrbLeg(BaseModel):
    model_config = ConfigDict(frozen=True)

    node: int
    det: int


class OrbifoldDiagram(BaseModel):
    """Орбифолдная диаграмма G^o или свободное ребро FreeEdge(n)"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    nodes: Tuple[OrbNode, ...] = ()
    edges: Tuple[OrbEdge, ...] = ()
    legs: Tuple[OrbLeg, ...] = ()
    free_edge: Optional[int] = None

    @property
    def node_ids(self) -> List[int]:
        return [node.id for node in self.nodes]

    def euler(self, node_id: int) -> Fraction:
        for node in self.nodes:
            if node.id == node_id:
                return node.e
        raise KeyError(node_id)

    def neighbors(self, node_id: int) -> List[Tuple[int, int]]:
        """Соседние узлы вместе с детерминантами рёбер"""
        result = []
        for edge in self.edges:
            if edge.a == node_id:
                result.append((edge.b, edge.det))
            elif edge.b == node_id:
                result.append((edge.a, edge.det))
        return result

    def edge_det(self, a: int, b: int) -> int:
        for edge in self.edges:
            if {edge.a, edge.b} == {a, b}:
                return edge.det
        raise KeyError((a, b))

    def leg_dets(self, node_id: int) -> List[int]:
        return sorted(leg.det for leg in self.legs if leg.node == node_id)

    def leg_groups(self, node_id: int) -> Dict[int, int]:
        """Группы ног: детерминант -> количество"""
        return dict(sorted(Counter(self.leg_dets(node_id)).items()))

    def degree(self, node_id: int) -> int:
        return len(self.neighbors(node_id)) + len(self.leg_dets(node_id))

    def group_count(self, node_id: int) -> int:
        """Число различимых групп: соседи плюс различные детерминанты ног"""
        return len(self.neighbors(node_id)) + len(self.leg_groups(node_id))


class Decomposition(BaseModel):
    """Узлы, цепочки и ноги графа"""

    model_config = ConfigDict(frozen=True)

    nodes: Tuple[int, ...]
    # (узел, узел, внутренние вершины цепочки от первого узла)
    chains: Tuple[Tuple[int, int, Tuple[int, ...]], ...] = ()
    # (узел, вершины ноги от узла наружу)
    legs: Tuple[Tuple[int, Tuple[int, ...]], ...] = ()
    string: bool = False
