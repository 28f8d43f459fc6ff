"""
Форматы ввода/вывода: текст носителя, JSON и DOT
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ValidationError

from app.models import NewtonDiagram, OrbEdge, OrbifoldDiagram, OrbLeg, OrbNode, ResolutionGraph
from app.utils.exceptions import InputError

IVec3 = Tuple[int, int, int]


# Модели внешнего JSON-формата
class FaceJson(BaseModel):
    vertices: List[IVec3]
    normal: IVec3
    m: int


class EdgeJson(BaseModel):
    ends: Tuple[IVec3, IVec3]
    det: int
    mult: int


class DiagramJson(BaseModel):
    vertices: List[IVec3]
    faces: List[FaceJson] = []
    edges: List[EdgeJson] = []


class GraphVertexJson(BaseModel):
    id: int
    b: int


class GraphJson(BaseModel):
    vertices: List[GraphVertexJson]
    edges: List[Tuple[int, int]] = []


class OrbNodeJson(BaseModel):
    id: int
    e: Tuple[int, int]


class OrbifoldJson(BaseModel):
    nodes: List[OrbNodeJson] = []
    edges: List[OrbEdge] = []
    legs: List[OrbLeg] = []
    free_edge: Optional[int] = None


def _read(source: Union[str, Path]) -> str:
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Не удалось прочитать {source}: {e}") from e


def parse_support(text: str) -> List[IVec3]:
    """Строки 'p1 p2 p3', комментарии после '#'"""
    points = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 3:
            raise InputError(f"Строка {number}: ожидались три координаты, получено '{line}'")
        try:
            point = tuple(int(x) for x in parts)
        except ValueError as e:
            raise InputError(f"Строка {number}: {e}") from e
        if any(x < 0 for x in point):
            raise InputError(f"Строка {number}: отрицательная координата {point}")
        points.append(point)
    if not points:
        raise InputError("Пустой носитель")
    return points


def format_support(points) -> str:
    return "".join(f"{p[0]} {p[1]} {p[2]}\n" for p in points)


def read_support(source: Union[str, Path]) -> List[IVec3]:
    return parse_support(_read(source))


def diagram_to_json(diagram: NewtonDiagram) -> str:
    payload = DiagramJson(
        vertices=sorted(diagram.vertices),
        faces=[
            FaceJson(vertices=list(face.vertices), normal=face.normal, m=face.value)
            for face in diagram.compact_faces
        ],
        edges=[EdgeJson(ends=edge.ends, det=edge.det, mult=edge.mult) for edge in diagram.edges],
    )
    return payload.model_dump_json(indent=2)


def diagram_vertices_from_json(text: str) -> List[IVec3]:
    """Из JSON диаграммы нужны только вершины: грани и рёбра восстанавливаются"""
    try:
        payload = DiagramJson.model_validate_json(text)
    except ValidationError as e:
        raise InputError(f"Некорректный JSON диаграммы: {e}") from e
    if not payload.vertices:
        raise InputError("Диаграмма без вершин")
    return list(payload.vertices)


def read_points(source: Union[str, Path]) -> List[IVec3]:
    """Носитель из текстового файла или JSON диаграммы"""
    text = _read(source)
    if text.lstrip().startswith("{"):
        return diagram_vertices_from_json(text)
    return parse_support(text)


def graph_to_json(graph: ResolutionGraph) -> str:
    payload = GraphJson(
        vertices=[GraphVertexJson(id=v, b=b) for v, b in sorted(graph.weights.items())],
        edges=sorted(tuple(sorted(edge)) for edge in graph.edges),
    )
    return payload.model_dump_json(indent=2)


def graph_from_json(text: str) -> ResolutionGraph:
    try:
        payload = GraphJson.model_validate_json(text)
    except ValidationError as e:
        raise InputError(f"Некорректный JSON графа: {e}") from e
    weights = {vertex.id: vertex.b for vertex in payload.vertices}
    if len(weights) != len(payload.vertices):
        raise InputError("Повторяющиеся идентификаторы вершин")
    for a, b in payload.edges:
        if a not in weights or b not in weights or a == b:
            raise InputError(f"Некорректное ребро ({a}, {b})")
    return ResolutionGraph(weights=weights, edges=tuple(payload.edges))


def orbifold_to_json(orbifold: OrbifoldDiagram) -> str:
    payload = OrbifoldJson(
        nodes=[
            OrbNodeJson(id=node.id, e=(node.e.numerator, node.e.denominator))
            for node in sorted(orbifold.nodes, key=lambda n: n.id)
        ],
        edges=sorted(orbifold.edges, key=lambda edge: (edge.a, edge.b)),
        legs=sorted(orbifold.legs, key=lambda leg: (leg.node, leg.det)),
        free_edge=orbifold.free_edge,
    )
    return payload.model_dump_json(indent=2)


def orbifold_from_json(text: str) -> OrbifoldDiagram:
    try:
        payload = OrbifoldJson.model_validate_json(text)
    except ValidationError as e:
        raise InputError(f"Некорректный JSON орбифолдной диаграммы: {e}") from e
    nodes = []
    for node in payload.nodes:
        num, den = node.e
        if den == 0:
            raise InputError(f"Нулевой знаменатель у узла {node.id}")
        nodes.append(OrbNode(id=node.id, e=Fraction(num, den)))
    ids = {node.id for node in nodes}
    for edge in payload.edges:
        if edge.a not in ids or edge.b not in ids:
            raise InputError(f"Ребро ({edge.a}, {edge.b}) ссылается на неизвестный узел")
    for leg in payload.legs:
        if leg.node not in ids:
            raise InputError(f"Нога ссылается на неизвестный узел {leg.node}")
    if payload.free_edge is not None and nodes:
        raise InputError("Свободное ребро несовместимо с узлами")
    if payload.free_edge is None and not nodes:
        raise InputError("Пустая орбифолдная диаграмма")
    return OrbifoldDiagram(
        nodes=tuple(nodes),
        edges=tuple(payload.edges),
        legs=tuple(payload.legs),
        free_edge=payload.free_edge,
    )


def read_graph(source: Union[str, Path]) -> ResolutionGraph:
    return graph_from_json(_read(source))


def read_orbifold(source: Union[str, Path]) -> OrbifoldDiagram:
    return orbifold_from_json(_read(source))


def graph_to_dot(graph: ResolutionGraph) -> str:
    lines = ["graph resolution {"]
    for v, b in sorted(graph.weights.items()):
        lines.append(f'  {v} [label="{b}"];')
    for a, b in sorted(tuple(sorted(edge)) for edge in graph.edges):
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def orbifold_to_dot(orbifold: OrbifoldDiagram) -> str:
    lines = ["graph orbifold {"]
    if orbifold.free_edge is not None:
        lines.append('  left [shape=point]; right [shape=point];')
        lines.append(f'  left -- right [label="{orbifold.free_edge}"];')
    for node in sorted(orbifold.nodes, key=lambda n: n.id):
        lines.append(f'  {node.id} [label="{node.e}"];')
    for edge in sorted(orbifold.edges, key=lambda e: (e.a, e.b)):
        lines.append(f'  {edge.a} -- {edge.b} [label="{edge.det}"];')
    for index, leg in enumerate(sorted(orbifold.legs, key=lambda leg: (leg.node, leg.det))):
        lines.append(f"  leg{index} [shape=point];")
        lines.append(f'  {leg.node} -- leg{index} [label="{leg.det}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(data) -> str:
    """Произвольный отчёт: pydantic-модель или словарь"""
    if isinstance(data, BaseModel):
        return data.model_dump_json(indent=2)
    return json.dumps(data, indent=2, ensure_ascii=False, default=str)
