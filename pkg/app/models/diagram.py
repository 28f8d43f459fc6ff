"""
Модели диаграммы Ньютона
"""

from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

IVec3 = Tuple[int, int, int]


class EdgeKind(str, Enum):
    """Тип ребра"""

    COORDINATE_PLANE = "coordinate-plane"
    CROSSING = "crossing"


class MoveKind(str, Enum):
    """Элементарные ходы"""

    M1_PLUS = "M1+"
    M1_MINUS = "M1-"
    M2_PLUS = "M2+"
    M2_MINUS = "M2-"


class Face(BaseModel):
    """Грань Γ₊: компактная или некомпактная, прилегающая к ∂Γ"""

    model_config = ConfigDict(frozen=True)

    id: int
    vertices: Tuple[IVec3, ...] = ()
    normal: IVec3
    value: int
    compact: bool = True


class Edge(BaseModel):
    """Ребро диаграммы с детерминантом и кратностью"""

    model_config = ConfigDict(frozen=True)

    ends: Tuple[IVec3, IVec3]
    faces: Tuple[int, int]
    det: int
    mult: int
    kind: EdgeKind
    boundary: bool


class NewtonDiagram(BaseModel):
    """Граница Ньютона Γ(S)"""

    model_config = ConfigDict(frozen=True)

    vertices: Tuple[IVec3, ...]
    faces: Tuple[Face, ...] = ()
    edges: Tuple[Edge, ...] = ()

    @property
    def compact_faces(self) -> List[Face]:
        return [face for face in self.faces if face.compact]

    @property
    def noncompact_faces(self) -> List[Face]:
        return [face for face in self.faces if not face.compact]

    @property
    def is_segment(self) -> bool:
        return not self.compact_faces and len(self.vertices) == 2

    def face(self, face_id: int) -> Face:
        for face in self.faces:
            if face.id == face_id:
                return face
        raise KeyError(face_id)

    def face_edges(self, face_id: int) -> List[Edge]:
        return [edge for edge in self.edges if face_id in edge.faces]

    def key(self) -> Tuple[IVec3, ...]:
        """Ключ для сравнения диаграмм: отсортированные вершины"""
        return tuple(sorted(self.vertices))


class TrapezoidLabel(BaseModel):
    """Параметры трапеции A=(p,0,n), B=(0,q,n), C=(r1,r2+tq,0), D=(r1+tp,r2,0)"""

    model_config = ConfigDict(frozen=True)

    face_id: int
    p: int
    q: int
    n: int
    t: int
    r1: int
    r2: int
    # perm[i] - исходная координата, ставшая i-й в нормальной форме
    perm: Tuple[int, int, int]


class FaceShape(BaseModel):
    """Классификация компактной грани"""

    model_config = ConfigDict(frozen=True)

    face_id: int
    shape: str  # "triangle" | "trapezoid"
    trapezoid: Optional[TrapezoidLabel] = None


class ArmInfo(BaseModel):
    """Рука в направлении оси: треугольники от кисти к плечу"""

    model_config = ConfigDict(frozen=True)

    axis: int
    triangles: Tuple[int, ...] = ()
    degenerate_edge: Optional[Tuple[IVec3, IVec3]] = None

    @property
    def hand(self) -> Optional[int]:
        return self.triangles[0] if self.triangles else None


class StructureClass(BaseModel):
    """Семейство ■_k / ▲_k / l_k или отрезок"""

    model_config = ConfigDict(frozen=True)

    family: str  # "trapezoid" | "triangle" | "edge" | "segment"
    hands: int = 0

    @property
    def tag(self) -> str:
        symbol = {"trapezoid": "■", "triangle": "▲", "edge": "l", "segment": "Segment"}
        if self.family == "segment":
            return "Segment"
        return f"{symbol[self.family]}{self.hands}"


class Move(BaseModel):
    """Элементарный ход с осью и затронутыми точками"""

    model_config = ConfigDict(frozen=True)

    kind: MoveKind
    axis: Tuple[IVec3, IVec3]
    points: Tuple[IVec3, ...]


class IsolationReport(BaseModel):
    """Результат проверки изолированности"""

    model_config = ConfigDict(frozen=True)

    ok: bool
    violations: Tuple[str, ...] = ()


class MovingTriangle(BaseModel):
    """Движущийся треугольник P=(p,0,1), Q=(0,q,1), R=(m,n,0) в координатах perm"""

    model_config = ConfigDict(frozen=True)

    face_id: int
    perm: Tuple[int, int, int]
    p: int
    q: int
    m: int
    n: int
