"""
Модели обратного алгоритма
"""

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from app.models.diagram import NewtonDiagram

IVec3 = Tuple[int, int, int]
IVec2 = Tuple[int, int]


class LegData(BaseModel):
    """Нога треугольника руки: нормаль некомпактной грани в системе руки"""

    model_config = ConfigDict(frozen=True)

    det: int
    count: int
    normal: IVec3
    value: int


class ArmTriangle(BaseModel):
    """Треугольник руки: первые две координаты вершин и a3 нормали"""

    model_config = ConfigDict(frozen=True)

    node: int
    # Вершины в виде (x, 0) или (0, y)
    vertices: Tuple[IVec2, IVec2, IVec2]
    a3: int
    legs: Tuple[LegData, ...] = ()
    # Дальнее пересекающее ребро [(x,0),(0,y)] в виде (x, y)
    gamma: IVec2


class BasicData(BaseModel):
    """Базовые данные руки, определённые с точностью до перестановки z1, z2"""

    model_config = ConfigDict(frozen=True)

    hand: int
    triangles: Tuple[ArmTriangle, ...]
    # Плечо: x-конец и y-конец последнего пересекающего ребра
    shoulder: IVec2
    shoulder_det: int = 1
    shoulder_count: int = 1
    # Узел за плечом (None, если за плечом некомпактная грань)
    stop_node: Optional[int] = None
    stop_a3: int
    stop_reason: str = ""

    @property
    def nodes(self) -> List[int]:
        return [triangle.node for triangle in self.triangles]

    @property
    def last(self) -> ArmTriangle:
        return self.triangles[-1]

    def triangle(self, node: int) -> ArmTriangle:
        for triangle in self.triangles:
            if triangle.node == node:
                return triangle
        raise KeyError(node)

    @property
    def shoulder_set(self) -> Tuple[int, int]:
        return tuple(sorted(self.shoulder))


class ArmPlacement(BaseModel):
    """Рука, привязанная к оси, и грань за её плечом в итоговых координатах"""

    model_config = ConfigDict(frozen=True)

    basic: BasicData
    axis: int
    beyond_normal: IVec3
    beyond_value: int


class CenterCandidate(BaseModel):
    """Кандидат на центр: вершины центральной грани и размещение рук"""

    model_config = ConfigDict(frozen=True)

    family: str
    vertices: Tuple[IVec3, ...] = ()
    arms: Tuple[ArmPlacement, ...] = ()


class InverseResult(BaseModel):
    """Результат обращения: d-минимальная диаграмма или причина отказа"""

    model_config = ConfigDict(frozen=True)

    ok: bool
    diagram: Optional[NewtonDiagram] = None
    stage: str = ""
    reason: str = ""
    family: str = ""
    details: Dict[str, str] = {}
