"""
Модели инвариантов диаграммы
"""

from fractions import Fraction

from pydantic import BaseModel, ConfigDict


class InvariantReport(BaseModel):
    """μ, p_g и кратность"""

    model_config = ConfigDict(frozen=True)

    milnor: int
    geometric_genus: int
    multiplicity: int


class FaceEquationCheck(BaseModel):
    """Проверка уравнений для одной компактной грани"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    face_id: int
    euler: Fraction
    normal_identity: bool
    value_identity: bool
