"""
Модели корпуса диаграмм
"""

from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator


class CorpusSpec(BaseModel):
    """Параметры генерации корпуса"""

    model_config = ConfigDict(frozen=True)

    bound: int = Field(default=8, description="Граница координат B")
    max_support: int = Field(default=5, description="Максимальный размер носителя")
    count: int = Field(default=500, description="Количество диаграмм")
    seed: int = Field(default=1, description="Зерно генератора")

    @field_validator("bound", mode="after")
    @classmethod
    def check_bound(cls, value: int) -> int:
        """B ≥ 2"""
        if value < 2:
            raise ValueError("Граница координат должна быть не меньше 2")
        return value


class RoundtripFailure(BaseModel):
    model_config = ConfigDict(frozen=True)

    support: Tuple[Tuple[int, int, int], ...]
    stage: str
    reason: str


class RoundtripSummary(BaseModel):
    """Итог проверки обратимости"""

    passed: int = 0
    failed: int = 0
    failures: List[RoundtripFailure] = []
