"""
Исключения приложения
"""

from typing import Optional


class SingLinkError(Exception):
    """Базовое исключение"""


class InputError(SingLinkError):
    """Некорректный входной файл или структура данных"""


class InvalidDiagramError(SingLinkError):
    """Диаграмма не изолирована, не QHS или нарушает предусловие операции"""


class ArithmeticContractError(SingLinkError):
    """Нарушено арифметическое предусловие леммы"""


class NotNegativeDefiniteError(SingLinkError):
    """Матрица пересечений не отрицательно определена"""


class NotRealizableError(SingLinkError):
    """Граф не реализуется диаграммой Ньютона"""

    def __init__(self, stage: str, reason: str, data: Optional[dict] = None):
        super().__init__(f"{stage}: {reason}")
        self.stage = stage
        self.reason = reason
        self.data = data or {}
