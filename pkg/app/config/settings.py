"""
Настройки приложения
"""

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings

_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseSettings):
    """Настройки приложения"""

    # Logging
    log_level: str = Field(default="WARNING", description="Уровень логирования")
    log_file: str = Field(
        default="", description="Файл логов (пустая строка - без файла)"
    )
    singlink_log: bool = Field(
        default=False, description="Трассировка стадий алгоритмов (SINGLINK_LOG)"
    )

    # Corpus / round trip
    corpus_bound: int = Field(default=8, description="Граница координат носителя")
    corpus_max_support: int = Field(
        default=5, description="Максимальный размер носителя"
    )
    corpus_count: int = Field(default=500, description="Количество диаграмм")
    corpus_seed: int = Field(default=1, description="Зерно генератора")
    bundle_dir: str = Field(
        default="counterexamples", description="Папка для контрпримеров"
    )

    # Moves
    move_walk_length: int = Field(
        default=6, description="Длина случайной последовательности ходов"
    )

    @field_validator("log_level", mode="after")
    @classmethod
    def parse_log_level(cls, value: str) -> str:
        """Нормализация уровня логирования"""
        level = value.strip().upper()
        if level not in _LEVELS:
            raise ValueError(f"Неизвестный уровень логирования: {value}")
        return level

    @field_validator("corpus_bound", mode="after")
    @classmethod
    def check_bound(cls, value: int) -> int:
        """Граница корпуса не меньше 2"""
        if value < 2:
            raise ValueError("corpus_bound должен быть не меньше 2")
        return value

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = False
        extra = "ignore"  # Игнорировать неизвестные переменные из .env


# Глобальный экземпляр настроек
settings = Settings()
