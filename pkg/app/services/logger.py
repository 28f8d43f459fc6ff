"""
Настройка логирования
"""

import sys
from pathlib import Path

from loguru import logger

from app.config.settings import settings

# Имя модуля берётся из привязки get_logger, иначе из записи loguru
LOG_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>{extra[name]}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | "
    "<level>{message}</level>"
)


def _add_file_sink(path: Path, level: str, rotation: str, retention: str) -> None:
    logger.add(
        path,
        format=LOG_FORMAT,
        level=level,
        rotation=rotation,
        retention=retention,
        compression="zip",
        backtrace=True,
        diagnose=False,
    )


def _stderr(message) -> None:
    sys.stderr.write(message)


def setup_logger() -> None:
    """Настройка системы логирования"""

    logger.remove()
    logger.configure(extra={"name": "singlink"})

    # SINGLINK_LOG включает трассировку стадий алгоритмов
    level = "DEBUG" if settings.singlink_log else settings.log_level

    # stdout занят результатами команд
    logger.add(_stderr, format=LOG_FORMAT, level=level, colorize=True, backtrace=True, diagnose=False)

    if settings.log_file:
        log_path = Path(settings.log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        _add_file_sink(log_path, level, "10 MB", "30 days")
        _add_file_sink(log_path.parent / f"{log_path.stem}_errors{log_path.suffix}", "ERROR", "5 MB", "60 days")

    logger.debug(f"Логирование настроено, уровень {level}")


def get_logger(name: str = None):
    """Логгер, привязанный к имени модуля"""
    return logger.bind(name=name or "singlink")


# Настройка по умолчанию для использования без командной строки
setup_logger()
