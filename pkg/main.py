"""
SingLink
Главный файл для запуска командной строки
"""
import argparse
import sys

from app.handlers import handlers
from app.services.logger import setup_logger, get_logger
from app.utils.constants import EXIT_INPUT_ERROR
from app.utils.exceptions import InputError, SingLinkError

# Настраиваем логирование
setup_logger()
logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singlink",
        description="Диаграммы Ньютона, графы разрешения и обратный алгоритм",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Регистрируем команды
    for handler in handlers:
        handler.register(subparsers)

    return parser


def main(argv=None) -> int:
    """Главная функция"""
    args = build_parser().parse_args(argv)
    logger.debug(f"Команда: {args.command}")

    try:
        return args.func(args)
    except InputError as e:
        logger.error(f"Ошибка входных данных: {e}")
        return EXIT_INPUT_ERROR
    except SingLinkError as e:
        logger.error(f"Ошибка: {e}")
        return EXIT_INPUT_ERROR
    except Exception:
        logger.exception(f"Непредвиденная ошибка в команде {args.command}")
        return EXIT_INPUT_ERROR


def run() -> None:
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.info("Получен сигнал остановки")
        sys.exit(EXIT_INPUT_ERROR)


if __name__ == "__main__":
    run()
