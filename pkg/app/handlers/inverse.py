"""
Команды обратного алгоритма: invert, realizable
"""

from pathlib import Path

from app.handlers.common import PLAIN_FORMATS, add_format, emit_inverse
from app.services.inverse_service import InverseService
from app.services.logger import get_logger
from app.utils.codecs import read_graph, read_orbifold

logger = get_logger(__name__)


def cmd_invert(args) -> int:
    orbifold = read_orbifold(Path(args.input))
    result = InverseService.invert(orbifold)
    return emit_inverse(result, args.format)


def cmd_realizable(args) -> int:
    graph = read_graph(Path(args.input))
    result = InverseService.realizable(graph)
    if not result.ok:
        logger.info(f"Граф не реализуется: {result.stage}: {result.reason}")
    return emit_inverse(result, args.format)


def register(subparsers) -> None:
    parser = subparsers.add_parser("invert", help="Диаграмма по орбифолдной диаграмме")
    parser.add_argument("input")
    add_format(parser, PLAIN_FORMATS)
    parser.set_defaults(func=cmd_invert)

    parser = subparsers.add_parser("realizable", help="Реализуемость графа разрешения")
    parser.add_argument("input")
    add_format(parser, PLAIN_FORMATS)
    parser.set_defaults(func=cmd_realizable)
