"""
Команды для графов разрешения
"""

from pathlib import Path

from app.handlers.common import add_format, emit, load_diagram
from app.services.graph_service import GraphService
from app.services.oka_service import OkaService
from app.utils.codecs import orbifold_to_dot, orbifold_to_json, read_graph, to_json
from app.utils.constants import EXIT_OK


def cmd_orbifold(args) -> int:
    """Орбифолдная диаграмма минимального графа"""
    if args.diagram:
        graph = OkaService.oka_graph(load_diagram(args.input))
    else:
        graph = read_graph(Path(args.input))
    GraphService.graph_det(graph)
    orbifold = GraphService.orbifold(GraphService.minimize(graph))
    if args.format == "dot":
        emit(orbifold_to_dot(orbifold))
    elif args.format == "text":
        emit(
            to_json(
                {
                    "nodes": len(orbifold.nodes),
                    "det_orbifold": str(GraphService.orbifold_det(orbifold)),
                    "det_product": GraphService.det_product(orbifold),
                    "det_graph": GraphService.graph_det(graph),
                }
            )
        )
    else:
        emit(orbifold_to_json(orbifold))
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("orbifold", help="Орбифолдная диаграмма графа")
    parser.add_argument("input")
    parser.add_argument("--diagram", action="store_true", help="Вход - носитель диаграммы, а не граф")
    add_format(parser)
    parser.set_defaults(func=cmd_orbifold)
