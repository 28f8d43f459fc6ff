"""
Команды для диаграмм Ньютона: check, minimize, invariants, oka, moves, equivalent
"""

from random import Random

from app.config.settings import settings
from app.handlers.common import PLAIN_FORMATS, add_format, diagram_text, emit, load_diagram
from app.models import MoveKind
from app.services.diagram_service import DiagramService
from app.services.graph_service import GraphService
from app.services.invariant_service import InvariantService
from app.services.logger import get_logger
from app.services.oka_service import OkaService
from app.utils.codecs import diagram_to_json, graph_to_dot, graph_to_json, to_json
from app.utils.constants import EXIT_INPUT_ERROR, EXIT_NOT_REALIZABLE, EXIT_OK

logger = get_logger(__name__)


def cmd_check(args) -> int:
    """Изолированность, QHS и структурный класс"""
    diagram = load_diagram(args.input)
    isolated = DiagramService.check_isolated(diagram)
    qhs = DiagramService.check_qhs(diagram)
    report = {
        "vertices": [list(v) for v in sorted(diagram.vertices)],
        "isolated": isolated.ok,
        "violations": list(isolated.violations),
        "qhs": qhs,
    }
    if isolated.ok and qhs:
        report["structure_class"] = DiagramService.structure_class(diagram).tag
        report["det_criterion"] = DiagramService.det_criterion_check(diagram)
        report["trapezoids"] = [
            {
                **shape.trapezoid.model_dump(),
                "removable": DiagramService.removable_trapezoid(shape.trapezoid),
                "removable_vertices": DiagramService.removable_vertices(shape.trapezoid),
            }
            for shape in DiagramService.classify_faces(diagram)
            if shape.trapezoid is not None
        ]
    emit(to_json(report))
    return EXIT_OK if isolated.ok and qhs else EXIT_INPUT_ERROR


def cmd_minimize(args) -> int:
    diagram = DiagramService.d_minimal(load_diagram(args.input))
    emit(diagram_text(diagram) if args.format == "text" else diagram_to_json(diagram))
    return EXIT_OK


def cmd_invariants(args) -> int:
    diagram = load_diagram(args.input)
    report = InvariantService.report(diagram)
    if args.format == "text":
        emit(
            f"milnor {report.milnor}\n"
            f"geometric_genus {report.geometric_genus}\n"
            f"multiplicity {report.multiplicity}"
        )
    else:
        emit(to_json(report))
    return EXIT_OK


def cmd_oka(args) -> int:
    """Граф Оки; с --minimal - после стягивания (-1)-вершин"""
    diagram = load_diagram(args.input)
    DiagramService.require_valid(diagram)
    graph = OkaService.oka_graph(diagram)
    if args.minimal:
        graph = GraphService.minimize(graph)
    emit(graph_to_dot(graph) if args.format == "dot" else graph_to_json(graph))
    return EXIT_OK


def cmd_moves(args) -> int:
    """Допустимые ходы; с --walk - случайная последовательность ходов"""
    diagram = load_diagram(args.input)
    DiagramService.require_valid(diagram)
    if args.walk is None:
        kinds = [MoveKind(kind) for kind in args.kinds] if args.kinds else list(MoveKind)
        moves = DiagramService.enumerate_moves(diagram, kinds)
        emit(to_json([move.model_dump(mode="json") for move in moves]))
        return EXIT_OK

    length = args.walk or settings.move_walk_length
    walk = DiagramService.random_move_walk(diagram, length, Random(args.seed))
    emit(
        to_json(
            [
                {"move": move.model_dump(mode="json"), "vertices": [list(v) for v in current.vertices]}
                for move, current in walk
            ]
        )
    )
    return EXIT_OK


def cmd_equivalent(args) -> int:
    first = load_diagram(args.first)
    second = load_diagram(args.second)
    result = DiagramService.equivalent(first, second)
    emit(to_json({"equivalent": result}))
    return EXIT_OK if result else EXIT_NOT_REALIZABLE


def register(subparsers) -> None:
    parser = subparsers.add_parser("check", help="Проверка допустимости диаграммы")
    parser.add_argument("input")
    parser.set_defaults(func=cmd_check)

    parser = subparsers.add_parser("minimize", help="d-минимальный представитель")
    parser.add_argument("input")
    add_format(parser, PLAIN_FORMATS)
    parser.set_defaults(func=cmd_minimize)

    parser = subparsers.add_parser("invariants", help="μ, p_g и кратность")
    parser.add_argument("input")
    add_format(parser, PLAIN_FORMATS)
    parser.set_defaults(func=cmd_invariants)

    parser = subparsers.add_parser("oka", help="Граф разрешения по алгоритму Оки")
    parser.add_argument("input")
    parser.add_argument("--minimal", action="store_true", help="Стянуть (-1)-вершины")
    add_format(parser)
    parser.set_defaults(func=cmd_oka)

    parser = subparsers.add_parser("moves", help="Допустимые элементарные ходы")
    parser.add_argument("input")
    parser.add_argument("--kinds", nargs="*", choices=[kind.value for kind in MoveKind])
    parser.add_argument("--walk", type=int, nargs="?", const=0, help="Длина случайной последовательности ходов")
    parser.add_argument("--seed", type=int, default=1)
    parser.set_defaults(func=cmd_moves)

    parser = subparsers.add_parser("equivalent", help="Эквивалентность двух диаграмм")
    parser.add_argument("first")
    parser.add_argument("second")
    parser.set_defaults(func=cmd_equivalent)
