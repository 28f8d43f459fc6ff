"""
Общие функции команд: загрузка входа и вывод результата
"""

import sys
from pathlib import Path

from app.models import InverseResult, NewtonDiagram
from app.services.diagram_service import DiagramService
from app.services.logger import get_logger
from app.utils.codecs import diagram_to_json, format_support, read_points, to_json
from app.utils.constants import EXIT_NOT_REALIZABLE, EXIT_OK

logger = get_logger(__name__)

FORMATS = ("json", "dot", "text")
PLAIN_FORMATS = ("json", "text")


def add_format(parser, formats=FORMATS, default: str = "json") -> None:
    parser.add_argument("--format", choices=formats, default=default, help="Формат вывода")


def load_diagram(path: str) -> NewtonDiagram:
    """Носитель из файла -> граница Ньютона"""
    points = read_points(Path(path))
    logger.debug(f"Прочитано {len(points)} точек из {path}")
    return DiagramService.newton_boundary(points)


def emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def diagram_text(diagram: NewtonDiagram) -> str:
    """Носитель в текстовом формате и нормали компактных граней комментариями"""
    faces = "".join(
        f"# грань {face.id}: нормаль {face.normal}, m={face.value}\n" for face in diagram.compact_faces
    )
    return format_support(sorted(diagram.vertices)) + faces


def emit_inverse(result: InverseResult, fmt: str) -> int:
    """Вывод результата обращения и код выхода 0/1"""
    if not result.ok:
        emit(to_json({"ok": False, "stage": result.stage, "reason": result.reason}))
        return EXIT_NOT_REALIZABLE
    if fmt == "text":
        emit(f"# {result.family}\n" + diagram_text(result.diagram))
    else:
        emit(diagram_to_json(result.diagram))
    return EXIT_OK
