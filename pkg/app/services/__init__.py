"""
Сервисы приложения
"""

from .logger import setup_logger, get_logger
from .diagram_service import DiagramService
from .invariant_service import InvariantService
from .oka_service import OkaService
from .graph_service import GraphService
from .arm_service import ArmService
from .center_service import CenterService
from .inverse_service import InverseService
from .corpus_service import CorpusService

__all__ = [
    "setup_logger",
    "get_logger",
    "DiagramService",
    "InvariantService",
    "OkaService",
    "GraphService",
    "ArmService",
    "CenterService",
    "InverseService",
    "CorpusService",
]
