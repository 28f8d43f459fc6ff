"""
Модели предметной области
"""

from app.models.diagram import (
    ArmInfo,
    Edge,
    EdgeKind,
    Face,
    FaceShape,
    IsolationReport,
    Move,
    MoveKind,
    MovingTriangle,
    NewtonDiagram,
    StructureClass,
    TrapezoidLabel,
)
from app.models.graph import (
    ChainSpec,
    Decomposition,
    OrbEdge,
    OrbifoldDiagram,
    OrbLeg,
    OrbNode,
    ResolutionGraph,
)
from app.models.inverse import (
    ArmPlacement,
    ArmTriangle,
    BasicData,
    CenterCandidate,
    InverseResult,
    LegData,
)
from app.models.corpus import CorpusSpec, RoundtripFailure, RoundtripSummary
from app.models.invariants import FaceEquationCheck, InvariantReport

__all__ = [
    "ArmInfo",
    "ArmPlacement",
    "ArmTriangle",
    "BasicData",
    "CenterCandidate",
    "ChainSpec",
    "CorpusSpec",
    "Decomposition",
    "Edge",
    "EdgeKind",
    "Face",
    "FaceEquationCheck",
    "FaceShape",
    "InvariantReport",
    "InverseResult",
    "IsolationReport",
    "LegData",
    "Move",
    "MoveKind",
    "MovingTriangle",
    "NewtonDiagram",
    "OrbEdge",
    "OrbifoldDiagram",
    "OrbLeg",
    "OrbNode",
    "ResolutionGraph",
    "RoundtripFailure",
    "RoundtripSummary",
    "StructureClass",
    "TrapezoidLabel",
]
