"""
Генерация корпуса диаграмм и проверка обратимости
"""

import json
from pathlib import Path
from random import Random
from typing import List, Optional

from app.models import CorpusSpec, NewtonDiagram, RoundtripFailure, RoundtripSummary
from app.services.diagram_service import DiagramService
from app.services.inverse_service import InverseService
from app.services.logger import get_logger
from app.utils.codecs import diagram_to_json, orbifold_to_json
from app.utils.exceptions import SingLinkError
from app.utils.lattice import IVec3

logger = get_logger(__name__)

# Ограничение числа попыток на одну диаграмму
MAX_ATTEMPTS = 200


class CorpusService:
    """Корпус случайных допустимых диаграмм"""

    @staticmethod
    def _sample_support(spec: CorpusSpec, rng: Random) -> List[IVec3]:
        """По точке у каждой оси плюс несколько произвольных точек"""
        support = set()
        for axis in range(3):
            point = [rng.choice((0, 0, 0, 1)) for _ in range(3)]
            point[axis] = rng.randint(1, spec.bound)
            support.add(tuple(point))
        for _ in range(rng.randint(0, max(0, spec.max_support - 3))):
            support.add(tuple(rng.randint(0, spec.bound) for _ in range(3)))
        return sorted(support)

    @staticmethod
    def sample(spec: CorpusSpec, rng: Random) -> Optional[NewtonDiagram]:
        for _ in range(MAX_ATTEMPTS):
            support = CorpusService._sample_support(spec, rng)
            if (0, 0, 0) in support:
                continue
            try:
                diagram = DiagramService.newton_boundary(support)
            except SingLinkError:
                continue
            if DiagramService.is_valid(diagram):
                return diagram
        return None

    @staticmethod
    def generate(spec: CorpusSpec) -> List[NewtonDiagram]:
        """Детерминированный при фиксированном зерне корпус"""
        rng = Random(spec.seed)
        corpus = []
        while len(corpus) < spec.count:
            diagram = CorpusService.sample(spec, rng)
            if diagram is None:
                logger.warning(f"Не удалось получить допустимую диаграмму за {MAX_ATTEMPTS} попыток")
                break
            corpus.append(diagram)
        logger.info(f"Сгенерировано {len(corpus)} диаграмм (B={spec.bound}, seed={spec.seed})")
        return corpus

    @staticmethod
    def roundtrip(diagram: NewtonDiagram) -> Optional[RoundtripFailure]:
        """invert(orbifold(minimize(oka(d_minimal(Γ))))) = d_minimal(Γ); None - успех"""
        support = tuple(sorted(diagram.vertices))
        try:
            expected = DiagramService.d_minimal(diagram)
            orbifold = InverseService.forward(expected)
        except SingLinkError as e:
            return RoundtripFailure(support=support, stage="forward", reason=str(e))

        result = InverseService.invert(orbifold)
        if not result.ok:
            return RoundtripFailure(support=support, stage=result.stage, reason=result.reason)
        if result.diagram.key() != expected.key():
            return RoundtripFailure(
                support=support,
                stage="compare",
                reason=f"получено {list(result.diagram.key())}, ожидалось {list(expected.key())}",
            )
        return None

    @staticmethod
    def dump_bundle(failure: RoundtripFailure, directory: Path, index: int) -> Path:
        """Самодостаточный контрпример: вход, этап и промежуточные данные"""
        directory.mkdir(parents=True, exist_ok=True)
        bundle = {"support": [list(p) for p in failure.support], "stage": failure.stage, "reason": failure.reason}
        try:
            expected = DiagramService.d_minimal(DiagramService.newton_boundary(failure.support))
            bundle["d_minimal"] = json.loads(diagram_to_json(expected))
            bundle["orbifold"] = json.loads(orbifold_to_json(InverseService.forward(expected)))
        except SingLinkError as e:
            bundle["intermediate_error"] = str(e)
        path = directory / f"counterexample_{index:04d}.json"
        path.write_text(json.dumps(bundle, indent=2, ensure_ascii=False), encoding="utf-8")
        return path

    @staticmethod
    def run(spec: CorpusSpec, bundle_dir: Optional[Path] = None) -> RoundtripSummary:
        summary = RoundtripSummary()
        for diagram in CorpusService.generate(spec):
            failure = CorpusService.roundtrip(diagram)
            if failure is None:
                summary.passed += 1
                continue
            summary.failed += 1
            summary.failures.append(failure)
            logger.warning(f"Контрпример {list(failure.support)}: {failure.stage}: {failure.reason}")
            if bundle_dir is not None:
                CorpusService.dump_bundle(failure, bundle_dir, summary.failed)
        logger.info(f"Проверка обратимости: {summary.passed} успешно, {summary.failed} с ошибкой")
        return summary
