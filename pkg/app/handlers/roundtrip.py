"""
Проверка обратимости на случайном корпусе
"""

from pathlib import Path

from app.config.settings import settings
from app.handlers.common import emit
from app.models import CorpusSpec
from app.services.corpus_service import CorpusService
from app.utils.codecs import to_json
from app.utils.constants import EXIT_NOT_REALIZABLE, EXIT_OK


def cmd_roundtrip(args) -> int:
    spec = CorpusSpec(
        bound=args.bound if args.bound is not None else settings.corpus_bound,
        max_support=args.max_support if args.max_support is not None else settings.corpus_max_support,
        count=args.count if args.count is not None else settings.corpus_count,
        seed=args.seed if args.seed is not None else settings.corpus_seed,
    )
    bundle_dir = Path(args.bundle_dir or settings.bundle_dir)
    summary = CorpusService.run(spec, bundle_dir)
    emit(to_json(summary))
    return EXIT_OK if summary.failed == 0 else EXIT_NOT_REALIZABLE


def register(subparsers) -> None:
    parser = subparsers.add_parser("roundtrip", help="Проверка обратимости на корпусе")
    parser.add_argument("--bound", type=int)
    parser.add_argument("--max-support", dest="max_support", type=int)
    parser.add_argument("--count", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--bundle-dir", dest="bundle_dir")
    parser.set_defaults(func=cmd_roundtrip)
