import argparse
import logging
from collections.abc import Sequence

from pydantic import ValidationError

from app.cli.commands import cache, correlator, limit, map, qpoly, verify, witten
from app.cli.deps import configure_logging, global_options, load_context
from app.cli.output import emit
from app.core.config import settings
from app.core.errors import CacheConflict, ComputationError
from app.models import ResidualReport

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gue-kdv",
        description="Exact GUE map counts, Toda and KdV hierarchies, intersection numbers.",
        parents=[global_options(suppress=False)],
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in (map, correlator, witten, qpoly, limit, verify, cache):
        command.register(subparsers)
    return parser


def _error_document(exc: Exception) -> dict[str, object]:
    document: dict[str, object] = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, CacheConflict):
        document.update(key=exc.key, values=exc.values, sources=exc.sources)
    return document


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    configure_logging(args.log_level or settings.LOG_LEVEL)
    try:
        ctx = load_context(args)
    except (ValidationError, FileNotFoundError, ValueError) as exc:
        logger.error("Invalid configuration: %s", exc)
        return EXIT_USAGE
    fmt = ctx.settings.OUTPUT_FORMAT
    try:
        result = args.handler(args, ctx)
    except ComputationError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        emit(_error_document(exc), "json")
        return EXIT_FAILURE
    except ValueError as exc:
        logger.error("%s", exc)
        emit(_error_document(exc), "json")
        return EXIT_USAGE
    except Exception as exc:
        logger.exception("Command %s aborted", args.command)
        emit(_error_document(exc), "json")
        return EXIT_FAILURE
    ctx.persist()
    emit(result, fmt)
    if isinstance(result, ResidualReport) and not result.ok:
        return EXIT_FAILURE
    return EXIT_OK
