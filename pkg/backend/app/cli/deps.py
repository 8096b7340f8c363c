"""Shared argument types, global options and the per-invocation context."""

import argparse
import logging
import sys
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from app.cache import load_cache, save_cache
from app.core import config
from app.core.config import Settings, load_settings
from app.exact.rational import parse_rat
from app.gue.wick import default_oracle
from app.limits.backends import map_count_backend
from app.models import MapCache

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s - %(message)s"
LOG_LEVELS = ("debug", "info", "warning", "error")
FORMATS = ("json", "csv", "table")


# ---------------------------------------------------------------------------
# Argument types
# ---------------------------------------------------------------------------


def nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {value}")
    return value


def positive_int(text: str) -> int:
    value = nonnegative_int(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be positive, got 0")
    return value


def _comma_list(text: str, item: Callable[[str], Any]) -> list[Any]:
    parts = [part for part in text.split(",") if part.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("expected a comma separated list")
    return [item(part.strip()) for part in parts]


def index_list(text: str) -> list[int]:
    """Comma separated positive integers, e.g. ``4`` or ``2,2,3``."""
    return _comma_list(text, positive_int)


def degree_list(text: str) -> list[int]:
    return _comma_list(text, nonnegative_int)


def rational_list(text: str) -> list[Fraction]:
    def item(part: str) -> Fraction:
        try:
            value = parse_rat(part)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
        if value <= 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {part}")
        return value

    return _comma_list(text, item)


# ---------------------------------------------------------------------------
# Global options
# ---------------------------------------------------------------------------


def global_options(*, suppress: bool) -> argparse.ArgumentParser:
    """``--config --cache --format --log-level --workers``.

    Subcommand parsers use ``suppress`` so a flag given before the subcommand
    is not reset by the subcommand's own default.
    """
    default = argparse.SUPPRESS if suppress else None
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("global options")
    group.add_argument("--config", type=Path, default=default, help="key=value settings file")
    group.add_argument("--cache", type=Path, default=default, help="map-count cache (JSON)")
    group.add_argument("--format", choices=FORMATS, default=default)
    group.add_argument("--log-level", choices=LOG_LEVELS, default=default)
    group.add_argument("--workers", type=positive_int, default=default)
    return parser


_SUBCOMMAND_OPTIONS = global_options(suppress=True)


def add_command(subparsers: Any, name: str, help: str) -> argparse.ArgumentParser:
    return subparsers.add_parser(
        name, help=help, description=help, parents=[_SUBCOMMAND_OPTIONS]
    )


# ---------------------------------------------------------------------------
# Context
# ---------------------------------------------------------------------------


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=level.upper(), format=LOG_FORMAT, stream=sys.stderr, force=True
    )


def install_settings(new: Settings) -> None:
    """Copy ``new`` onto the shared ``settings`` instance every module imported."""
    for name in Settings.model_fields:
        setattr(config.settings, name, getattr(new, name))
    # the shared oracle captured the previous bound and worker count
    default_oracle.cache_clear()


@dataclass
class Context:
    settings: Settings
    cache: MapCache | None = None
    cache_path: Path | None = None
    _loaded_entries: int = 0

    def map_count(self, g: int, indices: Any) -> int:
        return map_count_backend(g, indices, self.cache)[0]

    def persist(self) -> None:
        if self.cache is None or self.cache_path is None:
            return
        if len(self.cache.entries) != self._loaded_entries:
            save_cache(self.cache, self.cache_path)


def settings_overrides(args: argparse.Namespace) -> dict[str, Any]:
    overrides: dict[str, Any] = {}
    for flag, field in (
        ("workers", "WORKERS"),
        ("format", "OUTPUT_FORMAT"),
        ("log_level", "LOG_LEVEL"),
        ("cache", "CACHE_PATH"),
    ):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[field] = value
    return overrides


def load_context(args: argparse.Namespace) -> Context:
    """Settings (env, ``--config``, flags) installed globally, plus the cache."""
    new = load_settings(getattr(args, "config", None), **settings_overrides(args))
    install_settings(new)
    logging.getLogger().setLevel(new.LOG_LEVEL)
    if new.CACHE_PATH is None:
        return Context(settings=new)
    cache = load_cache(new.CACHE_PATH)
    return Context(
        settings=new,
        cache=cache,
        cache_path=new.CACHE_PATH,
        _loaded_entries=len(cache.entries),
    )
