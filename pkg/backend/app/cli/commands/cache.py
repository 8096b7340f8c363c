import argparse
from pathlib import Path
from typing import Any

from app.cache import cache_merge, save_cache
from app.cli.deps import Context, add_command
from app.models import MapCache


def register(subparsers: Any) -> None:
    parser = add_command(subparsers, "cache", "Inspect or merge map-count caches.")
    actions = parser.add_subparsers(dest="cache_action", required=True)
    merge = add_command(actions, "merge", "Merge cache files into --cache (or stdout).")
    merge.add_argument("paths", type=Path, nargs="+", metavar="PATH")
    merge.set_defaults(handler=run_merge)
    show = add_command(actions, "show", "Print the cache named by --cache.")
    show.set_defaults(handler=run_show)


def run_merge(args: argparse.Namespace, ctx: Context) -> MapCache | dict[str, Any]:
    merged = cache_merge(args.paths)
    if ctx.cache_path is None:
        return merged
    save_cache(merged, ctx.cache_path)
    # the merged document replaces whatever --cache held
    ctx.cache = None
    return {
        "path": str(ctx.cache_path),
        "sources": [str(path) for path in args.paths],
        "entries": len(merged.entries),
    }


def run_show(_args: argparse.Namespace, ctx: Context) -> MapCache:
    if ctx.cache is None:
        raise ValueError("cache show needs --cache PATH")
    return MapCache(
        version=ctx.cache.version,
        entries={key: ctx.cache.entries[key] for key in sorted(ctx.cache.entries)},
    )
