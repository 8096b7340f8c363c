import argparse
from typing import Any

from app.cli.deps import Context, add_command, index_list, nonnegative_int
from app.gue.wick import WickOracle, canonical
from app.limits.backends import ORACLE, RESOLVENT, map_count_backend
from app.toda.specialized import resolvent_map_count


def register(subparsers: Any) -> None:
    parser = add_command(subparsers, "map", "Count genus-g maps with vertex degrees i.")
    parser.add_argument("--g", type=nonnegative_int, required=True)
    parser.add_argument("--i", type=index_list, required=True, metavar="LIST")
    parser.add_argument(
        "--backend", choices=("auto", ORACLE, RESOLVENT), default="auto"
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, ctx: Context) -> dict[str, Any]:
    if args.backend == ORACLE:
        value, backend = WickOracle(cache=ctx.cache).map_count(args.g, args.i), ORACLE
    elif args.backend == RESOLVENT:
        value, backend = resolvent_map_count(args.g, args.i, ctx.cache), RESOLVENT
    else:
        value, backend = map_count_backend(args.g, args.i, ctx.cache)
    return {
        "g": args.g,
        "indices": list(canonical(args.i)),
        "value": str(value),
        "backend": backend,
    }
