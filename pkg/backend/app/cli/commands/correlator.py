import argparse
from typing import Any

from app.cli.deps import Context, add_command, index_list
from app.gue.wick import WickOracle, canonical, corr_to_dict


def register(subparsers: Any) -> None:
    parser = add_command(
        subparsers, "correlator", "GUE correlator <tr M^i1 ... tr M^in> as a polynomial in N."
    )
    parser.add_argument("--i", type=index_list, required=True, metavar="LIST")
    parser.add_argument("--connected", action="store_true")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, ctx: Context) -> dict[str, Any]:
    oracle = WickOracle(cache=ctx.cache)
    if args.connected:
        poly = oracle.connected_correlator(args.i)
    else:
        poly = oracle.full_correlator(args.i)
    return {
        "indices": list(canonical(args.i)),
        "connected": args.connected,
        "polynomial": {str(e): str(c) for e, c in corr_to_dict(poly).items()},
    }
