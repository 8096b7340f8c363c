import argparse
from typing import Any

from app.cli.deps import Context, add_command, degree_list, nonnegative_int
from app.exact.rational import rat_str
from app.witten.correlators import canonical_key, intersection_number, key_label


def register(subparsers: Any) -> None:
    parser = add_command(subparsers, "witten", "Intersection number <tau_d1 ... tau_dn>_g.")
    parser.add_argument("--g", type=nonnegative_int, required=True)
    parser.add_argument("--d", type=degree_list, required=True, metavar="LIST")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, _ctx: Context) -> dict[str, Any]:
    key = canonical_key(args.d)
    return {
        "g": args.g,
        "d": list(key),
        "label": key_label(args.g, key),
        "value": rat_str(intersection_number(args.g, key)),
    }
