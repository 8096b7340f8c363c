import argparse
from typing import Any

from app.cli.deps import Context, add_command, index_list, nonnegative_int, rational_list
from app.limits.okounkov import okounkov_convergence_report
from app.models import ConvergenceReport


def register(subparsers: Any) -> None:
    parser = add_command(
        subparsers, "limit", "Scaled map counts against the n-point function at growing kappa."
    )
    parser.add_argument("--g", type=nonnegative_int, required=True)
    parser.add_argument("--x", type=rational_list, required=True, metavar="LIST")
    parser.add_argument("--kappa-list", type=index_list, required=True, metavar="LIST")
    parser.add_argument("--parity", choices=("even", "odd"), default="even")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, ctx: Context) -> ConvergenceReport:
    return okounkov_convergence_report(
        args.g, args.x, args.kappa_list, parity=args.parity, cache=ctx.cache
    )
