import argparse
from typing import Any

from app.cli.deps import Context, add_command, nonnegative_int, positive_int
from app.witten.npoint import q_polynomial


def register(subparsers: Any) -> None:
    parser = add_command(subparsers, "qpoly", "The genus-g n-point function Q_g(x_1..x_n).")
    parser.add_argument("--g", type=nonnegative_int, required=True)
    parser.add_argument("--n", type=positive_int, required=True)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, _ctx: Context) -> dict[str, Any]:
    poly = q_polynomial(args.g, args.n)
    return {"g": args.g, "n": args.n, "degree": poly.degree, "polynomial": poly.to_json()}
