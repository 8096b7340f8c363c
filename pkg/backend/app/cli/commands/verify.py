"""``verify SUITE``: every residual check the library knows, as one report each."""

import argparse
import itertools
import logging
from collections.abc import Callable, Iterator
from typing import Any

from sympy.utilities.iterables import partitions

from app.cli.deps import (
    Context,
    add_command,
    index_list,
    nonnegative_int,
    positive_int,
    rational_list,
)
from app.gue.closed_forms import catalan_onepoint, check_dilation, genus0_twopoint
from app.gue.free_energy import (
    assemble_gue_free_energy,
    gue_partition_function,
    verify_gue_pdes,
)
from app.gue.wick import WickOracle, vertex_count
from app.kdv.flows import default_depth, verify_witten_kdv
from app.kdv.pdo import lax_sqrt, verify_lax_sqrt
from app.limits.identities import (
    eq56_residual,
    limit_of_identity_demo,
    pre_identity_residual,
)
from app.models import LimitDemoReport, ResidualReport
from app.residuals import ResidualTally
from app.toda.gue_solution import (
    verify_initial_data,
    verify_tau_identities,
    verify_toda_on_gue,
)
from app.toda.lattice import check_flow_commutativity
from app.toda.resolvent import resolvent, resolvent_residuals
from app.toda.specialized import resolvent_map_count
from app.toda.sseries import SSeries
from app.volterra.even import (
    MAX_VOLTERRA_FLOW,
    verify_feg_identities,
    verify_feg_rederivation,
    verify_odd_vanishing,
    verify_volterra,
    verify_volterra_hierarchy,
)
from app.witten.correlators import verify_equivkdv0, verify_string_dilaton
from app.witten.free_energy import verify_bilinear
from app.witten.npoint import is_stable, lx_crosscheck, verify_stringQ

logger = logging.getLogger(__name__)

Suite = Callable[[argparse.Namespace, Context], ResidualReport | LimitDemoReport]


def register(subparsers: Any) -> None:
    parser = add_command(subparsers, "verify", "Run one verification suite.")
    parser.add_argument("suite", choices=sorted(SUITES))
    parser.add_argument("--h", type=nonnegative_int, default=1, help="largest genus shift h")
    parser.add_argument("--n", type=nonnegative_int, default=2, help="largest insertion count")
    parser.add_argument("--jmax", type=positive_int, default=3)
    parser.add_argument("--j", type=positive_int, default=None, help="one Volterra flow")
    parser.add_argument("--d", type=positive_int, default=1, help="KdV flow index")
    parser.add_argument("--degree", type=positive_int, default=None)
    parser.add_argument("--genus", type=nonnegative_int, default=None)
    parser.add_argument("--order", type=nonnegative_int, default=None, help="epsilon order")
    parser.add_argument("--weight", type=positive_int, default=None, help="largest |i|")
    parser.add_argument("--count", type=positive_int, default=3, help="largest coupling count")
    parser.add_argument("--depth", type=positive_int, default=12, help="resolvent depth")
    parser.add_argument("--pair-max", type=positive_int, default=5)
    parser.add_argument("--x", type=rational_list, default=[1], metavar="LIST")
    parser.add_argument("--kappa-list", type=index_list, default=[8, 16, 32], metavar="LIST")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, ctx: Context) -> ResidualReport | LimitDemoReport:
    logger.info("Running verification suite %s", args.suite)
    return SUITES[args.suite](args, ctx)


# ---------------------------------------------------------------------------
# Argument defaults
# ---------------------------------------------------------------------------


def _order(args: argparse.Namespace, ctx: Context) -> int:
    return ctx.settings.EPS_ORDER if args.order is None else args.order


def _weight(args: argparse.Namespace, ctx: Context) -> int:
    return ctx.settings.I_MAX if args.weight is None else args.weight


def _genus(args: argparse.Namespace, ctx: Context) -> int:
    return ctx.settings.G_MAX if args.genus is None else args.genus


def _degree(args: argparse.Namespace, ctx: Context) -> int:
    return ctx.settings.KDV_DEGREE if args.degree is None else args.degree


def _free_energy(args: argparse.Namespace, ctx: Context, *, even: bool = False) -> SSeries:
    order = _order(args, ctx)
    # the s-free part is exact to ε^{2G−1}
    head_genus = max(_genus(args, ctx), (order + 2) // 2)
    return assemble_gue_free_energy(
        head_genus,
        args.count,
        _weight(args, ctx),
        order,
        counts=ctx.map_count,
        even=even,
    )


def _index_sets(total: int) -> Iterator[tuple[int, ...]]:
    """Every multiset of positive integers summing to ``total``."""
    if total == 0:
        yield ()
        return
    for parts in partitions(total):
        yield tuple(sorted(itertools.chain.from_iterable([k] * m for k, m in parts.items())))


def _j_vectors(n_max: int, jmax: int, n_min: int = 0) -> Iterator[tuple[int, ...]]:
    for n in range(n_min, n_max + 1):
        yield from itertools.combinations_with_replacement(range(1, jmax + 1), n)


def _label(**values: Any) -> str:
    return ";".join(
        f"{k}={','.join(map(str, v)) if isinstance(v, tuple) else v}"
        for k, v in values.items()
    )


# ---------------------------------------------------------------------------
# GUE
# ---------------------------------------------------------------------------


def closed_forms(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    oracle = WickOracle(cache=ctx.cache)
    tally = ResidualTally("closed-forms", jmax=args.jmax)
    for j in range(1, args.jmax + 1):
        residual = oracle.map_count(0, (2 * j,)) - catalan_onepoint(j)
        tally.value("catalan", _label(j=j), residual)
    for total in range(1, args.jmax + 1):
        for j1 in range(1, total):
            j2 = total - j1
            even = oracle.map_count(0, (2 * j1, 2 * j2)) - genus0_twopoint(j1, j2, "even")
            tally.value("two-point even", _label(j=(j1, j2)), even)
            odd = oracle.map_count(0, (2 * j1 - 1, 2 * j2 - 1)) - genus0_twopoint(
                j1, j2, "odd"
            )
            tally.value("two-point odd", _label(j=(j1, j2)), odd)
    return tally.report()


def dilation(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    weight = _weight(args, ctx)
    oracle = WickOracle(cache=ctx.cache)
    tally = ResidualTally("dilation", max_weight=weight)
    for total in range(0, weight - 1, 2):
        for key in _index_sets(total):
            g = 0
            while vertex_count(g, (2, *key)) >= 1:
                tally.value(
                    "dilation", _label(g=g, i=key), check_dilation(g, key, oracle.map_count)
                )
                g += 1
    return tally.report()


def gue_pdes(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    partition = gue_partition_function(_free_energy(args, ctx))
    return verify_gue_pdes(partition)


# ---------------------------------------------------------------------------
# Toda
# ---------------------------------------------------------------------------


def resolvent_suite(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    report = resolvent_residuals(resolvent(args.depth))
    genus = _genus(args, ctx)
    weight = _weight(args, ctx)
    oracle = WickOracle(cache=ctx.cache)
    tally = ResidualTally("resolvent-counts", genus=genus, max_weight=weight)
    for i in range(2, weight + 1, 2):
        for g in range(genus + 1):
            residual = resolvent_map_count(g, (i,)) - oracle.map_count(g, (i,))
            tally.value("one-point", _label(g=g, i=(i,)), residual)
    for total in range(2, weight + 1, 2):
        for i in range(1, total // 2 + 1):
            key = (i, total - i)
            for g in range(genus + 1):
                residual = resolvent_map_count(g, key) - oracle.map_count(g, key)
                tally.value("two-point", _label(g=g, i=key), residual)
    report.absorb(tally.report())
    return report


def toda(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    report = verify_toda_on_gue(_free_energy(args, ctx), _order(args, ctx))
    report.absorb(check_flow_commutativity(1, 2))
    return report


def tau(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    return verify_tau_identities(
        _free_energy(args, ctx), _order(args, ctx), pair_max=args.pair_max
    )


def initial_data(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    return verify_initial_data(_free_energy(args, ctx), _order(args, ctx))


# ---------------------------------------------------------------------------
# Volterra
# ---------------------------------------------------------------------------


def volterra(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    return verify_volterra(_free_energy(args, ctx, even=True), _order(args, ctx))


def volterra_hierarchy(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    even_energy = _free_energy(args, ctx, even=True)
    flows = [args.j] if args.j is not None else range(1, MAX_VOLTERRA_FLOW + 1)
    report = ResidualReport(suite="volterra-hierarchy", params={"order": _order(args, ctx)})
    for j in flows:
        report.absorb(verify_volterra_hierarchy(j, even_energy, _order(args, ctx)))
    return report


def feg(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    order = _order(args, ctx)
    free_energy = _free_energy(args, ctx)
    even_energy = _free_energy(args, ctx, even=True)
    report = verify_feg_identities(
        even_energy, order, h_max=args.h, free_energy=free_energy
    )
    report.absorb(verify_feg_rederivation(even_energy, order))
    report.absorb(verify_odd_vanishing(free_energy, order))
    return report


# ---------------------------------------------------------------------------
# KdV and Witten
# ---------------------------------------------------------------------------


def kdv(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    report = verify_witten_kdv(args.d, _degree(args, ctx), _genus(args, ctx))
    report.absorb(verify_lax_sqrt(lax_sqrt(default_depth(args.d))))
    return report


def bilinear(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    return verify_bilinear(_degree(args, ctx), _genus(args, ctx))


def string_dilaton(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    return verify_string_dilaton(_genus(args, ctx), ctx.settings.N_MAX)


def stringq(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    genus, n_max = _genus(args, ctx), ctx.settings.N_MAX
    tally = ResidualTally("stringq", g_max=genus, n_max=n_max)
    for g in range(genus + 1):
        for n in range(1, n_max):
            for s in range(1, n_max - n + 1):
                if is_stable(g, n + s):
                    tally.symbolic("stringQ", _label(g=g, n=n, s=s), verify_stringQ(g, n, s))
    return tally.report()


def liu_xu(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    genus, n_max = _genus(args, ctx), ctx.settings.N_MAX
    tally = ResidualTally("liu-xu", g_max=genus, n_max=n_max)
    for g in range(genus + 1):
        for n in range(1, n_max + 1):
            if is_stable(g, n):
                tally.symbolic("recursion", _label(g=g, n=n), lx_crosscheck(g, n))
    return tally.report()


def equivkdv0(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    return verify_equivkdv0(_genus(args, ctx), args.n)


# ---------------------------------------------------------------------------
# Central identities
# ---------------------------------------------------------------------------


def preidentity(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    tally = ResidualTally("preidentity", h=args.h, n=args.n, jmax=args.jmax)
    for j in _j_vectors(args.n, args.jmax):
        for h in range(args.h + 1):
            residual = pre_identity_residual(h, len(j), j, ctx.map_count)
            tally.value("pre-identity", _label(h=h, j=j), residual)
    return tally.report()


def eq56(args: argparse.Namespace, ctx: Context) -> ResidualReport:
    tally = ResidualTally("eq56", h=args.h, n=args.n, jmax=args.jmax)
    for j in _j_vectors(args.n, args.jmax, n_min=1):
        for h in range(args.h + 1):
            tally.value("block form", _label(h=h, j=j), eq56_residual(h, len(j), j, ctx.map_count))
    return tally.report()


def limit_demo(args: argparse.Namespace, ctx: Context) -> LimitDemoReport:
    return limit_of_identity_demo(args.h, args.x, args.kappa_list, ctx.map_count)


SUITES: dict[str, Suite] = {
    "closed-forms": closed_forms,
    "dilation": dilation,
    "gue-pdes": gue_pdes,
    "resolvent": resolvent_suite,
    "toda": toda,
    "tau": tau,
    "initial-data": initial_data,
    "volterra": volterra,
    "volterra-hierarchy": volterra_hierarchy,
    "feg": feg,
    "kdv": kdv,
    "bilinear": bilinear,
    "string-dilaton": string_dilaton,
    "stringq": stringq,
    "liu-xu": liu_xu,
    "equivkdv0": equivkdv0,
    "preidentity": preidentity,
    "eq56": eq56,
    "limit-demo": limit_demo,
}
