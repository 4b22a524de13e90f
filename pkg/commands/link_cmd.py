"""
link: components, linking numbers, determinant and μ̄(123) of a link diagram
"""

import argparse
import logging

from commands import as_link, load
from core.errors import InvalidDiagramError
from core.goeritz import dbc_homology, determinant
from core.links import linking_matrix
from core.milnor import milnor_triple
from utils.guards import guard_invariant
from utils.validation import validate_modulus, validate_skips
from views.report import INCONCLUSIVE, PASS, Claim, Report

logger = logging.getLogger(__name__)


@guard_invariant(inconclusive_on=(InvalidDiagramError,))
def milnor_claim(claim_id: str, L) -> Claim:
    value = milnor_triple(L)
    return Claim(claim_id, PASS, {"value": value}, str(value))


def run_link(args: argparse.Namespace) -> Report:
    skips = validate_skips(args.skip)
    report = Report("link")
    L = as_link(load(report, args.input))

    matrix = linking_matrix(L)
    report.add(Claim("components", PASS, {
        "count": L.n_components,
        "crossings": L.n_crossings,
        "linking_matrix": matrix,
    }, f"{L.n_components} component(s), {L.n_crossings} crossing(s)"))

    if "dbc" not in skips:
        det = determinant(L)
        report.add(Claim("determinant", PASS, {"value": det}, str(det)))
        if args.d is not None:
            d = validate_modulus(args.d)
            structure = dbc_homology(L, d)
            report.add(Claim(f"dbc-homology[d={d}]", PASS, structure.to_dict(), str(structure)))

    if "milnor" not in skips:
        split = all(x == 0 for row in matrix for x in row)
        if L.n_components == 3 and split:
            report.add(milnor_claim("milnor-triple", L))
        else:
            reason = "μ̄(123) needs three components with zero linking numbers"
            report.add(Claim("milnor-triple", INCONCLUSIVE, {"reason": reason}, reason))
    return report


def setup_link_command(subparsers, parent: argparse.ArgumentParser):
    parser = subparsers.add_parser(
        "link",
        parents=[parent],
        help="link diagram invariants",
        description="Component count, linking matrix, determinant, double branched cover homology "
                    "and Milnor's μ̄(123) for a PD code, braid or catalog link.",
    )
    parser.add_argument("input", help="PD/braid JSON file or catalog:<name>")
    parser.add_argument("--d", type=int, default=None, help="also print H_1(Σ_2(L); Z_d)")
    parser.add_argument("--skip", action="append", default=[], help="skip milnor or dbc (repeatable)")
    parser.set_defaults(handler=run_link)
