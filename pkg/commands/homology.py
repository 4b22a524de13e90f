"""
homology: H_1(M; Z_d) of a surgery presentation or a double branched cover
"""

import argparse
import logging

from commands import as_manifold, load
from core.goeritz import dbc_homology
from core.links import DBCReference
from core.surgery import first_homology, homology_zd
from utils.validation import validate_modulus
from views.report import PASS, Claim, Report

logger = logging.getLogger(__name__)


def run_homology(args: argparse.Namespace) -> Report:
    d = validate_modulus(args.d)
    report = Report("homology")
    manifold = as_manifold(load(report, args.input))

    if isinstance(manifold, DBCReference):
        structure = dbc_homology(manifold, d)
        payload = {"d": d, "source": "double branched cover", "structure": structure.to_dict()}
    else:
        structure = homology_zd(manifold, d)
        integral = first_homology(manifold)
        payload = {
            "d": d,
            "source": "surgery",
            "structure": structure.to_dict(),
            "integral_factors": list(integral),
        }
        if manifold.triple_dropped:
            payload["triple_dropped"] = True

    logger.info(f"H_1({manifold}; Z_{d}) = {structure}")
    report.add(Claim(f"homology[d={d}]", PASS, payload, str(structure)))
    return report


def setup_homology_command(subparsers, parent: argparse.ArgumentParser):
    parser = subparsers.add_parser(
        "homology",
        parents=[parent],
        help="H_1(M; Z_d) as a Z_d-module",
        description="Print H_1(M; Z_d) for a surgery presentation, a catalog manifold or the "
                    "double branched cover of a link.",
    )
    parser.add_argument("input", help="JSON file or catalog:<name>")
    parser.add_argument("--d", type=int, required=True, help="coefficient modulus d >= 2")
    parser.set_defaults(handler=run_homology)
