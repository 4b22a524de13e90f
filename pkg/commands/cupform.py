"""
cupform: emit the trilinear cup-product form of a manifold, or of a lens space L(ds, q)
"""

import argparse
import logging

from commands import as_manifold, load
from core.cup import form_for, lens_form, reduce_form
from core.errors import InputError
from utils.validation import validate_modulus, validate_positive
from views.report import PASS, Claim, Report

logger = logging.getLogger(__name__)

LENS = "lens"


def run_cupform(args: argparse.Namespace) -> Report:
    d = validate_modulus(args.d)
    report = Report("cupform")
    if args.input == LENS:
        s = validate_positive(args.s, "--s")
        if args.q is None:
            raise InputError("--q is required for lens spaces")
        form = lens_form(d, s, args.q)
        claim_id = f"cup-form[L({d * s},{args.q}), d={d}]"
    else:
        manifold = as_manifold(load(report, args.input))
        form = form_for(manifold, d)
        claim_id = f"cup-form[d={d}]"

    payload = {"form": form.to_json(), "zero": form.is_zero}
    if args.reduce:
        reduced = reduce_form(form)
        payload["reduced"] = reduced.to_json()
        payload["reduced_zero"] = reduced.is_zero
    logger.info(f"Form over Z_{d}: {form!r}")
    report.add(Claim(claim_id, PASS, payload, repr(form)))
    return report


def setup_cupform_command(subparsers, parent: argparse.ArgumentParser):
    parser = subparsers.add_parser(
        "cupform",
        parents=[parent],
        help="trilinear cup-product form over Z_d",
        description="Derive the form (χ1, χ2, χ3) ↦ ⟨χ1 ∪ χ2 ∪ χ3, [M]⟩ on H^1(M; Z_d). "
                    "Use 'cupform lens --d D --s S --q Q' for L(ds, q).",
    )
    parser.add_argument("input", help="JSON file, catalog:<name>, or the word 'lens'")
    parser.add_argument("--d", type=int, required=True, help="modulus d >= 2")
    parser.add_argument("--s", type=int, help="lens spaces only: L(ds, q)")
    parser.add_argument("--q", type=int, help="lens spaces only: L(ds, q)")
    parser.add_argument("--reduce", action="store_true", help="also print the reduction mod d/2 (even d)")
    parser.set_defaults(handler=run_cupform)
