"""
distinguish: run every preserved invariant on two manifolds at a fixed d
"""

import argparse
import logging
from typing import Optional

from commands import Manifold, as_manifold, load
from core.burnside import burnside_obstruction
from core.cup import form_for, obstruct_weak_congruence
from core.errors import InvalidFormError
from core.goeritz import dbc_homology
from core.links import DBCReference
from core.surgery import homology_zd
from core.verdict import DISTINGUISHED, INCONCLUSIVE, CongruenceVerdict
from core.zmod import ZdModuleStructure
from utils.guards import guard_invariant
from utils.validation import validate_budget, validate_modulus, validate_skips
from views.report import Claim, Report, claim_from_verdict

logger = logging.getLogger(__name__)


def manifold_homology(M: Manifold, d: int) -> ZdModuleStructure:
    if isinstance(M, DBCReference):
        return dbc_homology(M, d)
    return homology_zd(M, d)


@guard_invariant()
def homology_claim(claim_id: str, A: Manifold, B: Manifold, d: int) -> Claim:
    """H_1(·; Z_d) is preserved by weak d-congruence."""
    hA, hB = manifold_homology(A, d), manifold_homology(B, d)
    payload = {"d": d, "a": str(hA), "b": str(hB)}
    if hA != hB:
        verdict = CongruenceVerdict(DISTINGUISHED, f"H_1(·; Z_{d}) differs: {hA} vs {hB}", "homology", payload)
    else:
        verdict = CongruenceVerdict(INCONCLUSIVE, f"H_1(·; Z_{d}) agrees: {hA}", "homology", payload)
    return claim_from_verdict(claim_id, verdict)


@guard_invariant(inconclusive_on=(InvalidFormError,))
def cup_form_claim(claim_id: str, A: Manifold, B: Manifold, d: int,
                   budget: Optional[int] = None, use_fast_path: bool = True) -> Claim:
    """Cup-product forms, compared up to change of basis (after reduction mod d/2 for even d)."""
    tA, tB = form_for(A, d), form_for(B, d)
    return claim_from_verdict(claim_id, obstruct_weak_congruence(tA, tB, d, budget, use_fast_path))


@guard_invariant()
def burnside_claim(claim_id: str, A: Manifold, B: Manifold, d: int) -> Claim:
    """Burnside quotients B(π1, d)."""
    kind_a = None if isinstance(A, DBCReference) else A.group_kind
    kind_b = None if isinstance(B, DBCReference) else B.group_kind
    return claim_from_verdict(claim_id, burnside_obstruction(kind_a, kind_b, d))


def compare(report: Report, A: Manifold, B: Manifold, d: int, skips=frozenset(),
            budget: Optional[int] = None) -> str:
    """Add one claim per invariant and return the overall verdict."""
    if "homology" not in skips:
        report.add(homology_claim("homology", A, B, d))
    if "cup-form" not in skips:
        report.add(cup_form_claim("cup-form", A, B, d, budget, "fast-path" not in skips))
    if "burnside" not in skips:
        report.add(burnside_claim("burnside", A, B, d))

    fired = [c.id for c in report.claims if c.status == DISTINGUISHED]
    if fired:
        logger.info(f"✅ {A} and {B} are not weakly {d}-congruent ({', '.join(fired)})")
        return DISTINGUISHED
    logger.info(f"⚠️ No invariant separates {A} and {B} at d = {d}")
    return INCONCLUSIVE


def run_distinguish(args: argparse.Namespace) -> Report:
    d = validate_modulus(args.d)
    skips = validate_skips(args.skip)
    budget = validate_budget(args.budget)
    report = Report("distinguish")
    A = as_manifold(load(report, args.a))
    B = as_manifold(load(report, args.b))
    report.verdict = compare(report, A, B, d, skips, budget)
    return report


def setup_distinguish_command(subparsers, parent: argparse.ArgumentParser):
    parser = subparsers.add_parser(
        "distinguish",
        parents=[parent],
        help="try to show two manifolds are not weakly d-congruent",
        description="Compare Z_d homology, cup-product forms and Burnside quotients. The verdict is "
                    "'distinguished' when any invariant differs and 'inconclusive' otherwise.",
    )
    parser.add_argument("a", help="first manifold (JSON file or catalog:<name>)")
    parser.add_argument("b", help="second manifold (JSON file or catalog:<name>)")
    parser.add_argument("--d", type=int, required=True, help="modulus d >= 2")
    parser.add_argument("--skip", action="append", default=[],
                        help="skip homology, cup-form, burnside or fast-path (repeatable)")
    parser.set_defaults(handler=run_distinguish)
