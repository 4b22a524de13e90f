"""
paper-check: reproduce every desk-scale statement about weak d-congruence
Each statement is one claim; the command exits 0 only when none fails
"""

import argparse
import logging
import random
from math import gcd
from typing import List, Optional

from commands.distinguish import compare
from core.burnside import (FiniteGroupTable, GroupKind, abelian_burnside, burnside_obstruction,
                           cyclic_group, make_certificate, verify_certificate, BurnsideCertificate)
from core.catalog import catalog, montesinos_rank, standard_borromean
from core.cup import (TrilinearFormZd, FormIsoWitness, form_from_split_presentation, forms_equivalent,
                      lens_form, reduce_form, unreduced_discrepancy, discrepancy_table)
from core.errors import InvalidGroupError, InvalidPresentationError, NoCertificateError
from core.goeritz import dbc_homology, determinant, is_homology_sphere
from core.links import (BraidWord, apply_d_move, braid_closure, relabel_components, reverse_component,
                        unlink)
from core.milnor import milnor_triple
from core.surgery import (SurgeryCoefficient, SurgeryPresentation, apply_surgery, homology_order, homology_zd,
                          is_type_d, is_weak_type_d, type_d_move, weak_move)
from core.verdict import DISTINGUISHED as VERDICT_DISTINGUISHED, INCONCLUSIVE as VERDICT_INCONCLUSIVE
from core.zmod import IntMatrix, ZdModuleStructure, smith_normal_form
from utils.guards import guard_invariant
from utils.validation import parse_d_range, validate_budget, validate_skips
from views.report import FAIL, PASS, Claim, Report, check

logger = logging.getLogger(__name__)

SEED = 20240229
CUP_RANGE = list(range(2, 8))
BURNSIDE_RANGE = list(range(2, 13))
LENS_CASES = [(2, 1, 1), (4, 1, 1), (6, 1, 5), (6, 2, 5)]
HOPF_CASES = [(2, 1, 1), (3, 1, 2), (4, 1, 3), (5, 2, 3), (6, 1, 5)]
SURGERY_TRIALS = 1000
D_MOVE_TRIALS = 200
MONTESINOS_TRIALS = 60


# --- T^3 against #^3 S^1 x S^2 ---

@guard_invariant()
def t3_cup_obstruction(claim_id: str, d: int, budget: Optional[int]) -> Claim:
    """Decided by the zero-form fast path at every d; no GL search runs."""
    sub = Report("distinguish")
    verdict = compare(sub, catalog("T3"), catalog("SumS1xS2(3)"), d, {"homology", "burnside"}, budget)
    cup = sub.claims[0]
    expected = VERDICT_DISTINGUISHED if d > 2 else VERDICT_INCONCLUSIVE
    return check(claim_id, verdict == expected and cup.status == expected,
                 {"d": d, "expected": expected, "cup_form": cup.status},
                 f"cup-form {cup.status}, expected {expected}")


@guard_invariant()
def t3_burnside_obstruction(claim_id: str, d: int) -> Claim:
    free3, z3 = GroupKind.free(3), GroupKind.abelian((0, 0, 0))
    verdict = burnside_obstruction(z3, free3, d)
    if d <= 2:
        try:
            make_certificate(d, 3)
            refused = False
        except NoCertificateError:
            refused = True
        return check(claim_id, refused and verdict.status == VERDICT_INCONCLUSIVE,
                     {"d": d, "certificate_refused": refused, "obstruction": verdict.status})
    certificate = make_certificate(d, 3)
    quotient = abelian_burnside([0, 0, 0], d)
    ok = (verify_certificate(certificate)
          and quotient == ZdModuleStructure.free(3, d)
          and verdict.status == VERDICT_DISTINGUISHED)
    return check(claim_id, ok, {
        "d": d,
        "group": certificate.group.name,
        "order": certificate.group.order,
        "abelian_quotient": str(quotient),
        "obstruction": verdict.status,
    })


# --- lens spaces ---

@guard_invariant()
def lens_discrepancy(claim_id: str, d: int, s: int, q: int) -> Claim:
    form = lens_form(d, s, q)
    zero = TrilinearFormZd.zero(d, 1)
    witness = FormIsoWitness(IntMatrix.identity(1), d)
    values = unreduced_discrepancy(zero, form, witness)
    table = discrepancy_table(zero, form, witness)
    ok = (form.value(0, 0, 0) == d // 2
          and reduce_form(form) == reduce_form(zero)
          and values == {0, d // 2}
          and table[(0, 0, 0)] == d // 2)
    return check(claim_id, ok, {"value": form.value(0, 0, 0), "discrepancy": sorted(values)})


@guard_invariant()
def hopf_to_lens(claim_id: str) -> Claim:
    """S^1 x S^2 → L(ds, q) by one weak move linking the 0-framed unknot once."""
    base = catalog("S1xS2")
    rows = []
    ok = True
    for d, s, q in HOPF_CASES:
        lens = apply_surgery(base, weak_move(d, s, q, [1]))
        before, after = homology_zd(base, d), homology_zd(lens, d)
        target = homology_zd(catalog(f"Lens({d * s},{q})"), d)
        good = (before == after == target == ZdModuleStructure.free(1, d)
                and homology_order(base) == 0 and homology_order(lens) == d * s)
        ok = ok and good
        rows.append({"d": d, "s": s, "q": q, "z_d": str(after), "order": homology_order(lens)})
    return check(claim_id, ok, {"cases": rows})


@guard_invariant()
def two_fifths_weak(claim_id: str) -> Claim:
    """±2/5 surgeries are weak type-5 moves but not type-5 moves."""
    ok = True
    for p in (2, -2):
        c = SurgeryCoefficient.of(p, 5)
        ok = ok and is_weak_type_d(c, 5) and not is_type_d(c, 5)
        weak_move(5, 1, p)
        try:
            type_d_move(5, 1, p)
            ok = False
        except InvalidPresentationError:
            pass
    return check(claim_id, ok, {"coefficients": ["2/5", "-2/5"]})


# --- surgery invariance ---

def random_presentation(rng: random.Random, n: int) -> SurgeryPresentation:
    coeffs = []
    for _ in range(n):
        q = rng.randint(1, 4)
        p = rng.randint(-12, 12)
        while gcd(p, q) != 1:
            p = rng.randint(-12, 12)
        coeffs.append(SurgeryCoefficient(p, q))
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = rng.randint(-3, 3)
    return SurgeryPresentation(tuple(coeffs), IntMatrix.from_rows(rows, cols=n))


def random_weak_move(rng: random.Random, n: int, d: int):
    s = rng.randint(1, 3)
    q = rng.randint(-25, 25)
    while gcd(q, d * s) != 1:
        q = rng.randint(-25, 25)
    return weak_move(d, s, q, [rng.randint(-3, 3) for _ in range(n)])


@guard_invariant()
def weak_surgery_invariance(claim_id: str, trials: int = SURGERY_TRIALS, seed: int = SEED) -> Claim:
    rng = random.Random(seed)
    failures = []
    for t in range(trials):
        d = rng.randint(2, 7)
        P = random_presentation(rng, rng.randint(0, 4))
        m = random_weak_move(rng, P.n, d)
        if homology_zd(P, d) != homology_zd(apply_surgery(P, m), d):
            failures.append(t)
    return check(claim_id, not failures, {"trials": trials, "failures": failures[:10]})


# --- Milnor and the T^3 form ---

@guard_invariant()
def milnor_borromean(claim_id: str) -> Claim:
    B = standard_borromean()
    value = milnor_triple(B)
    ok = (abs(value) == 1
          and milnor_triple(relabel_components(B, [1, 2, 0])) == value
          and milnor_triple(relabel_components(B, [1, 0, 2])) == -value
          and milnor_triple(reverse_component(B, 1)) == -value
          and milnor_triple(unlink(3)) == 0
          and catalog("T3").triple_map().get((0, 1, 2)) == value)
    return check(claim_id, ok, {"value": value})


@guard_invariant()
def t3_form_nonzero(claim_id: str, d: int, budget: Optional[int], use_fast_path: bool) -> Claim:
    form = form_from_split_presentation(catalog("T3"), d)
    zero = form_from_split_presentation(catalog("SumS1xS2(3)"), d)
    witness = forms_equivalent(form, zero, budget, use_fast_path)
    return check(claim_id, not form.is_zero and zero.is_zero and witness is None,
                 {"d": d, "value_123": form.value(0, 1, 2), "exhaustive": not use_fast_path})


# --- double branched covers ---

@guard_invariant()
def homology_spheres(claim_id: str) -> Claim:
    rows = {}
    ok = True
    for name in ("Poincare", "Sigma237"):
        ref = catalog(name)
        det = determinant(ref)
        trivial = dbc_homology(ref, 5).is_trivial
        ok = ok and det == 1 and trivial and is_homology_sphere(ref)
        rows[name] = {"determinant": det, "z5_trivial": trivial}
    return check(claim_id, ok, rows)


@guard_invariant()
def unlink_dbc(claim_id: str, c: int) -> Claim:
    structure = dbc_homology(unlink(c), 5)
    return check(claim_id, structure == ZdModuleStructure.free(c - 1, 5), {"structure": str(structure)})


def random_braid(rng: random.Random, strands: int, length: int) -> BraidWord:
    word = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(length)]
    return BraidWord(strands, tuple(word))


@guard_invariant()
def d_move_shadow(claim_id: str, trials: int = D_MOVE_TRIALS, seed: int = SEED) -> Claim:
    rng = random.Random(seed)
    failures = []
    for t in range(trials):
        d = rng.choice([3, 5])
        b = random_braid(rng, rng.randint(2, 4), rng.randint(0, 8))
        moved = apply_d_move(b, rng.randint(0, len(b.word)), rng.randint(1, b.strands - 1), rng.choice([1, -1]), d)
        if dbc_homology(braid_closure(b), d) != dbc_homology(braid_closure(moved), d):
            failures.append(t)
    dets = {d: determinant(braid_closure(BraidWord(2, (1,) * d))) for d in (3, 5)}
    ok = not failures and all(dets[d] == d for d in dets)
    return check(claim_id, ok, {"trials": trials, "failures": failures[:10], "determinants": dets})


@guard_invariant()
def montesinos_z2(claim_id: str, trials: int = MONTESINOS_TRIALS, seed: int = SEED) -> Claim:
    rng = random.Random(seed + 1)
    failures = []
    for t in range(trials):
        L = braid_closure(random_braid(rng, rng.randint(2, 4), rng.randint(0, 8)))
        if dbc_homology(L, 2) != montesinos_rank(L.n_components):
            failures.append(t)
    return check(claim_id, not failures, {"trials": trials, "failures": failures[:10]})


# --- property suites ---

@guard_invariant()
def property_snf(claim_id: str, trials: int = 100, seed: int = SEED) -> Claim:
    rng = random.Random(seed)
    for _ in range(trials):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        A = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)], cols=n)
        form = smith_normal_form(A)
        if form.U @ A @ form.V != form.D:
            return check(claim_id, False, {"matrix": A.to_rows(), "problem": "UAV != D"})
        diagonal = form.diagonal
        for a, b in zip(diagonal, diagonal[1:]):
            if (a == 0 and b != 0) or (a and b % a):
                return check(claim_id, False, {"matrix": A.to_rows(), "problem": "not a divisor chain"})
    return check(claim_id, True, {"trials": trials})


@guard_invariant()
def property_forms(claim_id: str) -> Claim:
    """forms_equivalent is reflexive, symmetric and transitive on a small pool at d = 3."""
    d = 3
    pool = [
        TrilinearFormZd.zero(d, 3),
        TrilinearFormZd.from_entries(d, 3, {(0, 1, 2): 1}),
        TrilinearFormZd.from_entries(d, 3, {(0, 1, 2): 2}),
        TrilinearFormZd.from_entries(d, 3, {(1, 0, 2): 1}),
    ]
    for t in pool:
        w = forms_equivalent(t, t)
        if w is None or not w.verifies(t, t):
            return check(claim_id, False, {"problem": "not reflexive"})
    for a in pool:
        for b in pool:
            w = forms_equivalent(a, b)
            back = forms_equivalent(b, a)
            if (w is None) != (back is None):
                return check(claim_id, False, {"problem": "not symmetric"})
            if w is not None and not w.verifies(a, b):
                return check(claim_id, False, {"problem": "witness fails"})
            for c in pool:
                w2 = forms_equivalent(b, c)
                if w is not None and w2 is not None:
                    composite = FormIsoWitness(w2.matrix @ w.matrix, d)
                    if not composite.verifies(a, c):
                        return check(claim_id, False, {"problem": "not transitive"})
    return check(claim_id, True, {"pool": len(pool)})


@guard_invariant()
def property_certificates(claim_id: str) -> Claim:
    """The verifier rejects commuting images, wrong exponents and non-group tables."""
    abelian = BurnsideCertificate(3, 2, cyclic_group(3), (1, 2))
    heis = make_certificate(3, 2)
    wrong_exponent = BurnsideCertificate(5, 2, heis.group, heis.images)
    try:
        FiniteGroupTable([[0, 1, 2], [1, 1, 0], [2, 0, 1]])
        bad_table_rejected = False
    except InvalidGroupError:
        bad_table_rejected = True
    ok = (not verify_certificate(abelian)
          and not verify_certificate(wrong_exponent)
          and bad_table_rejected
          and verify_certificate(heis))
    return check(claim_id, ok, {"bad_table_rejected": bad_table_rejected})


def run_paper_check(args: argparse.Namespace) -> Report:
    skips = validate_skips(args.skip)
    budget = validate_budget(args.budget)
    use_fast_path = "fast-path" not in skips
    cup_range = burnside_range = None
    if args.d_range:
        cup_range = burnside_range = parse_d_range(args.d_range)
    report = Report("paper-check")

    if "cup-form" not in skips:
        for d in cup_range or CUP_RANGE:
            report.add(t3_cup_obstruction(f"theorem1-cup[d={d}]", d, budget))
    if "burnside" not in skips:
        for d in burnside_range or BURNSIDE_RANGE:
            report.add(t3_burnside_obstruction(f"theorem1-burnside[d={d}]", d))
    if "cup-form" not in skips:
        for d, s, q in LENS_CASES:
            report.add(lens_discrepancy(f"lens-discrepancy[{d},{s},{q}]", d, s, q))
    if "surgery" not in skips:
        report.add(weak_surgery_invariance("weak-surgery-invariance"))
        report.add(hopf_to_lens("hopf-to-lens"))
        report.add(two_fifths_weak("two-fifths-weak"))
    if "milnor" not in skips:
        report.add(milnor_borromean("milnor-borromean"))
    if "cup-form" not in skips:
        for d in (3, 5):
            report.add(t3_form_nonzero(f"t3-form-nonzero[d={d}]", d, budget, use_fast_path))
    if "dbc" not in skips:
        report.add(homology_spheres("homology-spheres"))
        for c in (1, 2, 3):
            report.add(unlink_dbc(f"unlink-dbc[c={c}]", c))
        report.add(d_move_shadow("d-move-shadow"))
        report.add(montesinos_z2("montesinos-z2"))
    if "properties" not in skips:
        report.add(property_snf("property-snf"))
        report.add(property_forms("property-forms-equivalence"))
        report.add(property_certificates("property-certificates"))

    failed: List[str] = [c.id for c in report.claims if c.failed]
    report.verdict = FAIL if failed else PASS
    if failed:
        logger.error(f"❌ {len(failed)} claim(s) failed: {', '.join(failed)}")
    else:
        logger.info(f"✅ All {len(report.claims)} claims hold")
    return report


def setup_paper_check_command(subparsers, parent: argparse.ArgumentParser):
    parser = subparsers.add_parser(
        "paper-check",
        parents=[parent],
        help="reproduce every desk-scale claim",
        description="Run the full suite of reproducible statements, one claim per line.",
    )
    parser.add_argument("--d-range", help="range a..b for the per-d cup-form and Burnside claims")
    parser.add_argument("--skip", action="append", default=[],
                        help="skip cup-form, burnside, surgery, milnor, dbc, properties or fast-path")
    parser.set_defaults(handler=run_paper_check)
