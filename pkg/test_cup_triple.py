#!/usr/bin/env python3
"""
Tests for trilinear cup-product forms and the form obstruction
"""

import random
from itertools import permutations, product

import pytest

from core.catalog import catalog
from core.cup import (FormIsoWitness, TrilinearFormZd, discrepancy_table, form_for,
                      form_from_split_presentation, forms_equivalent, lens_form,
                      obstruct_weak_congruence, reduce_form, unreduced_discrepancy)
from core.errors import BudgetExceededError, InvalidFormError
from core.surgery import SurgeryPresentation, permutation_sign
from core.verdict import DISTINGUISHED, INCONCLUSIVE
from core.zmod import IntMatrix


@pytest.fixture
def t3_form_3():
    return form_from_split_presentation(catalog("T3"), 3)


@pytest.fixture
def zero_form_3():
    return form_from_split_presentation(catalog("SumS1xS2(3)"), 3)


# --- the form itself ---

def test_sign_law_completion(t3_form_3):
    """Every permutation of (1, 2, 3) carries the sign of the permutation"""
    assert t3_form_3.value(0, 1, 2) == 1
    assert t3_form_3.value(1, 0, 2) == 2
    assert t3_form_3.value(2, 0, 1) == 1
    assert t3_form_3.value(0, 0, 1) == 0
    assert len(t3_form_3.nonzero_entries()) == 6


def test_repeated_index_values_are_two_torsion():
    with pytest.raises(InvalidFormError):
        TrilinearFormZd.from_entries(3, 2, {(0, 0, 1): 1})
    t = TrilinearFormZd.from_entries(4, 2, {(0, 0, 1): 2})
    assert t.value(0, 1, 0) == 2


def test_conflicting_entries_rejected():
    with pytest.raises(InvalidFormError):
        TrilinearFormZd.from_entries(5, 3, {(0, 1, 2): 1, (1, 0, 2): 1})
    with pytest.raises(InvalidFormError):
        TrilinearFormZd(3, 2, [0] * 7)


def _random_form(rng, d, n):
    """Random alternating form: free values on i < j < k, 2-torsion values on repeated indices"""
    entries = {}
    for idx in product(range(n), repeat=3):
        if len(set(idx)) == 3 and list(idx) == sorted(idx):
            entries[idx] = rng.randrange(d)
        elif len(set(idx)) < 3 and d % 2 == 0 and tuple(sorted(idx)) == idx:
            entries[idx] = rng.choice([0, d // 2])
    return TrilinearFormZd.from_entries(d, n, entries)


def test_alternating_law_fuzz():
    rng = random.Random(31)
    for _ in range(500):
        d, n = rng.randint(2, 9), rng.randint(2, 4)
        t = _random_form(rng, d, n)
        for idx in product(range(n), repeat=3):
            v = t.value(*idx)
            if d % 2 and len(set(idx)) < 3:
                assert v == 0
            for perm in permutations(range(3)):
                image = tuple(idx[p] for p in perm)
                assert t.value(*image) == (permutation_sign(perm) * v) % d

        # one changed value without its permuted partners breaks the law
        idx = rng.choice([i for i in product(range(n), repeat=3) if len(set(i)) > 1])
        values = list(t.values)
        values[(idx[0] * n + idx[1]) * n + idx[2]] += 1
        with pytest.raises(InvalidFormError):
            TrilinearFormZd(d, n, values)


def test_evaluate_and_transform(t3_form_3):
    assert t3_form_3.evaluate([1, 0, 0], [0, 1, 0], [0, 0, 1]) == 1
    assert t3_form_3.evaluate([1, 1, 0], [1, 1, 0], [0, 0, 1]) == 0
    assert t3_form_3.transform(IntMatrix.identity(3)) == t3_form_3
    scaled = t3_form_3.transform(IntMatrix.diagonal([2, 1, 1]))
    assert scaled.value(0, 1, 2) == 2


def test_json_round_trip(t3_form_3):
    data = t3_form_3.to_json()
    assert data["d"] == 3 and data["n"] == 3
    assert TrilinearFormZd.from_json(data) == t3_form_3
    with pytest.raises(InvalidFormError):
        TrilinearFormZd.from_json({"d": 3})


# --- construction ---

def test_form_from_split_presentation_requirements():
    with pytest.raises(InvalidFormError):
        form_from_split_presentation(SurgeryPresentation.from_parts(["0", "0"], [[0, 1], [1, 0]]), 3)
    with pytest.raises(InvalidFormError):
        form_from_split_presentation(SurgeryPresentation.from_parts(["1"], triple=()), 3)
    with pytest.raises(InvalidFormError):
        form_from_split_presentation(SurgeryPresentation.from_parts(["0"]), 3)


@pytest.mark.parametrize("d,s,q,value", [
    (2, 1, 1, 1),
    (4, 1, 1, 2),
    (6, 1, 5, 3),
    (6, 2, 5, 3),
    (3, 1, 1, 0),
    (5, 2, 3, 0),
])
def test_lens_form(d, s, q, value):
    assert lens_form(d, s, q).value(0, 0, 0) == value


def test_lens_form_rejects_non_coprime():
    with pytest.raises(InvalidFormError):
        lens_form(4, 1, 2)
    with pytest.raises(InvalidFormError):
        lens_form(4, 0, 1)


def test_form_for_recipes():
    assert form_for(catalog("T3"), 5).value(0, 1, 2) == 1
    assert form_for(catalog("Lens(4,1)"), 2) == lens_form(2, 2, 1)
    assert form_for(catalog("Lens(5,2)"), 3).n == 0
    assert form_for(catalog("Poincare"), 5).n == 0
    assert form_for(catalog("S1xS2"), 3).is_zero
    with pytest.raises(InvalidFormError):
        form_for(SurgeryPresentation.from_parts(["2", "2"], [[0, 1], [1, 0]]), 3)


def test_reduce_form():
    reduced = reduce_form(lens_form(4, 1, 1))
    assert reduced.d == 2
    assert reduced.is_zero
    with pytest.raises(InvalidFormError):
        reduce_form(lens_form(3, 1, 1))


# --- equivalence ---

def test_scaled_form_is_equivalent(t3_form_3):
    doubled = TrilinearFormZd.from_entries(3, 3, {(0, 1, 2): 2})
    witness = forms_equivalent(t3_form_3, doubled)
    assert witness is not None
    assert witness.verifies(t3_form_3, doubled)
    assert forms_equivalent(t3_form_3, t3_form_3.negated()) is not None


def test_zero_and_nonzero_forms(t3_form_3, zero_form_3):
    assert forms_equivalent(t3_form_3, zero_form_3) is None
    witness = forms_equivalent(zero_form_3, zero_form_3)
    assert witness.matrix == IntMatrix.identity(3)


def test_exhaustive_search_agrees_with_fast_path(t3_form_3, zero_form_3):
    """GL(3, Z_3) has 11232 elements; no witness maps the zero form onto T^3's"""
    assert forms_equivalent(t3_form_3, zero_form_3, use_fast_path=False) is None


@pytest.mark.slow
def test_exhaustive_search_d5():
    t3 = form_from_split_presentation(catalog("T3"), 5)
    zero = form_from_split_presentation(catalog("SumS1xS2(3)"), 5)
    assert forms_equivalent(t3, zero, use_fast_path=False) is None


def test_equivalence_edge_cases(t3_form_3):
    assert forms_equivalent(TrilinearFormZd.zero(3, 1), t3_form_3) is None
    assert forms_equivalent(TrilinearFormZd.zero(3, 0), TrilinearFormZd.zero(3, 0)) is not None
    with pytest.raises(InvalidFormError):
        forms_equivalent(t3_form_3, TrilinearFormZd.zero(5, 3))
    with pytest.raises(BudgetExceededError):
        forms_equivalent(t3_form_3, t3_form_3, budget=10, use_fast_path=False)


def test_witness_rejects_singular_matrix(t3_form_3):
    witness = FormIsoWitness(IntMatrix.diagonal([3, 1, 1]), 3)
    assert not witness.verifies(t3_form_3, t3_form_3)


# --- obstruction ---

@pytest.mark.parametrize("d", [3, 4, 5, 6, 7])
def test_t3_distinguished_from_three_handles(d):
    tA = form_for(catalog("T3"), d)
    tB = form_for(catalog("SumS1xS2(3)"), d)
    verdict = obstruct_weak_congruence(tA, tB, d)
    assert verdict.status == DISTINGUISHED
    assert verdict.invariant == "cup-form"


def test_t3_not_distinguished_at_d2():
    tA = form_for(catalog("T3"), 2)
    tB = form_for(catalog("SumS1xS2(3)"), 2)
    verdict = obstruct_weak_congruence(tA, tB, 2)
    assert verdict.status == INCONCLUSIVE
    assert verdict.payload["reduced_modulus"] == 1


def test_rank_mismatch_is_distinguished():
    verdict = obstruct_weak_congruence(lens_form(3, 1, 1), TrilinearFormZd.zero(3, 3), 3)
    assert verdict.is_distinguished


def test_orientation_reversal_is_allowed():
    a = TrilinearFormZd.from_entries(5, 3, {(0, 1, 2): 1})
    b = a.negated()
    verdict = obstruct_weak_congruence(a, b, 5)
    assert verdict.status == INCONCLUSIVE


# --- discrepancy of the unreduced forms ---

@pytest.mark.parametrize("d,s,q", [(2, 1, 1), (4, 1, 1), (6, 1, 5), (6, 2, 5)])
def test_lens_discrepancy_reaches_half_d(d, s, q):
    """ρ(t_S3) = ρ(t_L) but the unreduced forms differ by d/2"""
    zero = TrilinearFormZd.zero(d, 1)
    lens = lens_form(d, s, q)
    witness = FormIsoWitness(IntMatrix.identity(1), d)
    assert reduce_form(zero) == reduce_form(lens)
    assert unreduced_discrepancy(zero, lens, witness) == {0, d // 2}
    assert discrepancy_table(zero, lens, witness) == {(0, 0, 0): d // 2}


def test_discrepancy_needs_even_modulus():
    witness = FormIsoWitness(IntMatrix.identity(1), 3)
    with pytest.raises(InvalidFormError):
        discrepancy_table(TrilinearFormZd.zero(3, 1), lens_form(3, 1, 1), witness)


def test_obstruction_is_symmetric(t3_form_3, zero_form_3):
    rng = random.Random(41)
    pools = {
        3: [t3_form_3, zero_form_3, TrilinearFormZd.from_entries(3, 3, {(0, 1, 2): 2}), TrilinearFormZd.zero(3, 2)],
        4: [_random_form(rng, 4, 3) for _ in range(5)] + [TrilinearFormZd.zero(4, 2)],
        5: [form_from_split_presentation(catalog("T3"), 5), form_from_split_presentation(catalog("SumS1xS2(3)"), 5)],
    }
    for d, forms in pools.items():
        for a in forms:
            for b in forms:
                assert obstruct_weak_congruence(a, b, d).status == obstruct_weak_congruence(b, a, d).status
