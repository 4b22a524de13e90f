#!/usr/bin/env python3
"""
Tests for surgery presentations, weak d-surgery moves and the catalog
"""

import random
from math import gcd

import pytest

from core.burnside import GroupKind
from core.catalog import catalog, catalog_names
from core.errors import InputError, InvalidPresentationError
from core.surgery import (SurgeryCoefficient, SurgeryPresentation, apply_surgery, connected_sum,
                          first_homology, homology_order, homology_zd, is_type_d, is_weak_type_d,
                          permute_components, presentation_matrix, surgery_sequence, type_d_move,
                          weak_move)
from core.zmod import IntMatrix, ZdModuleStructure


# --- coefficients ---

def test_coefficient_normalisation():
    assert SurgeryCoefficient.of(4, -6) == SurgeryCoefficient(-2, 3)
    assert str(SurgeryCoefficient.parse("-2/3")) == "-2/3"
    assert str(SurgeryCoefficient.parse("5")) == "5"
    assert SurgeryCoefficient.parse("0") == SurgeryCoefficient(0, 1)


@pytest.mark.parametrize("text", ["1/0", "a/b", "1/2/3"])
def test_coefficient_rejects_bad_text(text):
    with pytest.raises(InvalidPresentationError):
        SurgeryCoefficient.parse(text)


def test_coefficient_requires_lowest_terms():
    with pytest.raises(InvalidPresentationError):
        SurgeryCoefficient(2, 4)


def test_two_fifths_is_weak_but_not_type_five():
    """±2/5 is a weak type-5 slope; ±1/5 and 4/5 are type-5"""
    for p in (2, -2):
        c = SurgeryCoefficient.of(p, 5)
        assert is_weak_type_d(c, 5)
        assert not is_type_d(c, 5)
    assert is_type_d(SurgeryCoefficient.of(1, 5), 5)
    assert is_type_d(SurgeryCoefficient.of(4, 5), 5)
    assert not is_weak_type_d(SurgeryCoefficient.of(2, 3), 5)


def test_move_validation():
    assert weak_move(5, 1, 2).coefficient == SurgeryCoefficient(2, 5)
    assert type_d_move(5, 2, 11).coefficient == SurgeryCoefficient(11, 10)
    with pytest.raises(InvalidPresentationError):
        type_d_move(5, 1, 2)
    with pytest.raises(InvalidPresentationError):
        weak_move(4, 1, 2)
    with pytest.raises(InvalidPresentationError):
        weak_move(1, 1, 1)


# --- presentations ---

def test_presentation_validation():
    with pytest.raises(InvalidPresentationError):
        SurgeryPresentation.from_parts(["0", "0"], [[0, 1], [2, 0]])
    with pytest.raises(InvalidPresentationError):
        SurgeryPresentation.from_parts(["0", "0"], [[1, 0], [0, 0]])
    with pytest.raises(InvalidPresentationError):
        SurgeryPresentation.from_parts(["0", "0", "0"], [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
                                       triple={(0, 1, 2): 1})


def test_presentation_matrix():
    assert presentation_matrix(catalog("Lens(5,2)")).to_rows() == [[5]]
    hopf = SurgeryPresentation((SurgeryCoefficient(0), SurgeryCoefficient(1, 2)), IntMatrix.from_rows([[0, 1], [1, 0]]))
    assert presentation_matrix(hopf).to_rows() == [[0, 1], [2, 1]]
    assert homology_order(hopf) == 2
    assert presentation_matrix(catalog("T3")).to_rows() == [[0, 0, 0], [0, 0, 0], [0, 0, 0]]


def test_triple_data_is_alternating():
    P = SurgeryPresentation.from_parts(["0", "0", "0"], triple={(1, 0, 2): 1})
    assert P.triple_map() == {(0, 1, 2): -1}
    with pytest.raises(InvalidPresentationError):
        SurgeryPresentation.from_parts(["0", "0", "0"], triple={(0, 0, 1): 1})


def test_lens_space_homology():
    """H_1(L(5, 2)) = Z_5, invisible with Z_3 coefficients"""
    lens = catalog("Lens(5,2)")
    assert first_homology(lens) == (5,)
    assert homology_order(lens) == 5
    assert homology_zd(lens, 5) == ZdModuleStructure.free(1, 5)
    assert homology_zd(lens, 3).is_trivial


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6, 7])
def test_t3_and_three_handles_share_homology(d):
    """T^3 and #^3 S^1×S^2 both have H_1(·; Z_d) = Z_d^3"""
    assert homology_zd(catalog("T3"), d) == ZdModuleStructure.free(3, d)
    assert homology_zd(catalog("SumS1xS2(3)"), d) == ZdModuleStructure.free(3, d)


def test_sphere_and_handle():
    assert homology_zd(catalog("S3"), 4).is_trivial
    assert first_homology(catalog("S1xS2")) == (0,)
    assert homology_order(catalog("S1xS2")) == 0


def test_integral_homology_mixed():
    """Surgery on the Hopf link with framings 2 and 2: det = 3"""
    P = SurgeryPresentation.from_parts(["2", "2"], [[0, 1], [1, 0]])
    assert first_homology(P) == (3,)
    assert homology_zd(P, 3) == ZdModuleStructure.free(1, 3)


def test_hopf_to_lens():
    """A weak move linking the 0-framed unknot once gives L(ds, q)"""
    for d, s, q in [(2, 1, 1), (3, 1, 2), (5, 2, 3)]:
        lens = apply_surgery(catalog("S1xS2"), weak_move(d, s, q, [1]))
        assert homology_order(lens) == d * s
        assert homology_zd(lens, d) == ZdModuleStructure.free(1, d)
        assert homology_zd(lens, d) == homology_zd(catalog("S1xS2"), d)


def _random_presentation(rng, n):
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


def test_weak_surgery_preserves_zd_homology():
    """Seeded random presentations and weak moves"""
    rng = random.Random(2024)
    for _ in range(300):
        d = rng.randint(2, 7)
        P = _random_presentation(rng, rng.randint(0, 3))
        s = rng.randint(1, 3)
        q = rng.choice([x for x in range(-20, 21) if gcd(x, d * s) == 1])
        move = weak_move(d, s, q, [rng.randint(-3, 3) for _ in range(P.n)])
        assert homology_zd(apply_surgery(P, move), d) == homology_zd(P, d)


def test_apply_surgery_extends_or_drops_triples():
    T3 = catalog("T3")
    kept = apply_surgery(T3, weak_move(3, 1, 1, [0, 0, 0], [0, 0, 1]))
    assert kept.triple_map() == {(0, 1, 2): 1, (1, 2, 3): 1}
    assert not kept.triple_dropped
    assert kept.group_kind is None

    dropped = apply_surgery(T3, weak_move(3, 1, 1, [1, 0, 0]))
    assert dropped.triple is None
    assert dropped.triple_dropped

    with pytest.raises(InvalidPresentationError):
        apply_surgery(T3, weak_move(3, 1, 1, [1, 0, 0], [0, 0, 0]))
    with pytest.raises(InvalidPresentationError):
        apply_surgery(T3, weak_move(3, 1, 1, [0, 0]))


def test_surgery_sequence():
    chain = surgery_sequence(catalog("S3"), [weak_move(3, 1, 1), weak_move(3, 1, 2, [1])])
    assert [P.n for P in chain] == [0, 1, 2]
    assert all(homology_zd(P, 3).is_trivial for P in chain)


def test_connected_sum():
    total = connected_sum(catalog("S1xS2"), catalog("SumS1xS2(2)"))
    assert total.n == 3
    assert total.group_kind == GroupKind.free(3)
    assert homology_zd(total, 5) == ZdModuleStructure.free(3, 5)
    lens_sum = connected_sum(catalog("Lens(2,1)"), catalog("Lens(3,1)"))
    assert first_homology(lens_sum) == (6,)
    assert lens_sum.group_kind is None


def test_permute_components():
    P = SurgeryPresentation.from_parts(["1", "2", "3"], triple={(0, 1, 2): 1})
    Q = permute_components(P, [1, 0, 2])
    assert [str(c) for c in Q.coeffs] == ["2", "1", "3"]
    assert Q.triple_map() == {(0, 1, 2): -1}
    with pytest.raises(InvalidPresentationError):
        permute_components(P, [0, 0, 1])


def test_reordering_components_keeps_homology():
    rng = random.Random(23)
    for _ in range(200):
        n = rng.randint(1, 4)
        P = _random_presentation(rng, n)
        order = list(range(n))
        rng.shuffle(order)
        Q = permute_components(P, order)
        assert first_homology(Q) == first_homology(P)
        for d in range(2, 8):
            assert homology_zd(Q, d) == homology_zd(P, d)


# --- catalog ---

def test_catalog_entries():
    assert catalog("t3").group_kind == GroupKind.abelian((0, 0, 0))
    assert catalog("SumS1xS2(3)").group_kind == GroupKind.free(3)
    assert catalog("S3").group_kind.is_trivial
    assert catalog("Lens(7)").coeffs == (SurgeryCoefficient(7, 1),)
    assert "T3" in catalog_names()


@pytest.mark.parametrize("name", ["Nowhere", "Lens(1,0)", "SumS1xS2(-1)", "Lens(a,b)", "T3(1)"])
def test_catalog_rejects_bad_names(name):
    with pytest.raises(InputError):
        catalog(name)
