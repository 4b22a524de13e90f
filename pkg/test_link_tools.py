#!/usr/bin/env python3
"""
Tests for link diagrams, braids, Milnor's triple linking number and double branched covers
"""

import os
import random
import runpy

import pytest

from core.catalog import catalog, golden_link, montesinos_rank, standard_borromean
from core.errors import InvalidDiagramError
from core.goeritz import dbc_homology, determinant, goeritz_matrix, is_homology_sphere
from core.links import (BraidWord, LinkDiagram, apply_d_move, braid_closure, component_count,
                        linking_matrix, linking_number, relabel_components, remove_d_move, reverse_component,
                        split_pieces, unlink)
from core.milnor import milnor_triple
from core.zmod import ZdModuleStructure


# --- diagrams ---

def test_braid_closure_components():
    hopf = golden_link("Hopf")
    assert hopf.n_components == 2
    assert hopf.n_crossings == 2
    assert hopf.signs == (1, 1)
    assert golden_link("Trefoil").n_components == 1
    assert standard_borromean().n_components == 3


def test_linking_numbers():
    hopf = golden_link("Hopf")
    assert linking_number(hopf, 0, 1) == 1
    assert linking_number(unlink(2), 0, 1) == 0
    for i, j in ((0, 1), (0, 2), (1, 2)):
        assert linking_number(standard_borromean(), i, j) == 0
    with pytest.raises(InvalidDiagramError):
        linking_number(hopf, 1, 1)
    assert linking_matrix(hopf) == [[0, 1], [1, 0]]
    assert linking_matrix(reverse_component(hopf, 0)) == [[0, -1], [-1, 0]]
    assert linking_matrix(standard_borromean()) == [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
    assert linking_matrix(catalog("TorusLink(2,4)")) == [[0, 2], [2, 0]]


def test_component_count_matches_closure():
    rng = random.Random(11)
    for _ in range(50):
        strands = rng.randint(1, 5)
        word = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(rng.randint(0, 8))] if strands > 1 else []
        b = BraidWord(strands, word)
        assert component_count(b) == braid_closure(b).n_components


def test_pd_json_round_trip():
    L = standard_borromean()
    again = LinkDiagram.from_json(L.to_json())
    assert again.crossings == L.crossings
    assert again.signs == L.signs


def test_diagram_validation():
    with pytest.raises(InvalidDiagramError):
        LinkDiagram(((1, 2, 3, 4),), ((1, 2, 3, 4),))
    with pytest.raises(InvalidDiagramError):
        LinkDiagram(((1, 2, 3),), ((1, 2, 3),))
    with pytest.raises(InvalidDiagramError):
        LinkDiagram((), ())
    with pytest.raises(InvalidDiagramError):
        BraidWord(3, (3,))
    with pytest.raises(InvalidDiagramError):
        LinkDiagram.from_json({"crossings": [[2, 2, 1, 1]]})


def test_kinked_unknot():
    kinked = golden_link("KinkedUnknot")
    assert kinked.n_components == 1
    assert kinked.signs == (1,)
    assert determinant(kinked) == 1


def test_split_pieces():
    b = BraidWord(4, (1, 1, 3, 3, 3))
    pieces = split_pieces(braid_closure(b))
    assert [p.n_components for p in pieces] == [2, 1]
    assert len(split_pieces(unlink(3))) == 3


def test_d_moves():
    b = BraidWord(3, (1, -2))
    moved = apply_d_move(b, 1, 2, -1, 3)
    assert moved.word == (1, -2, -2, -2, -2)
    assert remove_d_move(moved, 1, 2, -1, 3) == b
    with pytest.raises(InvalidDiagramError):
        remove_d_move(b, 0, 1, 1, 3)
    with pytest.raises(InvalidDiagramError):
        apply_d_move(b, 5, 1, 1, 3)


# --- Milnor's triple linking number ---

def test_borromean_milnor_invariant():
    """μ̄(123) = ±1, invariant under cyclic relabelling, odd under swaps and reversal"""
    B = standard_borromean()
    value = milnor_triple(B)
    assert value == 1
    assert milnor_triple(relabel_components(B, [1, 2, 0])) == value
    assert milnor_triple(relabel_components(B, [2, 0, 1])) == value
    assert milnor_triple(relabel_components(B, [1, 0, 2])) == -value
    assert milnor_triple(relabel_components(B, [0, 2, 1])) == -value
    for i in range(3):
        assert milnor_triple(reverse_component(B, i)) == -value


def test_unlink_milnor_invariant():
    assert milnor_triple(unlink(3)) == 0


def test_milnor_matches_t3_triple():
    assert catalog("T3").triple_map()[(0, 1, 2)] == milnor_triple(catalog("Borromean"))


def test_milnor_requirements():
    with pytest.raises(InvalidDiagramError):
        milnor_triple(golden_link("Hopf"))
    linked = braid_closure(BraidWord(3, (1, 1, 2, 2)))
    with pytest.raises(InvalidDiagramError):
        milnor_triple(linked)
    with pytest.raises(ValueError):
        milnor_triple(standard_borromean(), depth=1)


# --- determinants and double branched covers ---

@pytest.mark.parametrize("name,det", [
    ("Hopf", 2),
    ("Trefoil", 3),
    ("FigureEight", 5),
    ("Borromean", 16),
    ("TorusLink(2,5)", 5),
    ("TorusLink(3,5)", 1),
    ("TorusLink(3,7)", 1),
    ("Unlink(1)", 1),
    ("Unlink(2)", 0),
])
def test_determinants(name, det):
    assert determinant(catalog(name)) == det


def test_goeritz_requirements():
    with pytest.raises(InvalidDiagramError):
        goeritz_matrix(unlink(1))
    with pytest.raises(InvalidDiagramError):
        goeritz_matrix(braid_closure(BraidWord(4, (1, 3))))


def test_dbc_homology_values():
    assert dbc_homology(golden_link("Trefoil"), 3) == ZdModuleStructure.free(1, 3)
    assert dbc_homology(golden_link("Trefoil"), 2).is_trivial
    assert dbc_homology(golden_link("FigureEight"), 5) == ZdModuleStructure.free(1, 5)
    assert dbc_homology(golden_link("Hopf"), 4) == ZdModuleStructure(4, (2,))
    assert dbc_homology(standard_borromean(), 4) == ZdModuleStructure.free(2, 4)


@pytest.mark.parametrize("c", [1, 2, 3])
def test_unlink_double_cover(c):
    """Σ_2 of the c-component unlink is #^{c-1} S^1×S^2"""
    assert dbc_homology(unlink(c), 5) == ZdModuleStructure.free(c - 1, 5)


def test_homology_spheres():
    """The Poincaré sphere and Σ(2,3,7) are double branched covers of T(3,5) and T(3,7)"""
    for name in ("Poincare", "Sigma237"):
        ref = catalog(name)
        assert is_homology_sphere(ref)
        assert dbc_homology(ref, 5).is_trivial


def test_d_move_preserves_dbc_homology():
    rng = random.Random(5)
    for _ in range(80):
        d = rng.choice([3, 5])
        strands = rng.randint(2, 4)
        b = BraidWord(strands, [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(rng.randint(0, 6))])
        moved = apply_d_move(b, rng.randint(0, len(b.word)), rng.randint(1, strands - 1), rng.choice([1, -1]), d)
        assert dbc_homology(braid_closure(b), d) == dbc_homology(braid_closure(moved), d)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_torus_knot_determinant(d):
    """det of the closure of σ1^d is d"""
    assert determinant(braid_closure(BraidWord(2, (1,) * d))) == d


def test_montesinos_z2_rank():
    rng = random.Random(17)
    for _ in range(40):
        strands = rng.randint(2, 4)
        b = BraidWord(strands, [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(rng.randint(0, 8))])
        L = braid_closure(b)
        assert dbc_homology(L, 2) == montesinos_rank(L.n_components)


def test_golden_link_check_script(capsys):
    """scripts/check_golden_links.py accepts every shipped golden link"""
    script = runpy.run_path(os.path.join(os.path.dirname(os.path.abspath(__file__)), "scripts", "check_golden_links.py"))
    assert script["main"]() == 0
    out = capsys.readouterr().out
    assert "Borromean: 3 component(s), 6 crossing(s), det=16" in out
    assert "All golden links are valid." in out


def test_linking_number_symmetry_and_reversal():
    """lk(i, j) = lk(j, i); reversing component i negates its linking numbers and no others"""
    rng = random.Random(19)
    diagrams = [golden_link("Hopf"), standard_borromean(), catalog("TorusLink(2,4)"), catalog("TorusLink(3,6)"), unlink(3)]
    for _ in range(40):
        strands = rng.randint(2, 4)
        word = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(rng.randint(1, 8))]
        diagrams.append(braid_closure(BraidWord(strands, word)))
    for L in diagrams:
        c = L.n_components
        for i in range(c):
            reversed_i = reverse_component(L, i)
            for j in range(c):
                if j == i:
                    continue
                assert linking_number(L, i, j) == linking_number(L, j, i)
                assert linking_number(reversed_i, i, j) == -linking_number(L, i, j)
                for k in range(j + 1, c):
                    if k != i:
                        assert linking_number(reversed_i, j, k) == linking_number(L, j, k)


# PD codes drawn by hand (arcs numbered along the knot), each paired with the diagram after one
# Reidemeister move
TREFOIL_PD = ([(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)], [list(range(1, 7))])
TREFOIL_KINKED_PD = ([(1, 5, 2, 4), (3, 1, 4, 8), (5, 3, 6, 2), (6, 8, 7, 7)], [list(range(1, 9))])
FIGURE_EIGHT_PD = ([(4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)], [list(range(1, 9))])
FIGURE_EIGHT_KINKED_PD = ([(4, 2, 5, 1), (10, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8), (8, 9, 9, 10)],
                          [list(range(1, 11))])
NEGATIVE_KINK_PD = ([(1, 2, 2, 1)], [[1, 2]])
FINGER_MOVE_PD = ([(1, 3, 2, 2), (4, 3, 1, 4)], [[1, 2, 3, 4]])


def _pd(code):
    crossings, components = code
    return LinkDiagram(tuple(crossings), tuple(tuple(c) for c in components))


def _closure(strands, word):
    return braid_closure(BraidWord(strands, word))


@pytest.mark.parametrize("before,after", [
    pytest.param(lambda: unlink(1), lambda: golden_link("KinkedUnknot"), id="R1-positive-kink"),
    pytest.param(lambda: unlink(1), lambda: _pd(NEGATIVE_KINK_PD), id="R1-negative-kink"),
    pytest.param(lambda: _pd(TREFOIL_PD), lambda: _pd(TREFOIL_KINKED_PD), id="R1-trefoil"),
    pytest.param(lambda: _pd(FIGURE_EIGHT_PD), lambda: _pd(FIGURE_EIGHT_KINKED_PD), id="R1-figure-eight"),
    pytest.param(lambda: unlink(1), lambda: _pd(FINGER_MOVE_PD), id="R2-finger-move"),
    pytest.param(lambda: _closure(2, (1, 1)), lambda: _closure(2, (1, 1, 1, -1)), id="R2-hopf"),
    pytest.param(lambda: _closure(3, (1, -2, 1, -2)), lambda: _closure(3, (1, -2, 2, -2, 1, -2)), id="R2-figure-eight"),
    pytest.param(lambda: _closure(3, (1, 2, 1)), lambda: _closure(3, (2, 1, 2)), id="R3"),
    pytest.param(lambda: _closure(3, (1, 2, 1, -2, -2)), lambda: _closure(3, (2, 1, 2, -2, -2)), id="R3-twisted"),
])
def test_determinant_invariant_under_reidemeister_moves(before, after):
    L, M = before(), after()
    assert L.n_components == M.n_components
    assert determinant(L) == determinant(M)


def test_hand_drawn_knots_match_braid_closures():
    assert determinant(_pd(TREFOIL_PD)) == determinant(golden_link("Trefoil")) == 3
    assert determinant(_pd(FIGURE_EIGHT_PD)) == determinant(golden_link("FigureEight")) == 5
    assert _pd(TREFOIL_KINKED_PD).n_crossings == 4
    assert dbc_homology(_pd(FIGURE_EIGHT_KINKED_PD), 5) == ZdModuleStructure.free(1, 5)
