#!/usr/bin/env python3
"""
Tests for exact linear algebra over Z and Z_d
"""

import random
from itertools import product
from math import gcd

import pytest

from core.errors import BudgetExceededError
from core.zmod import (IntMatrix, ZdModuleStructure, check_budget, cokernel_mod, det_mod,
                       enumerate_invertible, gl_order, is_unit, smith_normal_form)


def _is_divisor_chain(values):
    for a, b in zip(values, values[1:]):
        if a == 0 and b != 0:
            return False
        if a and b % a:
            return False
    return True


def test_smith_normal_form_small():
    """[[2, 4], [6, 8]] has Smith form diag(2, 4)"""
    A = IntMatrix.from_rows([[2, 4], [6, 8]])
    form = smith_normal_form(A)
    assert form.diagonal == (2, 4)
    assert form.U @ A @ form.V == form.D


def test_smith_normal_form_random():
    """U·A·V = D with a divisor chain on seeded random matrices"""
    rng = random.Random(7)
    for _ in range(500):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        A = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
        form = smith_normal_form(A)
        assert form.U @ A @ form.V == form.D
        assert all(x >= 0 for x in form.diagonal)
        assert _is_divisor_chain(form.diagonal)
        assert abs(form.U.determinant()) == 1
        assert abs(form.V.determinant()) == 1


def test_smith_normal_form_empty_and_zero():
    assert smith_normal_form(IntMatrix.zeros(0, 0)).diagonal == ()
    assert smith_normal_form(IntMatrix.zeros(2, 3)).diagonal == (0, 0)


def test_cokernel_mod():
    """coker diag(3) ⊗ Z_3 = Z_3 and ⊗ Z_2 = 0; the empty 1×0 matrix leaves Z"""
    assert cokernel_mod(IntMatrix.diagonal([3]), 3) == ZdModuleStructure.free(1, 3)
    assert cokernel_mod(IntMatrix.diagonal([3]), 2).is_trivial
    assert cokernel_mod(IntMatrix.zeros(1, 0), 5) == ZdModuleStructure.free(1, 5)
    assert cokernel_mod(IntMatrix.diagonal([2, 0]), 4) == ZdModuleStructure(4, (2, 4))


def _random_unimodular(rng, n):
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        op = rng.choice(["swap", "negate", "add"])
        if op == "swap":
            rows[i], rows[j] = rows[j], rows[i]
        elif op == "negate":
            rows[i] = [-x for x in rows[i]]
        elif i != j:
            k = rng.randint(-3, 3)
            rows[i] = [a + k * b for a, b in zip(rows[i], rows[j])]
    return IntMatrix.from_rows(rows, cols=n)


def test_cokernel_invariant_under_row_and_column_changes():
    """Permuting rows or columns, or multiplying by unimodular matrices, keeps coker A ⊗ Z_d"""
    rng = random.Random(13)
    for _ in range(200):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        d = rng.randint(2, 12)
        expected = cokernel_mod(IntMatrix.from_rows(rows, cols=n), d)

        shuffled = [list(r) for r in rows]
        rng.shuffle(shuffled)
        order = list(range(n))
        rng.shuffle(order)
        shuffled = [[r[j] for j in order] for r in shuffled]
        assert cokernel_mod(IntMatrix.from_rows(shuffled, cols=n), d) == expected

        A = IntMatrix.from_rows(rows, cols=n)
        U, V = _random_unimodular(rng, m), _random_unimodular(rng, n)
        assert abs(U.determinant()) == 1 and abs(V.determinant()) == 1
        assert cokernel_mod(U @ A @ V, d) == expected


def test_module_structure_text():
    assert str(ZdModuleStructure.from_factors([0, 0, 0], 3)) == "Z_3^3"
    assert str(ZdModuleStructure.from_factors([2, 6], 6)) == "Z_2 ⊕ Z_6"
    assert str(ZdModuleStructure.from_factors([1, 5], 3)) == "0"


def test_module_structure_canonical():
    """Z_2 ⊕ Z_3 over Z_6 is the single factor Z_6"""
    m = ZdModuleStructure.from_factors([2, 3], 6)
    assert m.factors == (6,)
    assert m.rank == 1
    assert m.is_free
    assert m.order == 6


def test_module_structure_direct_sum():
    a = ZdModuleStructure.from_factors([2], 4)
    b = ZdModuleStructure.free(1, 4)
    total = a.direct_sum(b)
    assert total.factors == (2, 4)
    assert total.rank == 1
    assert not total.is_free


def test_module_structure_rejects_bad_chains():
    with pytest.raises(ValueError):
        ZdModuleStructure(6, (4,))
    with pytest.raises(ValueError):
        ZdModuleStructure(6, (3, 2))
    with pytest.raises(ValueError):
        ZdModuleStructure(1, ())


def test_int_matrix_json():
    """Entries are decimal strings; plain integers are accepted on load"""
    A = IntMatrix.from_rows([[1, -2], [3, 40000000000000000000]])
    assert A.to_json() == [["1", "-2"], ["3", "40000000000000000000"]]
    assert IntMatrix.from_json(A.to_json()) == A
    assert IntMatrix.from_json([[1, 2], [3, 4]]) == IntMatrix.from_rows([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        IntMatrix.from_json([[1, 2], [3]])


def test_det_mod_and_units():
    A = IntMatrix.from_rows([[2, 1], [1, 1]])
    assert det_mod(A, 5) == 1
    assert is_unit(det_mod(A, 4), 4)
    assert not is_unit(2, 4)


@pytest.mark.parametrize("n,d,expected", [
    (1, 5, 4),
    (2, 2, 6),
    (2, 4, 96),
    (3, 3, 11232),
    (3, 5, 1488000),
])
def test_gl_order(n, d, expected):
    assert gl_order(n, d) == expected


def test_enumerate_invertible_matches_order():
    """Every element of GL(2, Z_4) exactly once"""
    matrices = list(enumerate_invertible(2, 4))
    assert len(matrices) == gl_order(2, 4)
    assert len(set(matrices)) == len(matrices)
    assert all(is_unit(det_mod(M, 4), 4) for M in matrices)
    assert matrices[0] == IntMatrix.from_rows([[0, 1], [1, 0]])


def test_enumeration_order_is_fixed():
    first = [M.to_rows() for M in enumerate_invertible(2, 3)][:5]
    second = [M.to_rows() for M in enumerate_invertible(2, 3)][:5]
    assert first == second


def test_budget_exceeded():
    with pytest.raises(BudgetExceededError) as info:
        check_budget(3, 5, budget=1000)
    assert info.value.order == 1488000
    assert info.value.budget == 1000
    assert check_budget(2, 2, budget=6) == 6


def _det(rows):
    if len(rows) == 1:
        return rows[0][0]
    return sum((-1) ** j * rows[0][j] * _det([r[:j] + r[j + 1:] for r in rows[1:]]) for j in range(len(rows)))


def _brute_force_gl_count(n, d):
    count = 0
    for entries in product(range(d), repeat=n * n):
        rows = [list(entries[i * n:(i + 1) * n]) for i in range(n)]
        if gcd(_det(rows), d) == 1:
            count += 1
    return count


@pytest.mark.parametrize("n,d", [(1, d) for d in range(2, 13)] + [
    (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3),
])
def test_enumeration_count_matches_brute_force(n, d):
    assert sum(1 for _ in enumerate_invertible(n, d)) == _brute_force_gl_count(n, d) == gl_order(n, d)


@pytest.mark.slow
def test_enumeration_count_matches_brute_force_grid():
    """Every (n, d) with n >= 2 and d^(n^2) <= 10^6, plus n = 1 up to d = 200"""
    cases = [(1, d) for d in range(2, 201)]
    cases += [(n, d) for n in (2, 3, 4) for d in range(2, 1001) if d ** (n * n) <= 10 ** 6]
    for n, d in cases:
        assert sum(1 for _ in enumerate_invertible(n, d)) == _brute_force_gl_count(n, d), (n, d)
