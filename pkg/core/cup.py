"""
Trilinear cup-product forms over Z_d and the form obstruction to weak d-congruence
"""

import logging
from dataclasses import dataclass
from itertools import permutations, product
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from core.errors import InvalidFormError
from core.goeritz import dbc_homology
from core.links import DBCReference
from core.surgery import SurgeryPresentation, homology_zd, permutation_sign, triple_value
from core.verdict import DISTINGUISHED, INCONCLUSIVE, CongruenceVerdict
from core.zmod import (IntMatrix, _check_modulus, check_budget, det_mod, invertible_column_sequences,
                       is_unit)

logger = logging.getLogger(__name__)

Index = Tuple[int, int, int]


class TrilinearFormZd:
    """
    A trilinear form on Z_d^n stored as its full n×n×n tensor of values in Z_d.

    Every permutation of an index triple multiplies the value by its sign, so entries
    with a repeated index are 2-torsion (zero for odd d). Modulus 1 is allowed as
    the image of reduction at d = 2.

    Raises:
        InvalidFormError: when the tensor has the wrong size or breaks the sign law
    """

    def __init__(self, d: int, n: int, values: Sequence[int]):
        if not isinstance(d, int) or d < 1:
            raise InvalidFormError(f"form modulus must be >= 1, got {d!r}")
        if n < 0:
            raise InvalidFormError(f"form rank must be >= 0, got {n}")
        values = tuple(int(v) % d for v in values)
        if len(values) != n ** 3:
            raise InvalidFormError(f"rank-{n} form needs {n ** 3} values, got {len(values)}")
        self.d = d
        self.n = n
        self.values = values
        for idx in product(range(n), repeat=3):
            v = values[self._offset(idx)]
            for perm in permutations(range(3)):
                image = tuple(idx[p] for p in perm)
                if values[self._offset(image)] != (permutation_sign(perm) * v) % d:
                    raise InvalidFormError(f"form value at {image} breaks the sign law relative to {idx}")
        self._entries = [(idx, values[self._offset(idx)])
                         for idx in product(range(n), repeat=3) if values[self._offset(idx)]]

    def _offset(self, idx: Index) -> int:
        i, j, k = idx
        return (i * self.n + j) * self.n + k

    @classmethod
    def zero(cls, d: int, n: int) -> "TrilinearFormZd":
        return cls(d, n, [0] * n ** 3)

    @classmethod
    def from_entries(cls, d: int, n: int, entries: Union[Dict[Index, int], Iterable[Tuple[Index, int]]]) -> "TrilinearFormZd":
        """Complete sparse entries under the sign law; conflicting entries are rejected."""
        if isinstance(entries, dict):
            entries = entries.items()
        values: Dict[Index, int] = {}
        for idx, v in entries:
            idx = tuple(int(x) for x in idx)
            if len(idx) != 3 or any(not 0 <= x < n for x in idx):
                raise InvalidFormError(f"form index {idx} out of range for rank {n}")
            for perm in permutations(range(3)):
                image = tuple(idx[p] for p in perm)
                value = (permutation_sign(perm) * int(v)) % d
                if values.setdefault(image, value) != value:
                    raise InvalidFormError(f"form entries conflict at {image}")
        return cls(d, n, [values.get(idx, 0) for idx in product(range(n), repeat=3)])

    def value(self, i: int, j: int, k: int) -> int:
        return self.values[self._offset((i, j, k))]

    def nonzero_entries(self) -> List[Tuple[Index, int]]:
        return list(self._entries)

    @property
    def is_zero(self) -> bool:
        return not self._entries

    def evaluate(self, x: Sequence[int], y: Sequence[int], z: Sequence[int]) -> int:
        """Trilinear extension of the basis tensor."""
        if not len(x) == len(y) == len(z) == self.n:
            raise InvalidFormError(f"evaluate needs three vectors of length {self.n}")
        total = 0
        for (i, j, k), v in self._entries:
            total += v * x[i] * y[j] * z[k]
        return total % self.d

    def negated(self) -> "TrilinearFormZd":
        return TrilinearFormZd(self.d, self.n, [-v for v in self.values])

    def transform(self, C: IntMatrix) -> "TrilinearFormZd":
        """Pull back along C: (i, j, k) ↦ t(Ce_i, Ce_j, Ce_k)."""
        if C.rows != self.n or C.cols != self.n:
            raise InvalidFormError(f"transform needs a {self.n}x{self.n} matrix")
        cols = [C.column(j) for j in range(self.n)]
        return TrilinearFormZd(self.d, self.n, [
            self.evaluate(cols[i], cols[j], cols[k]) for i, j, k in product(range(self.n), repeat=3)])

    def __eq__(self, other) -> bool:
        return isinstance(other, TrilinearFormZd) and (self.d, self.n, self.values) == (other.d, other.n, other.values)

    def __hash__(self) -> int:
        return hash((self.d, self.n, self.values))

    def __repr__(self) -> str:
        shown = ", ".join(f"{idx}: {v}" for idx, v in self._entries if idx[0] <= idx[1] <= idx[2])
        return f"TrilinearFormZd(d={self.d}, n={self.n}, {{{shown}}})"

    def to_json(self) -> Dict:
        return {
            "d": self.d,
            "n": self.n,
            "entries": [{"ijk": [i + 1 for i in idx], "value": v} for idx, v in self._entries],
        }

    @classmethod
    def from_json(cls, data: Dict) -> "TrilinearFormZd":
        try:
            d, n = int(data["d"]), int(data["n"])
            entries = [(tuple(int(x) for x in e["ijk"]), int(e["value"])) for e in data.get("entries", [])]
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidFormError(f"malformed form JSON: {e}") from e
        # JSON indices are 1-based
        if any(x < 1 for idx, _ in entries for x in idx):
            raise InvalidFormError("form indices are 1-based")
        entries = [(tuple(x - 1 for x in idx), v) for idx, v in entries]
        return cls.from_entries(d, n, entries)


@dataclass(frozen=True)
class FormIsoWitness:
    """Invertible C over Z_d with t2(Ce_i, Ce_j, Ce_k) = t1(e_i, e_j, e_k)."""

    matrix: IntMatrix
    d: int

    def verifies(self, t1: TrilinearFormZd, t2: TrilinearFormZd) -> bool:
        if t1.n != t2.n or t1.d != t2.d or self.matrix.rows != t1.n:
            return False
        if t1.d > 1 and not is_unit(det_mod(self.matrix, t1.d), t1.d):
            return False
        return t2.transform(self.matrix) == t1

    def to_json(self) -> Dict:
        return {"d": self.d, "matrix": self.matrix.to_json()}


# --- construction ---

def form_from_split_presentation(P: SurgeryPresentation, d: int) -> TrilinearFormZd:
    """
    Cup-product form of surgery on an algebraically split, 0-framed link.

    H^1(M; Z_d) is free on the duals of the meridians and t(e_i, e_j, e_k) = μ(i, j, k).

    Raises:
        InvalidFormError: when P is not split, has a nonzero framing or carries no triple data
    """
    _check_modulus(d)
    if not P.is_split:
        raise InvalidFormError("form needs an algebraically split presentation")
    if any(c.p != 0 or c.q != 1 for c in P.coeffs):
        raise InvalidFormError("form needs every framing to be 0")
    if P.triple is None:
        raise InvalidFormError("form needs triple linking data for the presentation")
    n = P.n
    return TrilinearFormZd(d, n, [
        triple_value(P.triple, i, j, k) for i, j, k in product(range(n), repeat=3)])


def lens_form(d: int, s: int, q: int) -> TrilinearFormZd:
    """Rank-1 form of L(ds, q): t(ψ, ψ, ψ) = d/2 for even d, 0 for odd d."""
    _check_modulus(d)
    if s == 0 or gcd(q, d * s) != 1:
        raise InvalidFormError(f"lens form needs gcd(q, d·s) = 1, got q={q}, d·s={d * s}")
    return TrilinearFormZd(d, 1, [d // 2 if d % 2 == 0 else 0])


def reduce_form(t: TrilinearFormZd) -> TrilinearFormZd:
    """Entrywise reduction Z_d → Z_{d/2}."""
    if t.d % 2:
        raise InvalidFormError(f"reduction to Z_(d/2) needs even d, got {t.d}")
    return TrilinearFormZd(t.d // 2, t.n, t.values)


def form_for(source: Union[SurgeryPresentation, DBCReference], d: int) -> TrilinearFormZd:
    """
    Derive the cup-product form of a manifold when one of the supported recipes applies.

    Raises:
        InvalidFormError: when no recipe applies (form not derivable)
    """
    _check_modulus(d)
    if isinstance(source, DBCReference):
        if dbc_homology(source, d).is_trivial:
            return TrilinearFormZd.zero(d, 0)
        raise InvalidFormError(f"form not derivable for {source}")

    if source.is_split and source.triple is not None and all(c.p == 0 and c.q == 1 for c in source.coeffs):
        return form_from_split_presentation(source, d)
    if source.n == 1 and source.coeffs[0].p % d == 0 and source.coeffs[0].p != 0:
        c = source.coeffs[0]
        return lens_form(d, c.p // d, c.q)
    if homology_zd(source, d).is_trivial:
        return TrilinearFormZd.zero(d, 0)
    raise InvalidFormError(f"form not derivable for {source}")


# --- comparison ---

def _search_plan(t1: TrilinearFormZd) -> List[List[Tuple[Index, int]]]:
    """For each column count m, the index triples with largest index m - 1; nonzero targets first."""
    plan: List[List[Tuple[Index, int]]] = [[] for _ in range(t1.n + 1)]
    for idx in product(range(t1.n), repeat=3):
        plan[max(idx) + 1].append((idx, t1.value(*idx)))
    for checks in plan:
        checks.sort(key=lambda item: item[1] == 0)
    return plan


def forms_equivalent(
    t1: TrilinearFormZd,
    t2: TrilinearFormZd,
    budget: Optional[int] = None,
    use_fast_path: bool = True,
) -> Optional[FormIsoWitness]:
    """
    Find C in GL(n, Z_d) with t2(Ce_i, Ce_j, Ce_k) = t1(e_i, e_j, e_k), or None.

    The witness is the first one in enumeration order. Forms of different rank are
    never equivalent.

    Raises:
        InvalidFormError: when the moduli differ
        BudgetExceededError: when GL(n, Z_d) is above the search budget
    """
    if t1.d != t2.d:
        raise InvalidFormError(f"cannot compare forms over Z_{t1.d} and Z_{t2.d}")
    if t1.n != t2.n:
        logger.debug(f"Forms have different ranks {t1.n} and {t2.n}")
        return None
    n, d = t1.n, t1.d
    identity = FormIsoWitness(IntMatrix.identity(n), d)
    if d == 1 or n == 0:
        return identity
    if use_fast_path:
        if t1.is_zero and t2.is_zero:
            return identity
        if t1.is_zero != t2.is_zero:
            return None

    check_budget(n, d, budget)
    plan = _search_plan(t1)
    entries = t2.nonzero_entries()

    def accept(columns: List[Tuple[int, ...]]) -> bool:
        for (i, j, k), target in plan[len(columns)]:
            x, y, z = columns[i], columns[j], columns[k]
            total = 0
            for (a, b, c), v in entries:
                total += v * x[a] * y[b] * z[c]
            if total % d != target:
                return False
        return True

    for columns in invertible_column_sequences(n, d, accept):
        witness = FormIsoWitness(IntMatrix.from_columns(columns), d)
        logger.debug(f"Found form isomorphism {witness.matrix.to_rows()}")
        return witness
    return None


def obstruct_weak_congruence(
    tA: TrilinearFormZd,
    tB: TrilinearFormZd,
    d: int,
    budget: Optional[int] = None,
    use_fast_path: bool = True,
) -> CongruenceVerdict:
    """
    Cup-form obstruction to weak d-congruence.

    Odd d compares the forms themselves; even d compares their reductions mod d/2.
    Either orientation of B is allowed, so the verdict is 'distinguished' only when
    neither t_B nor −t_B matches t_A.
    """
    if tA.d != d or tB.d != d:
        raise InvalidFormError(f"forms are over Z_{tA.d} and Z_{tB.d}, expected Z_{d}")
    payload = {"d": d, "rank_a": tA.n, "rank_b": tB.n}
    if tA.n != tB.n:
        return CongruenceVerdict(
            DISTINGUISHED, f"H^1(·; Z_{d}) ranks differ: {tA.n} vs {tB.n}", "cup-form", payload)

    a, b = tA, tB
    if d % 2 == 0:
        a, b = reduce_form(tA), reduce_form(tB)
        payload["reduced_modulus"] = d // 2

    for orientation, target in (("+", b), ("-", b.negated())):
        witness = forms_equivalent(a, target, budget, use_fast_path)
        if witness is not None:
            payload["witness"] = witness.matrix.to_rows()
            payload["orientation"] = orientation
            return CongruenceVerdict(
                INCONCLUSIVE, "cup-product forms are isomorphic" + (" after reduction" if d % 2 == 0 else ""),
                "cup-form", payload)

    payload["form_a_zero"] = a.is_zero
    payload["form_b_zero"] = b.is_zero
    return CongruenceVerdict(
        DISTINGUISHED,
        "cup-product forms are not isomorphic" + (f" modulo {d // 2}" if d % 2 == 0 else ""),
        "cup-form", payload)


def discrepancy_table(tA: TrilinearFormZd, tB: TrilinearFormZd, witness: FormIsoWitness) -> Dict[Index, int]:
    """
    tB(Ce_i, Ce_j, Ce_k) − tA(e_i, e_j, e_k) in Z_d for every basis triple.

    Raises:
        InvalidFormError: for odd d, or a witness that does not match the reduced forms
    """
    if tA.d != tB.d or tA.n != tB.n:
        raise InvalidFormError("discrepancy needs forms of the same modulus and rank")
    if tA.d % 2:
        raise InvalidFormError(f"discrepancy needs even d, got {tA.d}")
    reduced = FormIsoWitness(witness.matrix, tA.d // 2)
    if not reduced.verifies(reduce_form(tA), reduce_form(tB)):
        raise InvalidFormError("witness does not carry the reduced forms onto each other")
    pulled = tB.transform(witness.matrix)
    return {idx: (pulled.value(*idx) - tA.value(*idx)) % tA.d for idx in product(range(tA.n), repeat=3)}


def unreduced_discrepancy(tA: TrilinearFormZd, tB: TrilinearFormZd, witness: FormIsoWitness) -> Set[int]:
    """
    Values of tB∘C − tA over all coordinate triples of Z_d^n, a subset of {0, d/2}.

    Coordinate triples include ones with a zero vector, so 0 is always attained.
    """
    return {0} | set(discrepancy_table(tA, tB, witness).values())
