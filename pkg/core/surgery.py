"""
Rational surgery presentations and (weak) d-surgery moves
"""

import logging
from dataclasses import dataclass, field, replace
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from core.burnside import GroupKind
from core.errors import InvalidPresentationError
from core.zmod import IntMatrix, ZdModuleStructure, _check_modulus, cokernel_mod, smith_normal_form

logger = logging.getLogger(__name__)

Triple = Tuple[int, int, int]
TripleData = Tuple[Tuple[Triple, int], ...]


@dataclass(frozen=True)
class SurgeryCoefficient:
    """Surgery slope p/q in lowest terms with q >= 1."""

    p: int
    q: int = 1

    def __post_init__(self):
        if self.q < 1:
            raise InvalidPresentationError(f"surgery denominator must be positive, got {self.q}")
        if gcd(self.p, self.q) != 1:
            raise InvalidPresentationError(f"surgery coefficient {self.p}/{self.q} is not in lowest terms")

    @classmethod
    def of(cls, p: int, q: int = 1) -> "SurgeryCoefficient":
        """Normalise any p/q with q != 0."""
        if q == 0:
            raise InvalidPresentationError("surgery coefficient has zero denominator (∞ surgery is not supported)")
        if q < 0:
            p, q = -p, -q
        g = gcd(p, q)
        return cls(p // g, q // g)

    @classmethod
    def parse(cls, text: str) -> "SurgeryCoefficient":
        parts = str(text).strip().split("/")
        if len(parts) > 2:
            raise InvalidPresentationError(f"bad surgery coefficient {text!r}")
        try:
            values = [int(x) for x in parts]
        except ValueError:
            raise InvalidPresentationError(f"bad surgery coefficient {text!r}") from None
        return cls.of(*values)

    def __str__(self) -> str:
        return str(self.p) if self.q == 1 else f"{self.p}/{self.q}"


# --- triple linking numbers ---

def permutation_sign(indices: Sequence[int]) -> int:
    sign = 1
    values = list(indices)
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if values[i] > values[j]:
                sign = -sign
    return sign


def canonical_triples(entries: Iterable[Tuple[Sequence[int], int]], n: int) -> TripleData:
    """
    Store alternating triple data by its values on i < j < k.

    Raises:
        InvalidPresentationError: on out-of-range indices, a nonzero value with a
            repeated index, or two entries that disagree
    """
    if isinstance(entries, dict):
        entries = entries.items()
    values: Dict[Triple, int] = {}
    for indices, value in entries:
        indices = tuple(int(x) for x in indices)
        value = int(value)
        if len(indices) != 3 or any(not 0 <= x < n for x in indices):
            raise InvalidPresentationError(f"triple index {indices} out of range for {n} components")
        if len(set(indices)) < 3:
            if value:
                raise InvalidPresentationError(f"triple linking with repeated index {indices} must be 0")
            continue
        key = tuple(sorted(indices))
        value *= permutation_sign(indices)
        if key in values and values[key] != value:
            raise InvalidPresentationError(f"conflicting triple linking values for {key}")
        values[key] = value
    return tuple(sorted((k, v) for k, v in values.items() if v))


def triple_value(triples: TripleData, i: int, j: int, k: int) -> int:
    if len({i, j, k}) < 3:
        return 0
    key = tuple(sorted((i, j, k)))
    return permutation_sign((i, j, k)) * dict(triples).get(key, 0)


@dataclass(frozen=True)
class SurgeryPresentation:
    """
    Rational surgery on an n-component framed link in S^3.

    ``linking`` is symmetric with zero diagonal. ``triple`` carries triple linking
    numbers and is only kept while the link is split (all pairwise linkings zero).
    ``triple_dropped`` records that a move discarded known triple data.
    """

    coeffs: Tuple[SurgeryCoefficient, ...] = ()
    linking: IntMatrix = field(default_factory=lambda: IntMatrix.zeros(0, 0))
    triple: Optional[TripleData] = None
    triple_dropped: bool = False
    group_kind: Optional[GroupKind] = None
    label: str = ""

    def __post_init__(self):
        n = len(self.coeffs)
        L = self.linking
        if L.rows != n or L.cols != n:
            raise InvalidPresentationError(f"linking matrix is {L.rows}x{L.cols}, expected {n}x{n}")
        for i in range(n):
            if L[i, i] != 0:
                raise InvalidPresentationError(f"linking matrix diagonal entry ({i}, {i}) must be 0")
            for j in range(i + 1, n):
                if L[i, j] != L[j, i]:
                    raise InvalidPresentationError(f"linking matrix is not symmetric at ({i}, {j})")
        if self.triple is not None:
            if not self.is_split:
                raise InvalidPresentationError("triple linking data needs a split link (all linkings 0)")
            object.__setattr__(self, "triple", canonical_triples(self.triple, n))

    @classmethod
    def from_parts(cls, coeffs: Sequence, linking=None, triple=None, **kwargs) -> "SurgeryPresentation":
        parsed = tuple(c if isinstance(c, SurgeryCoefficient) else SurgeryCoefficient.parse(c) for c in coeffs)
        n = len(parsed)
        matrix = IntMatrix.zeros(n, n) if linking is None else (
            linking if isinstance(linking, IntMatrix) else IntMatrix.from_rows(linking, cols=n))
        return cls(parsed, matrix, triple, **kwargs)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def is_split(self) -> bool:
        return all(x == 0 for x in self.linking.entries)

    @property
    def is_integral(self) -> bool:
        return all(c.q == 1 for c in self.coeffs)

    def triple_map(self) -> Dict[Triple, int]:
        return dict(self.triple or ())

    def __str__(self) -> str:
        if self.label:
            return self.label
        return "surgery[" + ", ".join(str(c) for c in self.coeffs) + "]"


@dataclass(frozen=True)
class SurgeryMove:
    """
    Add one unknotted component with coefficient q_num/(d·s).

    kind 'weak' needs gcd(q_num, d·s) = 1; kind 'type-d' also needs q_num ≡ ±1 (mod d).
    ``linkings`` are the new component's linking numbers with the existing ones.
    ``triples_with_pairs`` lists the new triple linkings μ(i, j, new) for the pairs
    i < j in lexicographic order, when the link stays split.
    """

    kind: str
    d: int
    s: int
    q_num: int
    linkings: Tuple[int, ...] = ()
    triples_with_pairs: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind not in ("weak", "type-d"):
            raise InvalidPresentationError(f"unknown move kind {self.kind!r}")
        if self.d < 2 or self.s < 1:
            raise InvalidPresentationError(f"move needs d >= 2 and s >= 1, got d={self.d}, s={self.s}")
        if gcd(self.q_num, self.d * self.s) != 1:
            raise InvalidPresentationError(
                f"numerator {self.q_num} must be relatively prime to d·s = {self.d * self.s}")
        if self.kind == "type-d" and self.q_num % self.d not in (1, self.d - 1):
            raise InvalidPresentationError(
                f"type-{self.d} move needs numerator ≡ ±1 (mod {self.d}), got {self.q_num}")

    @property
    def coefficient(self) -> SurgeryCoefficient:
        return SurgeryCoefficient.of(self.q_num, self.d * self.s)


def is_weak_type_d(c: SurgeryCoefficient, d: int) -> bool:
    """Denominator divisible by d (the numerator is then prime to it)."""
    _check_modulus(d)
    return c.q % d == 0


def is_type_d(c: SurgeryCoefficient, d: int) -> bool:
    """Shape numerator/(d·s) with numerator ≡ ±1 (mod d)."""
    return is_weak_type_d(c, d) and c.p % d in (1, d - 1)


def presentation_matrix(P: SurgeryPresentation) -> IntMatrix:
    """A with A_ii = p_i and A_ij = q_i·ℓ_ij; coker A is H_1 of the surgered manifold."""
    n = P.n
    rows = []
    for i, c in enumerate(P.coeffs):
        rows.append([c.p if i == j else c.q * P.linking[i, j] for j in range(n)])
    return IntMatrix.from_rows(rows, cols=n)


def homology_zd(P: SurgeryPresentation, d: int) -> ZdModuleStructure:
    """H_1(M; Z_d) as a Z_d-module."""
    return cokernel_mod(presentation_matrix(P), d)


def first_homology(P: SurgeryPresentation) -> Tuple[int, ...]:
    """Invariant factors of H_1(M; Z) (0 for a copy of Z), trivial factors dropped."""
    diagonal = list(smith_normal_form(presentation_matrix(P)).diagonal)
    diagonal += [0] * (P.n - len(diagonal))
    finite = [x for x in diagonal if x > 1]
    return tuple(finite + [0] * diagonal.count(0))


def homology_order(P: SurgeryPresentation) -> int:
    """|H_1(M; Z)|, or 0 when it is infinite."""
    return abs(presentation_matrix(P).determinant())


def apply_surgery(P: SurgeryPresentation, m: SurgeryMove) -> SurgeryPresentation:
    """
    Append the move's component to the presentation.

    Triple data is extended when both P and the move carry it; known triple data
    is otherwise dropped and ``triple_dropped`` set.
    """
    n = P.n
    if len(m.linkings) != n:
        raise InvalidPresentationError(f"move gives {len(m.linkings)} linking numbers for {n} components")

    rows = P.linking.to_rows()
    for i, row in enumerate(rows):
        row.append(int(m.linkings[i]))
    rows.append([int(x) for x in m.linkings] + [0])
    linking = IntMatrix.from_rows(rows, cols=n + 1)

    triple = None
    dropped = P.triple_dropped
    if P.triple is not None and m.triples_with_pairs is not None:
        if any(m.linkings):
            raise InvalidPresentationError("triple data given for a move that links the new component")
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        if len(m.triples_with_pairs) != len(pairs):
            raise InvalidPresentationError(
                f"move gives {len(m.triples_with_pairs)} triple values for {len(pairs)} pairs")
        triple = P.triple + tuple(((i, j, n), v) for (i, j), v in zip(pairs, m.triples_with_pairs))
    elif P.triple is not None:
        logger.warning(f"⚠️ Surgery move on {P} carries no triple data; dropping triple linkings")
        dropped = True

    return SurgeryPresentation(
        coeffs=P.coeffs + (m.coefficient,),
        linking=linking,
        triple=triple,
        triple_dropped=dropped,
        group_kind=None,
    )


def connected_sum(P1: SurgeryPresentation, P2: SurgeryPresentation) -> SurgeryPresentation:
    """Disjoint union of the surgery links."""
    n1 = P1.n
    if P1.n == 0:
        triple = P2.triple
    elif P2.n == 0:
        triple = P1.triple
    elif P1.triple is not None and P2.triple is not None:
        triple = P1.triple + tuple(((i + n1, j + n1, k + n1), v) for (i, j, k), v in P2.triple)
    else:
        triple = None

    kind = None
    if P1.group_kind is not None and P2.group_kind is not None:
        kind = P1.group_kind.free_product(P2.group_kind)

    label = f"{P1} # {P2}" if (P1.label or P2.label) else ""
    return SurgeryPresentation(
        coeffs=P1.coeffs + P2.coeffs,
        linking=P1.linking.block_diagonal(P2.linking),
        triple=triple,
        triple_dropped=P1.triple_dropped or P2.triple_dropped,
        group_kind=kind,
        label=label,
    )


def permute_components(P: SurgeryPresentation, order: Sequence[int]) -> SurgeryPresentation:
    """Relabel so that new component k is old component order[k]."""
    n = P.n
    if sorted(order) != list(range(n)):
        raise InvalidPresentationError(f"{list(order)} is not a permutation of {n} components")
    linking = IntMatrix.from_rows(
        [[P.linking[order[i], order[j]] for j in range(n)] for i in range(n)], cols=n)
    triple = None
    if P.triple is not None:
        triple = [((i, j, k), triple_value(P.triple, order[i], order[j], order[k]))
                  for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)]
    return replace(
        P,
        coeffs=tuple(P.coeffs[k] for k in order),
        linking=linking,
        triple=triple,
    )


def unlink_presentation(coeffs: Sequence, label: str = "", group_kind: Optional[GroupKind] = None) -> SurgeryPresentation:
    """Surgery on an unlink; the triple data is identically zero."""
    return SurgeryPresentation.from_parts(coeffs, triple=(), label=label, group_kind=group_kind)


def surgery_sequence(P: SurgeryPresentation, moves: Sequence[SurgeryMove]) -> List[SurgeryPresentation]:
    """Every intermediate presentation, starting from P."""
    chain = [P]
    for move in moves:
        chain.append(apply_surgery(chain[-1], move))
    return chain


def weak_move(d: int, s: int, q_num: int, linkings: Sequence[int] = (),
              triples_with_pairs: Optional[Sequence[int]] = None) -> SurgeryMove:
    return SurgeryMove("weak", d, s, q_num, tuple(linkings),
                       None if triples_with_pairs is None else tuple(triples_with_pairs))


def type_d_move(d: int, s: int, q_num: int, linkings: Sequence[int] = (),
                triples_with_pairs: Optional[Sequence[int]] = None) -> SurgeryMove:
    return SurgeryMove("type-d", d, s, q_num, tuple(linkings),
                       None if triples_with_pairs is None else tuple(triples_with_pairs))
