"""
Link diagrams in PD notation, braid words and their closures
"""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation

from core.errors import InvalidDiagramError

logger = logging.getLogger(__name__)

Crossing = Tuple[int, int, int, int]


@dataclass(frozen=True)
class LinkDiagram:
    """
    Planar diagram code of an oriented link.

    Each crossing (a, b, c, d) lists its four arcs counterclockwise starting from the
    incoming under-strand, so the under strand runs a → c. The crossing is positive
    when the over strand runs d → b. ``components`` lists each component's arcs in
    traversal order; a component with one arc and no crossings is a free circle.
    ``signs`` is derived from the components when not given.
    """

    crossings: Tuple[Crossing, ...]
    components: Tuple[Tuple[int, ...], ...]
    signs: Tuple[int, ...] = ()
    name: str = ""
    successor: Dict[int, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        crossings = tuple(tuple(int(x) for x in c) for c in self.crossings)
        components = tuple(tuple(int(x) for x in comp) for comp in self.components)
        object.__setattr__(self, "crossings", crossings)
        object.__setattr__(self, "components", components)
        if any(len(c) != 4 for c in crossings):
            raise InvalidDiagramError("every crossing needs exactly four arc labels")
        if not components or any(not comp for comp in components):
            raise InvalidDiagramError("a diagram needs at least one non-empty component")

        arcs = [x for comp in components for x in comp]
        if len(set(arcs)) != len(arcs):
            raise InvalidDiagramError("an arc label appears in more than one place in the components")
        counts = Counter(x for c in crossings for x in c)
        known = set(arcs)
        for x in counts:
            if x not in known:
                raise InvalidDiagramError(f"arc {x} appears in a crossing but in no component")
        for comp in components:
            for x in comp:
                expected = 0 if (len(comp) == 1 and counts[x] == 0) else 2
                if counts[x] != expected:
                    raise InvalidDiagramError(f"arc {x} appears {counts[x]} times, expected {expected}")

        signs = self._match_passages(crossings, components, tuple(int(s) for s in self.signs))
        object.__setattr__(self, "signs", signs)

    def _match_passages(self, crossings, components, signs) -> Tuple[int, ...]:
        if signs and (len(signs) != len(crossings) or any(s not in (1, -1) for s in signs)):
            raise InvalidDiagramError("orientations must give +1 or -1 for every crossing")

        remaining = Counter()
        for comp in components:
            if len(comp) == 1 and not any(comp[0] in c for c in crossings):
                continue
            for t, x in enumerate(comp):
                remaining[(x, comp[(t + 1) % len(comp)])] += 1

        successor: Dict[int, int] = {}
        for k, (a, b, c, d) in enumerate(crossings):
            if remaining[(a, c)] == 0:
                raise InvalidDiagramError(f"crossing {k}: under strand {a} → {c} is not a step of any component")
            remaining[(a, c)] -= 1
            successor[a] = c

        resolved: List[Optional[int]] = list(signs) if signs else [None] * len(crossings)
        pending = [k for k in range(len(crossings))]
        while pending:
            progress = False
            for k in list(pending):
                a, b, c, d = crossings[k]
                forward = remaining[(d, b)] > 0
                backward = remaining[(b, d)] > 0
                sign = resolved[k]
                if sign is None:
                    if forward and backward:
                        continue
                    if not (forward or backward):
                        raise InvalidDiagramError(f"crossing {k}: over strand {b}, {d} is not a step of any component")
                    sign = 1 if forward else -1
                step = (d, b) if sign == 1 else (b, d)
                if remaining[step] == 0 or (step[0] == step[1] and not signs):
                    raise InvalidDiagramError(f"crossing {k}: over strand {step[0]} → {step[1]} does not match the components")
                remaining[step] -= 1
                successor[step[0]] = step[1]
                resolved[k] = sign
                pending.remove(k)
                progress = True
            if not progress:
                raise InvalidDiagramError(
                    f"over-strand direction is ambiguous at crossings {pending}; supply orientations")

        for comp in components:
            for t, x in enumerate(comp):
                if len(comp) == 1 and x not in successor:
                    successor[x] = x
                elif successor.get(x) != comp[(t + 1) % len(comp)]:
                    raise InvalidDiagramError(f"component {comp} is not traversed consistently at arc {x}")
        self.successor.clear()
        self.successor.update(successor)
        return tuple(resolved)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self) -> List[int]:
        return sorted(x for comp in self.components for x in comp)

    def component_of(self) -> Dict[int, int]:
        return {x: i for i, comp in enumerate(self.components) for x in comp}

    def strand_components(self, k: int) -> Tuple[int, int]:
        """(under component, over component) at crossing k."""
        owner = self.component_of()
        a, b, _, _ = self.crossings[k]
        return owner[a], owner[b]

    def free_circles(self) -> List[int]:
        """Indices of components that meet no crossing."""
        used = {x for c in self.crossings for x in c}
        return [i for i, comp in enumerate(self.components) if comp[0] not in used]

    def to_json(self) -> Dict:
        return {
            "crossings": [list(c) for c in self.crossings],
            "components": [list(c) for c in self.components],
            "orientations": list(self.signs),
        }

    @classmethod
    def from_json(cls, data: Dict, name: str = "") -> "LinkDiagram":
        try:
            return cls(
                crossings=tuple(tuple(c) for c in data.get("crossings", [])),
                components=tuple(tuple(c) for c in data["components"]),
                signs=tuple(data.get("orientations") or ()),
                name=name or data.get("name", ""),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidDiagramError(f"malformed PD code: {e}") from e

    def __str__(self) -> str:
        return self.name or f"PD[{self.n_crossings} crossings, {self.n_components} components]"


def linking_number(L: LinkDiagram, i: int, j: int) -> int:
    """Half the sum of crossing signs between components i and j."""
    if i == j or not (0 <= i < L.n_components and 0 <= j < L.n_components):
        raise InvalidDiagramError(f"linking number needs two distinct components, got {i} and {j}")
    total = 0
    for k, sign in enumerate(L.signs):
        if set(L.strand_components(k)) == {i, j}:
            total += sign
    if total % 2:
        raise InvalidDiagramError(f"odd crossing-sign sum {total} between components {i} and {j}")
    return total // 2


def linking_matrix(L: LinkDiagram) -> List[List[int]]:
    n = L.n_components
    return [[0 if i == j else linking_number(L, i, j) for j in range(n)] for i in range(n)]


def reverse_component(L: LinkDiagram, index: int) -> LinkDiagram:
    """Reverse the orientation of one component."""
    if not 0 <= index < L.n_components:
        raise InvalidDiagramError(f"no component {index}")
    owner = L.component_of()
    crossings = []
    signs = []
    for k, (a, b, c, d) in enumerate(L.crossings):
        under_in = owner[a] == index
        over_in = owner[b] == index
        crossings.append((c, d, a, b) if under_in else (a, b, c, d))
        signs.append(-L.signs[k] if under_in != over_in else L.signs[k])
    comp = L.components[index]
    components = list(L.components)
    components[index] = (comp[0],) + tuple(reversed(comp[1:]))
    return LinkDiagram(tuple(crossings), tuple(components), tuple(signs), name=L.name)


def relabel_components(L: LinkDiagram, order: Sequence[int]) -> LinkDiagram:
    """New component k is old component order[k]."""
    if sorted(order) != list(range(L.n_components)):
        raise InvalidDiagramError(f"{list(order)} is not a permutation of the components")
    return LinkDiagram(L.crossings, tuple(L.components[k] for k in order), L.signs, name=L.name)


def split_pieces(L: LinkDiagram) -> List[LinkDiagram]:
    """Connected pieces of the diagram; a free circle is a piece of its own."""
    owner = L.component_of()
    parent = list(range(L.n_components))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c, d in L.crossings:
        ra, rb = find(owner[a]), find(owner[b])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    groups: Dict[int, List[int]] = defaultdict(list)
    for i in range(L.n_components):
        groups[find(i)].append(i)
    if len(groups) == 1:
        return [L]

    pieces = []
    for members in sorted(groups.values()):
        keep = set(members)
        ks = [k for k in range(L.n_crossings) if owner[L.crossings[k][0]] in keep]
        pieces.append(LinkDiagram(
            tuple(L.crossings[k] for k in ks),
            tuple(L.components[i] for i in members),
            tuple(L.signs[k] for k in ks),
        ))
    return pieces


# --- braids ---

@dataclass(frozen=True)
class BraidWord:
    """Word in the Artin generators: ±i is σ_i^{±1}, and σ_i takes strand i over strand i+1."""

    strands: int
    word: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(g) for g in self.word))
        if self.strands < 1:
            raise InvalidDiagramError(f"a braid needs at least one strand, got {self.strands}")
        for g in self.word:
            if g == 0 or abs(g) >= self.strands:
                raise InvalidDiagramError(f"generator {g} is not valid on {self.strands} strands")

    def to_json(self) -> Dict:
        return {"strands": self.strands, "word": list(self.word)}

    @classmethod
    def from_json(cls, data: Dict) -> "BraidWord":
        try:
            return cls(int(data["strands"]), tuple(int(g) for g in data.get("word", [])))
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidDiagramError(f"malformed braid: {e}") from e

    def __str__(self) -> str:
        letters = " ".join(f"s{g}" if g > 0 else f"S{-g}" for g in self.word)
        return f"braid[{self.strands}]({letters})"


def braid_closure(b: BraidWord, name: str = "") -> LinkDiagram:
    """
    PD code of the closure of a braid drawn bottom to top.

    Strand positions start with arcs 1..n; each crossing opens two new arcs, and the
    arcs leaving the top are identified with the ones entering at the bottom.
    """
    positions = list(range(1, b.strands + 1))
    next_label = b.strands + 1
    raw: List[Crossing] = []
    signs: List[int] = []
    for g in b.word:
        i = abs(g) - 1
        left, right = positions[i], positions[i + 1]
        out_left, out_right = next_label, next_label + 1
        next_label += 2
        if g > 0:
            # under strand SE → NW, over strand SW → NE
            raw.append((right, out_right, out_left, left))
            signs.append(1)
        else:
            # under strand SW → NE, over strand SE → NW
            raw.append((left, right, out_right, out_left))
            signs.append(-1)
        positions[i], positions[i + 1] = out_left, out_right

    closing = {label: k + 1 for k, label in enumerate(positions)}
    crossings = [tuple(closing.get(x, x) for x in c) for c in raw]
    used = sorted({x for c in crossings for x in c} | set(range(1, b.strands + 1)))
    compact = {x: i + 1 for i, x in enumerate(used)}
    crossings = [tuple(compact[x] for x in c) for c in crossings]

    successor: Dict[int, int] = {}
    for (a, bb, c, d), sign in zip(crossings, signs):
        successor[a] = c
        if sign == 1:
            successor[d] = bb
        else:
            successor[bb] = d
    components = []
    seen = set()
    for start in range(1, b.strands + 1):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        x = successor.get(start, start)
        while x != start:
            comp.append(x)
            seen.add(x)
            x = successor[x]
        components.append(tuple(comp))

    return LinkDiagram(tuple(crossings), tuple(components), tuple(signs), name=name or str(b))


def braid_permutation(b: BraidWord) -> Permutation:
    perm = Permutation(list(range(b.strands)))
    for g in b.word:
        i = abs(g) - 1
        perm = perm * Permutation(i, i + 1, size=b.strands)
    return perm


def component_count(b: BraidWord) -> int:
    """Number of components of the closure: cycles of the underlying permutation."""
    return braid_permutation(b).cycles


def apply_d_move(b: BraidWord, position: int, i: int, sign: int, d: int) -> BraidWord:
    """Insert σ_i^{±d} before word[position]."""
    _check_d_move(b, position, i, sign, d)
    word = b.word[:position] + (sign * i,) * d + b.word[position:]
    return BraidWord(b.strands, word)


def remove_d_move(b: BraidWord, position: int, i: int, sign: int, d: int) -> BraidWord:
    """Delete the block σ_i^{±d} starting at word[position]."""
    _check_d_move(b, position, i, sign, d)
    if b.word[position:position + d] != (sign * i,) * d:
        raise InvalidDiagramError(f"no block σ_{i}^{sign * d} at position {position}")
    return BraidWord(b.strands, b.word[:position] + b.word[position + d:])


def _check_d_move(b: BraidWord, position: int, i: int, sign: int, d: int):
    if d < 2:
        raise InvalidDiagramError(f"d-moves need d >= 2, got {d}")
    if sign not in (1, -1):
        raise InvalidDiagramError(f"d-move sign must be ±1, got {sign}")
    if not 1 <= i < b.strands:
        raise InvalidDiagramError(f"generator index {i} is not valid on {b.strands} strands")
    if not 0 <= position <= len(b.word):
        raise InvalidDiagramError(f"position {position} is outside the word of length {len(b.word)}")


def torus_braid(p: int, q: int) -> BraidWord:
    """(σ_1 ⋯ σ_{p-1})^q, whose closure is the torus link T(p, q)."""
    if p < 1:
        raise InvalidDiagramError(f"torus braid needs p >= 1, got {p}")
    base = tuple(range(1, p))
    if q < 0:
        base = tuple(-g for g in reversed(base))
    return BraidWord(p, base * abs(q))


def unlink(c: int) -> LinkDiagram:
    if c < 1:
        raise InvalidDiagramError(f"an unlink needs at least one component, got {c}")
    return braid_closure(BraidWord(c), name=f"Unlink({c})")


@dataclass(frozen=True)
class DBCReference:
    """The double branched cover of S^3 along a link."""

    link: LinkDiagram
    label: str = ""
    braid: Optional[BraidWord] = None

    def __str__(self) -> str:
        return self.label or f"Σ_2({self.link})"
