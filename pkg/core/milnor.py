"""
Milnor's triple linking number μ̄(123) from a three-component PD code
Longitudes are read off the Wirtinger presentation and expanded in the Magnus ring to degree two
"""

import logging
from typing import Dict, List, Tuple

from core.errors import InvalidDiagramError
from core.links import LinkDiagram, linking_number

logger = logging.getLogger(__name__)

Letter = Tuple[int, int]  # (arc, ±1)


class MagnusSeries:
    """Element 1 + Σ a_i X_i + Σ A_ij X_i X_j of Z⟨⟨X_1..X_n⟩⟩ truncated above degree two."""

    __slots__ = ("linear", "quadratic")

    def __init__(self, linear: List[int], quadratic: List[List[int]]):
        self.linear = linear
        self.quadratic = quadratic

    @classmethod
    def one(cls, n: int) -> "MagnusSeries":
        return cls([0] * n, [[0] * n for _ in range(n)])

    @classmethod
    def generator(cls, i: int, n: int, exponent: int = 1) -> "MagnusSeries":
        """(1 + X_i)^e = 1 + e·X_i + C(e, 2)·X_i² for any integer e."""
        series = cls.one(n)
        series.linear[i] = exponent
        series.quadratic[i][i] = exponent * (exponent - 1) // 2
        return series

    def __mul__(self, other: "MagnusSeries") -> "MagnusSeries":
        a, b = self.linear, other.linear
        n = len(a)
        quadratic = [
            [self.quadratic[i][j] + other.quadratic[i][j] + a[i] * b[j] for j in range(n)]
            for i in range(n)
        ]
        return MagnusSeries([x + y for x, y in zip(a, b)], quadratic)

    def inverse(self) -> "MagnusSeries":
        a = self.linear
        n = len(a)
        quadratic = [[-self.quadratic[i][j] + a[i] * a[j] for j in range(n)] for i in range(n)]
        return MagnusSeries([-x for x in a], quadratic)


def _walk(L: LinkDiagram, start: int) -> List[Tuple[int, List[Letter]]]:
    """Follow a component from ``start``; returns each arc with its conjugating word W.

    x_arc = W x_start W⁻¹, and passing under crossing k prepends x_over^{ε_k}. The last
    entry is ``start`` again, carrying the full longitude word.
    """
    under_at: Dict[int, int] = {c[0]: k for k, c in enumerate(L.crossings)}
    word: List[Letter] = []
    visited = [(start, [])]
    x = start
    while True:
        k = under_at.get(x)
        nxt = L.successor[x]
        if k is not None and L.crossings[k][2] == nxt:
            word = [(L.crossings[k][1], L.signs[k])] + word
        visited.append((nxt, list(word)))
        x = nxt
        if x == start:
            return visited


def _longitude_words(L: LinkDiagram) -> Tuple[Dict[int, List[Letter]], List[List[Letter]]]:
    conjugators: Dict[int, List[Letter]] = {}
    longitudes = []
    for comp in L.components:
        walk = _walk(L, comp[0])
        for arc, word in walk[:-1]:
            conjugators[arc] = word
        longitudes.append(walk[-1][1])
    return conjugators, longitudes


def milnor_triple(L: LinkDiagram, depth: int = 3) -> int:
    """
    μ̄(123) of a three-component link with pairwise linking numbers zero.

    The longitude of component 3 is expanded in the Magnus ring; μ̄(123) is its
    coefficient of X_1 X_2. ``depth`` bounds the substitution of Wirtinger
    generators by conjugates of meridians; two levels already fix every degree-two
    coefficient.

    Raises:
        InvalidDiagramError: wrong component count or a nonzero linking number
    """
    if L.n_components != 3:
        raise InvalidDiagramError(f"μ̄(123) needs a 3-component link, got {L.n_components} components")
    for i, j in ((0, 1), (0, 2), (1, 2)):
        lk = linking_number(L, i, j)
        if lk:
            raise InvalidDiagramError(f"μ̄(123) needs zero linking numbers, lk({i + 1}, {j + 1}) = {lk}")
    if depth < 2:
        raise ValueError(f"substitution depth must be at least 2, got {depth}")

    owner = L.component_of()
    conjugators, longitudes = _longitude_words(L)
    n = L.n_components
    cache: Dict[Tuple[int, int], MagnusSeries] = {}

    def arc_series(arc: int, level: int) -> MagnusSeries:
        key = (arc, level)
        if key not in cache:
            meridian = MagnusSeries.generator(owner[arc], n)
            if level == 0 or not conjugators[arc]:
                cache[key] = meridian
            else:
                w = word_series(conjugators[arc], level - 1)
                cache[key] = w * meridian * w.inverse()
        return cache[key]

    def word_series(word: List[Letter], level: int) -> MagnusSeries:
        result = MagnusSeries.one(n)
        for arc, eps in word:
            factor = arc_series(arc, level)
            result = result * (factor if eps == 1 else factor.inverse())
        return result

    target = 2
    word = longitudes[target]
    own = sum(eps for arc, eps in word if owner[arc] == target)
    longitude = word_series(word, depth - 1) * MagnusSeries.generator(target, n, -own)
    value = longitude.quadratic[0][1]
    logger.debug(f"μ̄(123) of {L} = {value} (longitude word length {len(word)})")
    return value
