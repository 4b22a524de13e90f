"""
Exact linear algebra over Z and Z_d
Smith normal form, cokernels, Z_d-module structures and GL(n, Z_d) enumeration
"""

import logging
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from sympy import Matrix, factorint, primefactors

from config import get_budget
from core.errors import BudgetExceededError

logger = logging.getLogger(__name__)

Column = Tuple[int, ...]


def _check_modulus(d: int, minimum: int = 2):
    if not isinstance(d, int) or d < minimum:
        raise ValueError(f"modulus must be an integer >= {minimum}, got {d!r}")


@dataclass(frozen=True)
class IntMatrix:
    """Integer matrix stored row-major with arbitrary-precision entries."""

    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"negative matrix shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )
        for x in self.entries:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ValueError(f"matrix entries must be integers, got {x!r}")

    # --- constructors ---
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else (cols or 0)
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged matrix rows")
        return cls(len(rows), width, tuple(int(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        entries = [0] * (n * n)
        for i, v in enumerate(values):
            entries[i * n + i] = int(v)
        return cls(n, n, tuple(entries))

    @classmethod
    def from_columns(cls, columns: Sequence[Column]) -> "IntMatrix":
        n = len(columns)
        height = len(columns[0]) if columns else 0
        return cls(height, n, tuple(columns[j][i] for i in range(height) for j in range(n)))

    @classmethod
    def from_json(cls, data) -> "IntMatrix":
        """Load from a JSON array of arrays of decimal strings (plain integers accepted)."""
        if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
            raise ValueError("matrix must be an array of arrays")
        try:
            return cls.from_rows([[int(x) for x in r] for r in data])
        except (TypeError, ValueError) as e:
            raise ValueError(f"bad matrix entry: {e}")

    # --- views ---
    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def to_rows(self) -> List[List[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def to_json(self) -> List[List[str]]:
        return [[str(x) for x in row] for row in self.to_rows()]

    def column(self, j: int) -> Column:
        return tuple(self[i, j] for i in range(self.rows))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    # --- arithmetic ---
    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        a, b = self.to_rows(), other.to_rows()
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                out.append(sum(a[i][k] * b[k][j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def reduce(self, d: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(x % d for x in self.entries))

    def block_diagonal(self, other: "IntMatrix") -> "IntMatrix":
        rows = [r + [0] * other.cols for r in self.to_rows()]
        rows += [[0] * self.cols + r for r in other.to_rows()]
        return IntMatrix.from_rows(rows, cols=self.cols + other.cols)

    def to_sympy(self) -> Matrix:
        return Matrix(self.rows, self.cols, list(self.entries))

    def determinant(self) -> int:
        if not self.is_square:
            raise ValueError(f"determinant of a non-square {self.rows}x{self.cols} matrix")
        if self.rows == 0:
            return 1
        return int(self.to_sympy().det(method="bareiss"))


@dataclass(frozen=True)
class SmithForm:
    """U·A·V = D with U, V unimodular and D diagonal with d_1 | d_2 | ... (all >= 0)."""

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))


def _chain_from_cyclic(values: Sequence[int]) -> Tuple[int, ...]:
    """Invariant factors (ascending, all > 1) of a direct sum of finite cyclic groups."""
    powers = {}
    for v in values:
        if v > 1:
            for p, k in factorint(v).items():
                powers.setdefault(p, []).append(p ** k)
    if not powers:
        return ()
    length = max(len(lst) for lst in powers.values())
    chain = [1] * length
    for lst in powers.values():
        lst.sort(reverse=True)
        for i, q in enumerate(lst):
            chain[i] *= q
    return tuple(sorted(chain))


@dataclass(frozen=True)
class ZdModuleStructure:
    """A finitely generated Z_d-module in invariant-factor form.

    ``factors`` is the full divisor chain (ascending, every entry > 1 and dividing d).
    Factors equal to d are the free summands; two structures are equal iff their
    chains are equal.
    """

    modulus: int
    factors: Tuple[int, ...] = ()

    def __post_init__(self):
        _check_modulus(self.modulus)
        previous = 1
        for f in self.factors:
            if f <= 1 or self.modulus % f:
                raise ValueError(f"factor {f} does not divide the modulus {self.modulus}")
            if f % previous:
                raise ValueError(f"factors {self.factors} do not form a divisor chain")
            previous = f

    @classmethod
    def from_factors(cls, values: Sequence[int], d: int) -> "ZdModuleStructure":
        """Canonicalise ⊕ Z_{gcd(v, d)} (0 stands for a copy of Z) into a divisor chain."""
        _check_modulus(d)
        return cls(d, _chain_from_cyclic([gcd(int(v), d) for v in values]))

    @classmethod
    def free(cls, rank: int, d: int) -> "ZdModuleStructure":
        return cls(d, (d,) * rank)

    @property
    def rank(self) -> int:
        return sum(1 for f in self.factors if f == self.modulus)

    @property
    def order(self) -> int:
        result = 1
        for f in self.factors:
            result *= f
        return result

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    @property
    def is_free(self) -> bool:
        return self.rank == len(self.factors)

    def direct_sum(self, other: "ZdModuleStructure") -> "ZdModuleStructure":
        if other.modulus != self.modulus:
            raise ValueError(f"cannot add a Z_{self.modulus}-module to a Z_{other.modulus}-module")
        return ZdModuleStructure(self.modulus, _chain_from_cyclic(self.factors + other.factors))

    def __str__(self) -> str:
        if not self.factors:
            return "0"
        parts = []
        i = 0
        while i < len(self.factors):
            f = self.factors[i]
            k = 1
            while i + k < len(self.factors) and self.factors[i + k] == f:
                k += 1
            parts.append(f"Z_{f}" if k == 1 else f"Z_{f}^{k}")
            i += k
        return " ⊕ ".join(parts)

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "factors": list(self.factors),
            "rank": self.rank,
            "text": str(self),
        }


# --- Smith normal form ---

def _select_pivot(a: List[List[int]], t: int) -> Optional[Tuple[int, int]]:
    """Smallest nonzero |entry| in the block a[t:, t:], ties broken row-major."""
    best = None
    best_abs = None
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            x = row[j]
            if x and (best_abs is None or abs(x) < best_abs):
                best, best_abs = (i, j), abs(x)
    return best


def _add_row(mat: List[List[int]], target: int, source: int, factor: int):
    src = mat[source]
    mat[target] = [x + factor * y for x, y in zip(mat[target], src)]


def _add_column(mat: List[List[int]], target: int, source: int, factor: int):
    for row in mat:
        row[target] += factor * row[source]


def _swap_columns(mat: List[List[int]], i: int, j: int):
    for row in mat:
        row[i], row[j] = row[j], row[i]


def _first_non_multiple(a: List[List[int]], t: int, p: int) -> Optional[int]:
    for i in range(t + 1, len(a)):
        for x in a[i][t + 1:]:
            if x % p:
                return i
    return None


def _reduce_block(a, u, v, t: int) -> bool:
    """Bring a[t][t] to its final Smith value; False once the block a[t:, t:] is zero."""
    m, n = len(a), len(v)
    while True:
        pivot = _select_pivot(a, t)
        if pivot is None:
            return False
        i, j = pivot
        if i != t:
            a[t], a[i] = a[i], a[t]
            u[t], u[i] = u[i], u[t]
        if j != t:
            _swap_columns(a, t, j)
            _swap_columns(v, t, j)
        p = a[t][t]

        clean = True
        for i in range(t + 1, m):
            q = a[i][t] // p
            if q:
                _add_row(a, i, t, -q)
                _add_row(u, i, t, -q)
            if a[i][t]:
                clean = False
        for j in range(t + 1, n):
            q = a[t][j] // p
            if q:
                _add_column(a, j, t, -q)
                _add_column(v, j, t, -q)
            if a[t][j]:
                clean = False
        if not clean:
            continue

        bad = _first_non_multiple(a, t, p)
        if bad is not None:
            _add_row(a, t, bad, 1)
            _add_row(u, t, bad, 1)
            continue

        if p < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        return True


def smith_normal_form(A: IntMatrix) -> SmithForm:
    """
    Compute the Smith normal form of an integer matrix.

    The pivot is always the smallest nonzero absolute value of the remaining block
    (ties by row-major position), so the output is deterministic.

    Args:
        A: integer matrix (empty shapes allowed)

    Returns:
        SmithForm: (D, U, V) with U·A·V = D
    """
    m, n = A.rows, A.cols
    a = A.to_rows()
    u = IntMatrix.identity(m).to_rows()
    v = IntMatrix.identity(n).to_rows()

    for t in range(min(m, n)):
        if not _reduce_block(a, u, v, t):
            break

    return SmithForm(
        D=IntMatrix.from_rows(a, cols=n),
        U=IntMatrix.from_rows(u, cols=m),
        V=IntMatrix.from_rows(v, cols=n),
    )


def cokernel_mod(A: IntMatrix, d: int) -> ZdModuleStructure:
    """Structure of (Z^rows / column image of A) ⊗ Z_d."""
    _check_modulus(d)
    diagonal = list(smith_normal_form(A).diagonal)
    diagonal += [0] * (A.rows - len(diagonal))
    return ZdModuleStructure.from_factors(diagonal, d)


# --- Z_d matrices ---

def is_unit(x: int, d: int) -> bool:
    return gcd(x, d) == 1


def det_mod(A: IntMatrix, d: int) -> int:
    """Determinant of a square matrix, reduced into Z_d."""
    _check_modulus(d, minimum=1)
    if not A.is_square:
        raise ValueError(f"det_mod needs a square matrix, got {A.rows}x{A.cols}")
    return A.determinant() % d


def gl_order(n: int, d: int) -> int:
    """|GL(n, Z_d)| from the prime factorisation of d."""
    _check_modulus(d)
    order = 1
    for p, k in factorint(d).items():
        q = p ** n
        part = p ** ((k - 1) * n * n)
        for i in range(n):
            part *= q - p ** i
        order *= part
    return order


def check_budget(n: int, d: int, budget: Optional[int] = None) -> int:
    """Return |GL(n, Z_d)|, raising BudgetExceededError when it is above the budget."""
    order = gl_order(n, d)
    limit = get_budget(budget)
    if order > limit:
        logger.warning(f"GL({n}, Z_{d}) search refused: order {order} > budget {limit}")
        raise BudgetExceededError(n, d, order, limit)
    return order


def _extend_basis(basis, vector: Column, p: int):
    """Echelon basis mod p extended by vector, or None when vector is dependent."""
    v = [x % p for x in vector]
    for pivot, row in basis:
        c = v[pivot]
        if c:
            v = [(x - c * y) % p for x, y in zip(v, row)]
    lead = next((i for i, x in enumerate(v) if x), None)
    if lead is None:
        return None
    inv = pow(v[lead], -1, p)
    return basis + [(lead, [(x * inv) % p for x in v])]


def invertible_column_sequences(
    n: int,
    d: int,
    accept: Optional[Callable[[List[Column]], bool]] = None,
) -> Iterator[Tuple[Column, ...]]:
    """
    Columns of every invertible n×n matrix over Z_d, in the fixed enumeration order.

    Columns are chosen left to right, each running through Z_d^n lexicographically;
    a column is admitted only while the columns stay independent modulo every prime
    dividing d. ``accept`` is called on each admitted prefix and may prune it.
    """
    primes = primefactors(d)
    vectors = list(product(range(d), repeat=n))

    def extend(columns: List[Column], bases) -> Iterator[Tuple[Column, ...]]:
        if len(columns) == n:
            yield tuple(columns)
            return
        for vec in vectors:
            new_bases = []
            for p, basis in zip(primes, bases):
                extended = _extend_basis(basis, vec, p)
                if extended is None:
                    break
                new_bases.append(extended)
            else:
                columns.append(vec)
                if accept is None or accept(columns):
                    yield from extend(columns, new_bases)
                columns.pop()

    yield from extend([], [[] for _ in primes])


def enumerate_invertible(n: int, d: int, budget: Optional[int] = None) -> Iterator[IntMatrix]:
    """
    Stream every matrix of GL(n, Z_d) exactly once.

    Raises:
        BudgetExceededError: when |GL(n, Z_d)| is above the budget
    """
    _check_modulus(d)
    if n < 0:
        raise ValueError(f"rank must be >= 0, got {n}")
    order = check_budget(n, d, budget)
    logger.debug(f"Enumerating GL({n}, Z_{d}) ({order} elements)")
    return (IntMatrix.from_columns(cols) if n else IntMatrix.zeros(0, 0)
            for cols in invertible_column_sequences(n, d))
