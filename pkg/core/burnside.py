"""
Burnside quotients and finite-group certificates
A verified finite nonabelian group of exponent dividing d shows that B(r, d) is nonabelian
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime, primefactors

import config
from core.errors import InvalidGroupError, NoCertificateError
from core.verdict import DISTINGUISHED, INCONCLUSIVE, CongruenceVerdict
from core.zmod import ZdModuleStructure, _check_modulus

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupKind:
    """What is known about a fundamental group: free of some rank, or abelian with given factors.

    Factor 0 stands for a copy of Z. free(0) is the trivial group and free(1) is Z,
    so both are stored as abelian.
    """

    kind: str
    rank: int = 0
    factors: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("free", "abelian"):
            raise ValueError(f"unknown group kind {self.kind!r}")

    @classmethod
    def free(cls, rank: int) -> "GroupKind":
        if rank < 0:
            raise ValueError(f"free rank must be >= 0, got {rank}")
        if rank == 0:
            return cls.abelian(())
        if rank == 1:
            return cls.abelian((0,))
        return cls("free", rank=rank)

    @classmethod
    def abelian(cls, factors: Sequence[int]) -> "GroupKind":
        values = [abs(int(f)) for f in factors]
        finite = sorted(f for f in values if f > 1)
        infinite = [0] * values.count(0)
        return cls("abelian", factors=tuple(finite + infinite))

    @property
    def is_abelian(self) -> bool:
        return self.kind == "abelian"

    @property
    def is_trivial(self) -> bool:
        return self.is_abelian and not self.factors

    @property
    def is_free_nonabelian(self) -> bool:
        return self.kind == "free" and self.rank >= 2

    def free_product(self, other: "GroupKind") -> Optional["GroupKind"]:
        """Kind of the fundamental group of a connected sum, when it is one we track."""
        if self.is_trivial:
            return other
        if other.is_trivial:
            return self
        ranks = []
        for g in (self, other):
            if g.kind == "free":
                ranks.append(g.rank)
            elif g.factors == (0,):
                ranks.append(1)
            else:
                return None
        return GroupKind.free(sum(ranks))

    def to_dict(self) -> Dict:
        if self.kind == "free":
            return {"kind": "free", "rank": self.rank}
        return {"kind": "abelian", "factors": list(self.factors)}

    @classmethod
    def from_dict(cls, data: Dict) -> "GroupKind":
        if data.get("kind") == "free":
            return cls.free(int(data["rank"]))
        if data.get("kind") == "abelian":
            return cls.abelian([int(f) for f in data.get("factors", [])])
        raise ValueError(f"unknown group kind {data.get('kind')!r}")

    def __str__(self) -> str:
        if self.kind == "free":
            return f"free({self.rank})"
        if not self.factors:
            return "trivial"
        return "abelian(" + " × ".join("Z" if f == 0 else f"Z_{f}" for f in self.factors) + ")"


# --- Finite groups ---

class FiniteGroup(ABC):
    """Finite group on the elements 0..order-1."""

    order: int
    identity: int = 0
    name: str = ""

    @abstractmethod
    def multiply(self, a: int, b: int) -> int:
        ...

    @abstractmethod
    def inverse(self, a: int) -> int:
        ...

    def elements(self) -> range:
        return range(self.order)

    def power(self, x: int, n: int) -> int:
        if n < 0:
            x, n = self.inverse(x), -n
        result = self.identity
        while n:
            if n & 1:
                result = self.multiply(result, x)
            x = self.multiply(x, x)
            n >>= 1
        return result

    def commute(self, a: int, b: int) -> bool:
        return self.multiply(a, b) == self.multiply(b, a)

    def exponent_divides(self, d: int) -> bool:
        """True when x^d is the identity for every element."""
        return all(self.power(x, d) == self.identity for x in self.elements())

    def is_abelian(self) -> bool:
        return all(self.commute(a, b) for a in self.elements() for b in range(a + 1, self.order))

    def describe(self) -> Dict:
        return {"name": self.name, "order": self.order, "identity": self.identity}


class FiniteGroupTable(FiniteGroup):
    """
    Group given by its full multiplication table.

    The constructor checks closure, identity, inverses and associativity, so
    an instance is always a group.

    Raises:
        InvalidGroupError: when the table is not a group table
    """

    def __init__(self, mult: Sequence[Sequence[int]], identity: int = 0, name: str = ""):
        table = np.asarray(mult, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise InvalidGroupError(f"multiplication table must be square and non-empty, got shape {table.shape}")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise InvalidGroupError(f"table entries must lie in 0..{n - 1}")
        if not 0 <= identity < n:
            raise InvalidGroupError(f"identity {identity} is not an element")

        elements = np.arange(n)
        if not (np.array_equal(table[identity], elements) and np.array_equal(table[:, identity], elements)):
            raise InvalidGroupError(f"element {identity} is not a two-sided identity")

        hits = table == identity
        if not (hits.any(axis=1).all() and hits.any(axis=0).all()):
            raise InvalidGroupError("some element has no inverse")
        inverses = hits.argmax(axis=1)
        if not np.array_equal(table[inverses, elements], np.full(n, identity)):
            raise InvalidGroupError("left and right inverses differ")

        for a in range(n):
            # (a*b)*c against a*(b*c) for every b, c
            if not np.array_equal(table[table[a], :], table[a][table]):
                raise InvalidGroupError(f"multiplication is not associative at element {a}")

        self._table = table
        self._rows: List[List[int]] = table.tolist()
        self._inverses: List[int] = inverses.tolist()
        self.order = n
        self.identity = identity
        self.name = name or f"table({n})"

    @property
    def mult(self) -> List[List[int]]:
        return [list(row) for row in self._rows]

    def multiply(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def inverse(self, a: int) -> int:
        return self._inverses[a]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self._table, self._table.T))

    def exponent_divides(self, d: int) -> bool:
        # repeated squaring over all elements at once
        result = np.full(self.order, self.identity, dtype=np.int64)
        base = np.arange(self.order)
        n = d
        while n:
            if n & 1:
                result = self._table[result, base]
            base = self._table[base, base]
            n >>= 1
        return bool((result == self.identity).all())

    def describe(self) -> Dict:
        info = super().describe()
        info["representation"] = "table"
        return info


class UnitriangularGroup(FiniteGroup):
    """
    Upper unitriangular 3×3 matrices over Z_p (the Heisenberg group of order p^3).

    Element a·p² + b·p + c is the matrix [[1, a, c], [0, 1, b], [0, 0, 1]]; the
    product (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a·b'). Associativity
    is that of matrix multiplication, so no table is stored.
    """

    def __init__(self, p: int):
        if not isprime(p):
            raise InvalidGroupError(f"UnitriangularGroup needs a prime, got {p}")
        self.p = p
        self.order = p ** 3
        self.identity = 0
        self.name = f"UT(3, Z_{p})"

    def encode(self, a: int, b: int, c: int) -> int:
        p = self.p
        return (a % p) * p * p + (b % p) * p + (c % p)

    def decode(self, x: int) -> Tuple[int, int, int]:
        p = self.p
        return x // (p * p), (x // p) % p, x % p

    def multiply(self, x: int, y: int) -> int:
        a, b, c = self.decode(x)
        a2, b2, c2 = self.decode(y)
        return self.encode(a + a2, b + b2, c + c2 + a * b2)

    def inverse(self, x: int) -> int:
        a, b, c = self.decode(x)
        return self.encode(-a, -b, -c + a * b)

    def _products(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        p = self.p
        a, b, c = u
        a2, b2, c2 = v
        return np.stack([(a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p])

    def exponent_divides(self, d: int) -> bool:
        # repeated squaring on the (a, b, c) coordinates of every element at once
        p = self.p
        x = np.arange(self.order, dtype=np.int64)
        base = np.stack([x // (p * p), (x // p) % p, x % p])
        result = np.zeros_like(base)
        n = d
        while n:
            if n & 1:
                result = self._products(result, base)
            base = self._products(base, base)
            n >>= 1
        return not result.any()

    def to_table(self) -> FiniteGroupTable:
        rows = [[self.multiply(x, y) for y in self.elements()] for x in self.elements()]
        return FiniteGroupTable(rows, identity=0, name=self.name)

    def describe(self) -> Dict:
        info = super().describe()
        info["representation"] = "unitriangular"
        info["prime"] = self.p
        return info


def heisenberg_group(p: int, table_limit: Optional[int] = None) -> FiniteGroup:
    """Heisenberg group mod p, as an explicit table when its order is within the table limit."""
    group = UnitriangularGroup(p)
    limit = config.TABLE_LIMIT if table_limit is None else table_limit
    if group.order <= limit:
        return group.to_table()
    logger.debug(f"{group.name} has order {group.order} > {limit}; using matrix multiplication")
    return group


def dihedral_group_8() -> FiniteGroupTable:
    """D8 with element i + 4j standing for r^i s^j."""
    rows = []
    for x in range(8):
        i, j = x % 4, x // 4
        row = []
        for y in range(8):
            k, l = y % 4, y // 4
            row.append((i + (-1) ** j * k) % 4 + 4 * ((j + l) % 2))
        rows.append(row)
    return FiniteGroupTable(rows, identity=0, name="D8")


def cyclic_group(n: int) -> FiniteGroupTable:
    return FiniteGroupTable([[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z_{n}")


# --- Certificates ---

@dataclass(frozen=True)
class BurnsideCertificate:
    """A finite group and images of the r free generators, showing B(r, d) is nonabelian."""

    d: int
    r: int
    group: FiniteGroup
    images: Tuple[int, ...]

    def to_dict(self) -> Dict:
        if isinstance(self.group, UnitriangularGroup):
            group = {"kind": "unitriangular", "p": self.group.p}
        else:
            group = {"kind": "table", "table": [x for row in self.group.mult for x in row]}
        return {
            "d": self.d,
            "r": self.r,
            "order": self.group.order,
            "group": group,
            "images": list(self.images),
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "BurnsideCertificate":
        """
        Rebuild a certificate; a table that is not a group raises InvalidGroupError.

        Raises:
            ValueError: when fields are missing or have the wrong shape
        """
        try:
            d, r = int(data["d"]), int(data["r"])
            group_data = data["group"]
            images = tuple(int(x) for x in data["images"])
            if group_data["kind"] == "unitriangular":
                group: FiniteGroup = UnitriangularGroup(int(group_data["p"]))
            elif group_data["kind"] == "table":
                flat = [int(x) for x in group_data["table"]]
                order = int(data.get("order") or round(len(flat) ** 0.5))
                if order * order != len(flat):
                    raise ValueError(f"table of {len(flat)} entries is not {order}x{order}")
                group = FiniteGroupTable([flat[i * order:(i + 1) * order] for i in range(order)],
                                         identity=int(group_data.get("identity", 0)))
            else:
                raise ValueError(f"unknown group kind {group_data['kind']!r}")
        except (KeyError, TypeError) as e:
            raise ValueError(f"malformed certificate: {e}") from e
        return cls(d, r, group, images)


def make_certificate(d: int, r: int, table_limit: Optional[int] = None) -> BurnsideCertificate:
    """
    Build a certificate that B(r, d) is nonabelian.

    Uses the Heisenberg group mod the smallest odd prime dividing d, or D8 when 4 | d.
    The first two images are non-commuting generators; the rest map to the identity.

    Raises:
        NoCertificateError: when d <= 2 or r < 2
    """
    if d <= 2:
        raise NoCertificateError(f"certificates need d > 2: B({r}, {d}) is abelian")
    if r < 2:
        raise NoCertificateError(f"certificates need r > 1: B({r}, {d}) is cyclic")

    odd = [p for p in primefactors(d) if p % 2]
    if odd:
        p = odd[0]
        group = heisenberg_group(p, table_limit)
        x, y = p * p, p  # (1, 0, 0) and (0, 1, 0)
    elif d % 4 == 0:
        group = dihedral_group_8()
        x, y = 1, 4  # r and s
    else:
        raise NoCertificateError(f"no certificate group is known for d = {d}")

    certificate = BurnsideCertificate(d, r, group, (x, y) + (group.identity,) * (r - 2))
    if not verify_certificate(certificate):
        logger.error(f"❌ Certificate for B({r}, {d}) from {group.name} failed verification")
        raise NoCertificateError(f"certificate for B({r}, {d}) failed verification")
    logger.info(f"✅ B({r}, {d}) is nonabelian, witnessed by {group.name}")
    return certificate


def verify_certificate(c: BurnsideCertificate) -> bool:
    """True iff the group has exponent dividing d and some two images fail to commute."""
    if len(c.images) != c.r or any(not 0 <= x < c.group.order for x in c.images):
        logger.warning(f"⚠️ Certificate images {c.images} do not match r = {c.r}")
        return False
    if not c.group.exponent_divides(c.d):
        logger.warning(f"⚠️ {c.group.name} does not have exponent dividing {c.d}")
        return False
    for i, a in enumerate(c.images):
        for b in c.images[i + 1:]:
            if not c.group.commute(a, b):
                return True
    logger.warning(f"⚠️ All certificate images commute in {c.group.name}")
    return False


def abelian_burnside(invariant_factors: Sequence[int], d: int) -> ZdModuleStructure:
    """B of an abelian group ⊕ Z_{n_i} (0 for Z) is ⊕ Z_{gcd(n_i, d)}."""
    return ZdModuleStructure.from_factors(invariant_factors, d)


def burnside_obstruction(
    kind_a: Optional[GroupKind],
    kind_b: Optional[GroupKind],
    d: int,
    table_limit: Optional[int] = None,
) -> CongruenceVerdict:
    """
    Compare Burnside quotients of two fundamental groups.

    Distinguished when one group is abelian and the other free of rank >= 2 with
    d > 2: B(π1, d) is then abelian on one side and nonabelian on the other.
    """
    _check_modulus(d)
    payload = {"d": d, "a": str(kind_a) if kind_a else None, "b": str(kind_b) if kind_b else None}
    if kind_a is None or kind_b is None:
        return CongruenceVerdict(INCONCLUSIVE, "fundamental group not modeled", "burnside", payload)

    pair = None
    if kind_a.is_abelian and kind_b.is_free_nonabelian:
        pair = (kind_a, kind_b)
    elif kind_b.is_abelian and kind_a.is_free_nonabelian:
        pair = (kind_b, kind_a)
    if pair is None:
        return CongruenceVerdict(
            INCONCLUSIVE, "no Burnside obstruction between these group kinds", "burnside", payload)

    abelian, free = pair
    if d <= 2:
        return CongruenceVerdict(
            INCONCLUSIVE, f"B({free.rank}, 2) is abelian", "burnside", payload)

    certificate = make_certificate(d, free.rank, table_limit)
    payload["abelian_quotient"] = str(abelian_burnside(abelian.factors, d))
    payload["certificate"] = {
        "group": certificate.group.name,
        "order": certificate.group.order,
        "images": list(certificate.images),
    }
    return CongruenceVerdict(
        DISTINGUISHED,
        f"B(π1, {d}) is abelian for {abelian} but nonabelian for {free}",
        "burnside",
        payload,
    )
