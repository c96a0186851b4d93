"""Ground sets, bitmask subsets and connectivity functions.

Subsets of a ground set are plain ``int`` bitmasks: bit ``i`` is set when
the ``i``-th element of the ground set is present.  A ``GroundSet`` maps
between element identifiers and bit positions.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple


class CapExceeded(RuntimeError):
    """An exhaustive routine was asked to run beyond its configured size."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds exhaustive cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class PreconditionError(ValueError):
    pass


@dataclass
class Caps:
    """Exhaustive-search limits.  Mutate ``CAPS`` or pass ``cap=`` to override."""

    axioms: int = 10
    zero_components: int = 16
    zero_components_minimality: int = 8
    tree_depth: int = 15
    branch_depth: int = 10
    node_degree: int = 20
    circuits: int = 14
    matroid_depth: int = 10
    rank_depth: int = 10
    restriction: int = 10


CAPS = Caps()


def check_cap(what: str, size: int, cap: int) -> None:
    if size > cap:
        raise CapExceeded(what, size, cap)


# -- bit helpers -------------------------------------------------------------

def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def expand(sub: int, positions: Sequence[int]) -> int:
    """Map a mask over ``range(len(positions))`` to a mask over the parent positions."""
    out = 0
    for i in bits(sub):
        out |= 1 << positions[i]
    return out


def compress(mask: int, positions: Sequence[int]) -> int:
    """Inverse of :func:`expand` for masks inside the span of ``positions``."""
    out = 0
    for i, pos in enumerate(positions):
        if mask >> pos & 1:
            out |= 1 << i
    return out


@dataclass(frozen=True)
class GroundSet:
    elements: Tuple[Hashable, ...]
    _index: Dict[Hashable, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index = {e: i for i, e in enumerate(self.elements)}
        if len(index) != len(self.elements):
            raise ValueError("ground set elements must be distinct")
        object.__setattr__(self, "_index", index)

    @classmethod
    def of(cls, elements: Iterable[Hashable]) -> "GroundSet":
        return cls(tuple(elements))

    @classmethod
    def range(cls, n: int) -> "GroundSet":
        return cls(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def index(self, element: Hashable) -> int:
        return self._index[element]

    def mask(self, elements: Iterable[Hashable]) -> int:
        return mask_of(self._index[e] for e in elements)

    def members(self, mask: int) -> List[Hashable]:
        return [self.elements[i] for i in bits(mask)]

    def complement(self, mask: int) -> int:
        return self.full & ~mask

    def subset(self, mask: int) -> "GroundSet":
        return GroundSet(tuple(self.members(mask)))


class ConnectivityOracle:
    """An integer set function on a ground set, queried by bitmask.

    Values are cached; the cache is guarded by a lock so concurrent readers
    see the same pure function.
    """

    def __init__(self, ground: GroundSet, func: Callable[[int], int], name: str = "λ"):
        self.ground = ground
        self.name = name
        self._func = func
        self._cache: Dict[int, int] = {}
        self._table: Optional[List[int]] = None
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"ConnectivityOracle({self.name}, n={self.n})"

    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def full(self) -> int:
        return self.ground.full

    def __call__(self, mask: int) -> int:
        if self._table is not None:
            return self._table[mask]
        try:
            return self._cache[mask]
        except KeyError:
            value = int(self._func(mask))
            with self._lock:
                self._cache[mask] = value
            return value

    def of(self, elements: Iterable[Hashable]) -> int:
        return self(self.ground.mask(elements))

    def table(self) -> List[int]:
        """Values on every subset, indexed by mask."""
        if self._table is None:
            values = [self(m) for m in range(1 << self.n)]
            with self._lock:
                self._table = values
        return self._table


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    axiom: Optional[str] = None  # "empty", "symmetry", "submodularity" or "nonnegativity"
    witness: Tuple[int, ...] = ()
    values: Tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def verify_axioms(oracle: ConnectivityOracle, cap: Optional[int] = None) -> AxiomReport:
    """Exhaustively check that ``oracle`` is a (non-negative) connectivity function.

    Returns the first violation found, scanning masks in increasing order.
    """
    cap = CAPS.axioms if cap is None else cap
    check_cap("verify_axioms", oracle.n, cap)
    t = oracle.table()
    full = oracle.full
    if t[0] != 0:
        return AxiomReport(False, "empty", (0,), (t[0],))
    for x in range(1 << oracle.n):
        if t[x] < 0:
            return AxiomReport(False, "nonnegativity", (x,), (t[x],))
    # E last: a symmetry failure there is just λ(∅) vs λ(E)
    for x in list(range(1, full)) + [full]:
        if t[x] != t[full ^ x]:
            return AxiomReport(False, "symmetry", (x,), (t[x], t[full ^ x]))
    # local form: f(X+a) + f(X+b) >= f(X+a+b) + f(X) for a, b outside X is
    # equivalent to submodularity over all pairs
    for x in range(1 << oracle.n):
        outside = [1 << i for i in range(oracle.n) if not x >> i & 1]
        for i, a in enumerate(outside):
            for b in outside[i + 1 :]:
                xa, xb = x | a, x | b
                if t[xa] + t[xb] < t[xa | b] + t[x]:
                    return AxiomReport(False, "submodularity", (xa, xb), (t[xa], t[xb], t[xa | b], t[x]))
    return AxiomReport(True)


def restrict_oracle(oracle: ConnectivityOracle, k: int) -> ConnectivityOracle:
    """The restriction of ``oracle`` to the subset ``k``, which must have value 0.

    The result lives on its own ground set (the members of ``k`` in order).
    """
    value = oracle(k)
    if value != 0:
        raise PreconditionError(f"restriction needs λ(K) = 0, got {value}")
    positions = list(bits(k))
    return ConnectivityOracle(
        oracle.ground.subset(k),
        lambda sub: oracle(expand(sub, positions)),
        name=f"{oracle.name}|K",
    )


def zero_components(oracle: ConnectivityOracle, cap: Optional[int] = None) -> List[int]:
    """Finest partition of the ground set into parts of value 0.

    Sets of value 0 are closed under union, intersection and complement for a
    non-negative connectivity function, so the parts are the atoms of that
    Boolean algebra: the part of ``e`` is the intersection of all zero sets
    containing ``e``.  Parts are returned ordered by their lowest element.
    """
    cap = CAPS.zero_components if cap is None else cap
    check_cap("zero_components", oracle.n, cap)
    n = oracle.n
    full = oracle.full
    atom = [full] * n
    for x in range(1, 1 << n):
        if oracle(x) == 0:
            for i in bits(x):
                atom[i] &= x
    parts: List[int] = []
    seen = 0
    for i in range(n):
        if not seen >> i & 1:
            parts.append(atom[i])
            seen |= atom[i]
    return parts


def is_partition(parts: Sequence[int], full: int) -> bool:
    acc = 0
    for p in parts:
        if p == 0 or acc & p:
            return False
        acc |= p
    return acc == full
