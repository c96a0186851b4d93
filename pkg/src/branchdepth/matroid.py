"""Matroids as rank oracles, with linear, graphic, uniform, dual and minor backends.

Also: circuits, components, the contraction / deletion /
contraction-deletion depths, and fundamental graphs of binary matroids.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .connectivity import (
    CAPS,
    ConnectivityOracle,
    GroundSet,
    PreconditionError,
    bits,
    check_cap,
    compress,
    expand,
    popcount,
    zero_components,
)
from .gf import GFMatrix, gf2_rank_bits, rank as gf_rank
from .graph import Graph


class Matroid:
    """Base class: subclasses implement ``_rank`` on bitmasks over ``ground``."""

    backend = "abstract"

    def __init__(self, ground: GroundSet, name: str = ""):
        self.ground = ground
        self.name = name
        self._cache: Dict[int, int] = {}
        self._table: Optional[List[int]] = None

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<{type(self).__name__}{label} n={self.n} r={self.rank(self.full)}>"

    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def full(self) -> int:
        return self.ground.full

    def _rank(self, mask: int) -> int:
        raise NotImplementedError

    def rank(self, mask: int) -> int:
        if self._table is not None:
            return self._table[mask]
        r = self._cache.get(mask)
        if r is None:
            r = self._cache[mask] = self._rank(mask)
        return r

    def rank_table(self) -> List[int]:
        if self._table is None:
            self._table = [self.rank(m) for m in range(1 << self.n)]
        return self._table

    def is_independent(self, mask: int) -> bool:
        return self.rank(mask) == popcount(mask)

    def connectivity(self, mask: int) -> int:
        return self.rank(mask) + self.rank(self.full & ~mask) - self.rank(self.full)

    def oracle(self) -> ConnectivityOracle:
        return ConnectivityOracle(self.ground, self.connectivity, name=f"λ_M[{self.name}]")

    def dual(self) -> "DualMatroid":
        return DualMatroid(self)

    def minor(self, deleted: int = 0, contracted: int = 0) -> "MinorMatroid":
        return MinorMatroid(self, deleted, contracted)

    def delete(self, mask: int) -> "MinorMatroid":
        return MinorMatroid(self, mask, 0)

    def contract(self, mask: int) -> "MinorMatroid":
        return MinorMatroid(self, 0, mask)

    def restrict(self, mask: int) -> "MinorMatroid":
        return MinorMatroid(self, self.full & ~mask, 0)

    def bases(self) -> List[int]:
        r = self.rank(self.full)
        return [
            m for m in (sum(1 << i for i in c) for c in itertools.combinations(range(self.n), r))
            if self.rank(m) == r
        ]

    def independent_sets(self) -> List[int]:
        return [m for m in range(1 << self.n) if self.is_independent(m)]


class LinearMatroid(Matroid):
    """Column matroid of a matrix over GF(p)."""

    backend = "linear"

    def __init__(self, matrix: GFMatrix, labels: Optional[Iterable[Hashable]] = None, name: str = ""):
        ground = GroundSet.of(labels) if labels is not None else GroundSet.range(matrix.ncols)
        if len(ground) != matrix.ncols:
            raise ValueError("one label per column is required")
        super().__init__(ground, name)
        self.matrix = matrix
        self.p = matrix.p
        self._cols = [matrix.column(j) for j in range(matrix.ncols)]
        self._bitcols = [sum(x << i for i, x in enumerate(col)) for col in self._cols]

    def _rank(self, mask: int) -> int:
        if self.p == 2:
            return gf2_rank_bits(self._bitcols[j] for j in bits(mask))
        return gf_rank([self._cols[j] for j in bits(mask)], self.p)


class GraphicMatroid(Matroid):
    """Cycle matroid of a multigraph: forests are independent."""

    backend = "graphic"

    def __init__(self, graph: Graph, name: str = ""):
        super().__init__(graph.edge_names, name or graph.name)
        self.graph = graph

    def _rank(self, mask: int) -> int:
        parent = list(range(self.graph.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        r = 0
        for i in bits(mask):
            a, b = self.graph.edges[i]
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                r += 1
        return r


class UniformMatroid(Matroid):
    backend = "uniform"

    def __init__(self, r: int, n: int, labels: Optional[Iterable[Hashable]] = None):
        if not 0 <= r <= n:
            raise ValueError(f"U_{{{r},{n}}} needs 0 <= r <= n")
        ground = GroundSet.of(labels) if labels is not None else GroundSet.range(n)
        super().__init__(ground, f"U{r},{n}")
        self.r = r

    def _rank(self, mask: int) -> int:
        return min(popcount(mask), self.r)


class DualMatroid(Matroid):
    backend = "dual"

    def __init__(self, base: Matroid):
        super().__init__(base.ground, f"{base.name}*" if base.name else "")
        self.base = base

    def _rank(self, mask: int) -> int:
        b = self.base
        return popcount(mask) + b.rank(b.full & ~mask) - b.rank(b.full)

    def dual(self) -> Matroid:
        return self.base


class MinorMatroid(Matroid):
    """``base / contracted \\ deleted`` on the remaining elements, in base order."""

    backend = "minor"

    def __init__(self, base: Matroid, deleted: int = 0, contracted: int = 0):
        if deleted & contracted:
            raise PreconditionError("deleted and contracted sets must be disjoint")
        keep = base.full & ~(deleted | contracted)
        super().__init__(base.ground.subset(keep), base.name)
        self.base = base
        self.deleted = deleted
        self.contracted = contracted
        self.positions = list(bits(keep))
        self._rt = base.rank(contracted)

    def _rank(self, mask: int) -> int:
        return self.base.rank(expand(mask, self.positions) | self.contracted) - self._rt

    def to_base(self, mask: int) -> int:
        return expand(mask, self.positions)

    def from_base(self, mask: int) -> int:
        return compress(mask, self.positions)


def direct_sum(*ms: Matroid) -> Matroid:
    """Direct sum as a rank oracle; elements are labelled ``(part index, label)``."""
    labels = [(i, e) for i, m in enumerate(ms) for e in m.ground]
    offsets = list(itertools.accumulate([0] + [m.n for m in ms]))

    class _Sum(Matroid):
        backend = "sum"

        def _rank(self, mask: int) -> int:
            return sum(m.rank((mask >> offsets[i]) & m.full) for i, m in enumerate(ms))

    return _Sum(GroundSet(tuple(labels)), "+".join(m.name for m in ms))


# -- constructors -----------------------------------------------------------------

def cycle_matroid(g: Graph) -> GraphicMatroid:
    return GraphicMatroid(g)


def uniform(r: int, n: int) -> UniformMatroid:
    return UniformMatroid(r, n)


def linear(rows: Sequence[Sequence[int]], p: int = 2, ncols: Optional[int] = None, name: str = "") -> LinearMatroid:
    return LinearMatroid(GFMatrix.from_rows(rows, p, ncols), name=name)


# -- operations on ranks ------------------------------------------------------------

def rank(m: Matroid, x: int) -> int:
    return m.rank(x)


def independence(m: Matroid, x: int) -> bool:
    return m.is_independent(x)


def lambda_matroid(m: Matroid, x: int) -> int:
    return m.connectivity(x)


def connectivity_oracle(m: Matroid) -> ConnectivityOracle:
    return m.oracle()


def circuits(m: Matroid, cap: Optional[int] = None) -> List[int]:
    """All circuits, by increasing size; supersets of known circuits are skipped."""
    cap = CAPS.circuits if cap is None else cap
    check_cap("circuits", m.n, cap)
    found: List[int] = []
    for size in range(1, m.n + 1):
        for combo in itertools.combinations(range(m.n), size):
            x = sum(1 << i for i in combo)
            if any(c & x == c for c in found):
                continue
            if m.rank(x) < size:
                found.append(x)
    return found


def cocircuits(m: Matroid, cap: Optional[int] = None) -> List[int]:
    return circuits(m.dual(), cap)


def longest_circuit_size(m: Matroid, cap: Optional[int] = None) -> int:
    """Size of a largest circuit; 1 when there are none."""
    return max((popcount(c) for c in circuits(m, cap)), default=1)


def longest_cocircuit_size(m: Matroid, cap: Optional[int] = None) -> int:
    return longest_circuit_size(m.dual(), cap)


def components(m: Matroid, cap: Optional[int] = None) -> List[int]:
    """Connected components as element masks, via the value-zero parts of λ_M."""
    cap = CAPS.zero_components if cap is None else cap
    return zero_components(m.oracle(), cap)


def is_connected(m: Matroid, cap: Optional[int] = None) -> bool:
    return len(components(m, cap)) <= 1


def fundamental_components(m: Matroid, within: Optional[int] = None) -> List[int]:
    """Components from fundamental circuits of a greedy base; no exhaustive scan.

    Two elements share a component exactly when some fundamental circuit
    links them (through a chain of such circuits).
    """
    return _minor_components(m.rank, m.full if within is None else within, 0)


def _minor_components(rank_fn, s: int, t: int) -> List[int]:
    """Components of (M / t) restricted to s, given the rank function of M."""
    rt = rank_fn(t)
    base = 0
    rb = 0
    for e in bits(s):
        if rank_fn(base | (1 << e) | t) - rt > rb:
            base |= 1 << e
            rb += 1
    comp = {e: 1 << e for e in bits(s)}
    for f in bits(s & ~base):
        circuit = 1 << f
        for b in bits(base):
            if rank_fn((base ^ (1 << b)) | (1 << f) | t) - rt == rb:
                circuit |= 1 << b
        merged = 0
        for e in bits(circuit):
            merged |= comp[e]
        for e in bits(merged):
            comp[e] = merged
    out = []
    seen = 0
    for e in bits(s):
        if not seen >> e & 1:
            out.append(comp[e])
            seen |= comp[e]
    return out


# -- depth parameters --------------------------------------------------------------

MODES = {"contraction": ("contract",), "deletion": ("delete",), "contraction-deletion": ("contract", "delete")}


@dataclass(frozen=True)
class DepthWitness:
    """One step of an optimal strategy on a connected minor.

    ``element`` is removed by ``operation``; ``children`` are the witnesses
    for the components of what remains.
    """

    element: Hashable
    operation: str
    children: Tuple["DepthWitness", ...] = ()

    def sequence(self) -> List[Tuple[Hashable, str]]:
        out = [(self.element, self.operation)]
        for c in self.children:
            out += c.sequence()
        return out


@dataclass(frozen=True)
class DepthResult:
    value: int
    witnesses: Tuple[DepthWitness, ...] = field(default=())

    def sequence(self) -> List[Tuple[Hashable, str]]:
        out = []
        for w in self.witnesses:
            out += w.sequence()
        return out

    def __int__(self) -> int:
        return self.value


class _DepthEngine:
    """Exact depth by iterative deepening over minors ``M / T | S``.

    States are keyed by ``(S, cl(T) \\ S)``: the minor only depends on the
    closure of the contracted set.
    """

    def __init__(self, m: Matroid, ops: Tuple[str, ...]):
        self.m = m
        self.ops = ops
        self.r = m.rank_table()
        self.full = m.full
        self.bounds: Dict[Tuple[int, int], List[int]] = {}
        self.comp_memo: Dict[Tuple[int, int], List[int]] = {}

    def key(self, s: int, t: int) -> Tuple[int, int]:
        r = self.r
        rt = r[t]
        cl = t
        for e in bits(self.full & ~t & ~s):
            if r[t | (1 << e)] == rt:
                cl |= 1 << e
        return s, cl

    def comps(self, s: int, t: int) -> List[int]:
        k = (s, t)
        hit = self.comp_memo.get(k)
        if hit is None:
            r = self.r
            hit = self.comp_memo[k] = _minor_components(r.__getitem__, s, t)
        return hit

    def at_most(self, s: int, t: int, k: int) -> bool:
        if s == 0:
            return k >= 0
        return all(self.conn_at_most(c, t, k) for c in self.comps(s, t))

    def conn_at_most(self, c: int, t: int, k: int) -> bool:
        key = self.key(c, t)
        b = self.bounds.get(key)
        if b is None:
            size = popcount(c)
            b = self.bounds[key] = [1 if size == 1 else 2, size]  # value lies in [lo, hi]
        lo, hi = b
        if k >= hi:
            return True
        if k < lo:
            return False
        t = key[1]
        for e in bits(c):
            rest = c & ~(1 << e)
            for op in self.ops:
                tt = t | (1 << e) if op == "contract" else t
                if self.at_most(rest, tt, k - 1):
                    b[1] = k
                    return True
        b[0] = k + 1
        return False

    def value(self, s: int, t: int) -> int:
        return max((self.conn_value(c, t) for c in self.comps(s, t)), default=0)

    def conn_value(self, c: int, t: int) -> int:
        k = 1 if popcount(c) == 1 else 2
        while not self.conn_at_most(c, t, k):
            k += 1
        return k

    def witness(self, c: int, t: int) -> DepthWitness:
        key = self.key(c, t)
        t = key[1]
        v = self.conn_value(c, t)
        labels = self.m.ground.elements
        for e in bits(c):
            rest = c & ~(1 << e)
            for op in self.ops:
                tt = t | (1 << e) if op == "contract" else t
                if self.at_most(rest, tt, v - 1):
                    kids = tuple(self.witness(cc, tt) for cc in self.comps(rest, tt)) if rest else ()
                    return DepthWitness(labels[e], op, kids)
        raise AssertionError("no optimal move found")

    def result(self) -> DepthResult:
        full = self.full
        if full == 0:
            return DepthResult(0)
        value = self.value(full, 0)
        return DepthResult(value, tuple(self.witness(c, 0) for c in self.comps(full, 0)))


def _depth(m: Matroid, mode: str, cap: Optional[int]) -> DepthResult:
    cap = CAPS.matroid_depth if cap is None else cap
    check_cap(f"{mode} depth", m.n, cap)
    return _DepthEngine(m, MODES[mode]).result()


def contraction_depth(m: Matroid, cap: Optional[int] = None) -> DepthResult:
    return _depth(m, "contraction", cap)


def deletion_depth(m: Matroid, cap: Optional[int] = None) -> DepthResult:
    return _depth(m, "deletion", cap)


def cd_depth(m: Matroid, cap: Optional[int] = None) -> DepthResult:
    """Contraction-deletion depth."""
    return _depth(m, "contraction-deletion", cap)


# -- fundamental graphs ----------------------------------------------------------------

def is_binary_backend(m: Matroid) -> bool:
    if isinstance(m, LinearMatroid):
        return m.p == 2
    if isinstance(m, GraphicMatroid):
        return True
    if isinstance(m, (DualMatroid, MinorMatroid)):
        return is_binary_backend(m.base)
    return False


def fundamental_graph(m: Matroid, base: int) -> Graph:
    """Bipartite graph on E(M): b in B is adjacent to f outside B when B - b + f is independent."""
    if not is_binary_backend(m):
        raise PreconditionError("fundamental graphs are defined here for binary matroids only")
    r = m.rank(m.full)
    if popcount(base) != r or m.rank(base) != r:
        raise PreconditionError("not a base")
    edges = []
    for b in bits(base):
        for f in bits(m.full & ~base):
            if m.is_independent((base ^ (1 << b)) | (1 << f)):
                edges.append((b, f))
    return Graph(m.ground, tuple(edges), GroundSet(tuple(range(1, len(edges) + 1))), f"fund({m.name})")
