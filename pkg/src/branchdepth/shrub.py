"""Rank-depth and shrubberies.

Converts in both directions between decompositions of the cut-rank
function and shrubberies (rooted trees with uniform leaf depth plus a leaf
colouring that determines adjacency), together with the supporting
constructions: relative adjacency matrices, realization sets, node-universal
graphs, and the path decompositions used for upper bounds.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .connectivity import CAPS, GroundSet, PreconditionError, bits, check_cap, is_partition
from .decomposition import Decomposition, branch_depth_exact, union_values, width
from .graph import Graph, NotSimpleError, cut_rank_oracle, generate

STAR = "*"


def rank_depth(g: Graph, cap: Optional[int] = None) -> Tuple[int, Optional[Decomposition]]:
    """Branch-depth of the cut-rank function, with a witness decomposition."""
    cap = CAPS.rank_depth if cap is None else cap
    check_cap("rank_depth", g.n, cap)
    if not g.is_simple():
        raise NotSimpleError("rank-depth is defined for simple graphs")
    return branch_depth_exact(cut_rank_oracle(g), cap)


# -- shrubberies ------------------------------------------------------------------

@dataclass(frozen=True)
class Shrubbery:
    """Rooted tree (parent pointers, root has ``None``) whose leaves are the
    graph's vertices; ``leaf_of[i]`` is the leaf of vertex ``i`` and
    ``colors[i]`` its colour."""

    parent: Tuple[Optional[int], ...]
    leaf_of: Tuple[int, ...]
    colors: Tuple[int, ...]

    def __post_init__(self):
        roots = [v for v, p in enumerate(self.parent) if p is None]
        if len(roots) != 1:
            raise ValueError("a shrubbery tree needs exactly one root")
        if len(self.colors) != len(self.leaf_of):
            raise ValueError("one colour per vertex is required")
        has_child = {p for p in self.parent if p is not None}
        leaves = {v for v in range(len(self.parent)) if v not in has_child}
        if set(self.leaf_of) != leaves or len(set(self.leaf_of)) != len(self.leaf_of):
            raise ValueError("vertices must biject with the leaves of the tree")
        depths = {self.node_depth(v) for v in leaves}
        if len(depths) != 1:
            raise ValueError("all leaves must be at the same distance from the root")

    @property
    def root(self) -> int:
        return self.parent.index(None)

    def node_depth(self, v: int) -> int:
        d = 0
        while self.parent[v] is not None:
            v = self.parent[v]
            d += 1
        return d

    @property
    def depth(self) -> int:
        return self.node_depth(self.leaf_of[0]) if self.leaf_of else 0

    @property
    def n_colors(self) -> int:
        return len(set(self.colors))

    def leaf_distance(self, x: int, y: int) -> int:
        a, b = self.leaf_of[x], self.leaf_of[y]
        da, db = self.node_depth(a), self.node_depth(b)
        steps = 0
        while da > db:
            a, da, steps = self.parent[a], da - 1, steps + 1
        while db > da:
            b, db, steps = self.parent[b], db - 1, steps + 1
        while a != b:
            a, b, steps = self.parent[a], self.parent[b], steps + 2
        return steps

    def to_dict(self, g: Optional[Graph] = None) -> dict:
        tree = [[v, p] for v, p in enumerate(self.parent) if p is not None]
        labels = g.vertices.elements if g is not None else tuple(range(len(self.leaf_of)))
        out = {
            "tree": {"root": self.root, "edges": tree, "leaves": {str(labels[i]): n for i, n in enumerate(self.leaf_of)}},
            "depth": self.depth,
            "colors": {str(labels[i]): c for i, c in enumerate(self.colors)},
        }
        if g is not None:
            check = validate_shrubbery(g, self)
            out["adjacencyTable"] = [
                [a, b, d, adj] for (a, b, d), adj in sorted(check.table.items())
            ]
        return out


@dataclass(frozen=True)
class ShrubberyCheck:
    ok: bool
    table: Dict[Tuple[int, int, int], bool]
    counterexample: Optional[Tuple[int, int, int, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def validate_shrubbery(g: Graph, s: Shrubbery) -> ShrubberyCheck:
    """Check that (colour, colour, distance) determines adjacency.

    Returns the table of observed triples, or a violating quadruple
    ``(x1, y1, x2, y2)`` of vertex indices.
    """
    if len(s.leaf_of) != g.n:
        raise PreconditionError("shrubbery leaves do not match the vertex set")
    adj = g.adjacency()
    table: Dict[Tuple[int, int, int], bool] = {}
    witness: Dict[Tuple[int, int, int], Tuple[int, int]] = {}
    for x in range(g.n):
        for y in range(g.n):
            if x == y:
                continue
            key = (s.colors[x], s.colors[y], s.leaf_distance(x, y))
            a = bool(adj[x] >> y & 1)
            if key in table:
                if table[key] != a:
                    x0, y0 = witness[key]
                    return ShrubberyCheck(False, table, (x0, y0, x, y))
            else:
                table[key] = a
                witness[key] = (x, y)
    return ShrubberyCheck(True, table)


def decomposition_from_shrubbery(s: Shrubbery, g: Optional[Graph] = None) -> Decomposition:
    """Read the shrubbery tree as a decomposition of the cut-rank function.

    Unlabelled nodes of degree one (a root with a single child) are pruned.
    When ``g`` is given, width at most the number of colours and radius at
    most the depth are checked on the result.
    """
    if len(s.leaf_of) < 2:
        raise PreconditionError("need at least two vertices")
    n = len(s.parent)
    adj: List[set] = [set() for _ in range(n)]
    for v, p in enumerate(s.parent):
        if p is not None:
            adj[v].add(p)
            adj[p].add(v)
    labelled = set(s.leaf_of)
    alive = set(range(n))
    stack = [v for v in range(n) if len(adj[v]) <= 1 and v not in labelled]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in adj[v]:
            adj[w].discard(v)
            if len(adj[w]) <= 1 and w not in labelled:
                stack.append(w)
        adj[v].clear()
    order = sorted(alive)
    pos = {v: i for i, v in enumerate(order)}
    dec = Decomposition.from_edges(
        len(order), [(pos[v], pos[w]) for v in order for w in adj[v] if v < w], [pos[x] for x in s.leaf_of]
    )
    if g is not None:
        w = width(dec, cut_rank_oracle(g))
        if w > s.n_colors or dec.radius() > s.depth:
            raise AssertionError(f"shrubbery gave width {w}, radius {dec.radius()}")
    return dec


# -- relative adjacency and realizations -------------------------------------------

@dataclass(frozen=True)
class StarMatrix:
    """Square 0/1 matrix over V with ``STAR`` on pairs inside one part."""

    entries: Tuple[Tuple[object, ...], ...]

    def row(self, v: int) -> Tuple[object, ...]:
        return self.entries[v]

    def __len__(self) -> int:
        return len(self.entries)


def _part_index(n: int, parts: Sequence[int]) -> List[int]:
    if not is_partition(parts, (1 << n) - 1):
        raise PreconditionError("parts do not partition the vertex set")
    where = [0] * n
    for i, p in enumerate(parts):
        for v in bits(p):
            where[v] = i
    return where


def relative_adjacency(g: Graph, parts: Sequence[int]) -> StarMatrix:
    where = _part_index(g.n, parts)
    adj = g.adjacency()
    return StarMatrix(tuple(
        tuple(STAR if where[u] == where[v] else (adj[u] >> v) & 1 for v in range(g.n))
        for u in range(g.n)
    ))


def partition_cut_rank(g: Graph, parts: Sequence[int]) -> int:
    return union_values(cut_rank_oracle(g), parts)


def _similar(a: Sequence[object], b: Sequence[object]) -> bool:
    return all(x == STAR or y == STAR or x == y for x, y in zip(a, b))


def _realizes(vector: Sequence[int], pattern: Sequence[object]) -> bool:
    return all(p == STAR or p == v for v, p in zip(vector, pattern))


def realization_bound(k: int) -> int:
    return 2 ** (2 * k) * (2 ** (2 * k + 2) - 1)


def realization_set(g: Graph, parts: Sequence[int], k: Optional[int] = None) -> List[Tuple[int, ...]]:
    """Vectors in {0,1}^V realizing every column of the relative adjacency matrix.

    Built from a maximal pairwise-dissimilar vertex set: each representative's
    row has its own part filled in by every distinct adjacency pattern that an
    outside vertex shows towards that part.
    """
    if not g.is_simple():
        raise NotSimpleError("need a simple graph")
    actual = partition_cut_rank(g, parts)
    if k is None:
        k = actual
    elif actual > k:
        raise PreconditionError(f"partition has cut-rank {actual} > {k}")
    a = relative_adjacency(g, parts)
    where = _part_index(g.n, parts)
    adj = g.adjacency()
    n = g.n

    z: List[int] = []
    for v in range(n):
        if all(where[v] != where[u] and not _similar(a.row(v), a.row(u)) for u in z):
            z.append(v)
    zz = list(z)
    for v in range(n):
        if v not in zz and all(not _similar(a.row(v), a.row(u)) for u in zz):
            zz.append(v)

    out: List[Tuple[int, ...]] = []
    seen = set()
    for rep in zz:
        part = parts[where[rep]]
        inside = list(bits(part))
        outside = [v for v in range(n) if not part >> v & 1]
        patterns = {tuple((adj[w] >> x) & 1 for x in inside) for w in outside} or {tuple(0 for _ in inside)}
        for pat in sorted(patterns):
            vec = list(a.row(rep))
            for x, bit in zip(inside, pat):
                vec[x] = bit
            t = tuple(vec)
            if t not in seen:
                seen.add(t)
                out.append(t)
    for v in range(n):
        if not any(_realizes(u, a.row(v)) for u in out):
            raise AssertionError(f"column {v} has no realization")
    if len(out) > realization_bound(k):
        raise AssertionError("realization set larger than the lemma allows")
    return out


@dataclass(frozen=True)
class NodeUniversal:
    host: Graph
    h: Tuple[int, ...]

    @property
    def has_loops(self) -> bool:
        return any(u == v for u, v in self.host.edges)


def node_universal_bound(k: int) -> int:
    return 2 ** (2 * k + 1) * (2 ** (2 * k + 2) - 1)


def node_universal(g: Graph, parts: Sequence[int], k: Optional[int] = None) -> NodeUniversal:
    """A small host graph H (loops allowed) and a map h with xy ∈ E iff h(x)h(y) ∈ E(H)
    for every x, y in distinct parts.

    Colour classes that meet exactly two parts are split in two so every
    class meets one part or at least three.  Host vertices with identical
    neighbourhoods (loops included) are then merged, which keeps the
    transfer property.
    """
    actual = partition_cut_rank(g, parts)
    if k is None:
        k = actual
    u = realization_set(g, parts, k)
    a = relative_adjacency(g, parts)
    where = _part_index(g.n, parts)
    m = len(u)
    f0 = [next(i for i, vec in enumerate(u) if _realizes(vec, a.row(v))) for v in range(g.n)]
    f = list(f0)
    for i in range(m):
        touched = sorted({where[v] for v in range(g.n) if f0[v] == i})
        if len(touched) == 2:
            for v in range(g.n):
                if f0[v] == i and where[v] == touched[1]:
                    f[v] = m + i
    adj = g.adjacency()
    host_edges = set()
    for x in range(g.n):
        for y in range(g.n):
            if where[x] != where[y] and adj[x] >> y & 1:
                host_edges.add((min(f[x], f[y]), max(f[x], f[y])))

    used = sorted(set(f))
    nbr = {c: frozenset(d for d in used if (min(c, d), max(c, d)) in host_edges) for c in used}
    rep: Dict[frozenset, int] = {}
    merged = {}
    for c in used:
        merged[c] = rep.setdefault(nbr[c], len(rep))
    edges = sorted({(min(merged[a_], merged[b_]), max(merged[a_], merged[b_])) for a_, b_ in host_edges})
    host = Graph(GroundSet.range(len(rep)), tuple(edges), GroundSet(tuple(range(1, len(edges) + 1))), "H")
    h = tuple(merged[f[v]] for v in range(g.n))

    hadj = [0] * host.n
    for p, q in edges:
        hadj[p] |= 1 << q
        hadj[q] |= 1 << p
    for x in range(g.n):
        for y in range(g.n):
            if where[x] != where[y] and bool(adj[x] >> y & 1) != bool(hadj[h[x]] >> h[y] & 1):
                raise AssertionError(f"adjacency of {x},{y} does not transfer")
    if host.n > node_universal_bound(k):
        raise AssertionError("host graph larger than the lemma allows")
    return NodeUniversal(host, h)


def root_subset(n: int, f: Mapping[Tuple[int, int], int], seed: int = 0) -> List[int]:
    """A set S of more than sqrt(n)/2 vertices of K_n such that no edge inside S
    is coloured by a vertex of S.

    ``f`` maps pairs ``(i, j)`` with ``1 <= i < j <= n`` to a colour in
    ``1..n`` not equal to ``i`` or ``j``.  Exhaustive (largest S) for n <= 16,
    random sampling with probability 1/sqrt(n) above that.
    """
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            c = f[(i, j)]
            if c in (i, j) or not 1 <= c <= n:
                raise PreconditionError(f"invalid colour {c} on edge {(i, j)}")

    def ok(s) -> bool:
        ss = set(s)
        return all(f[(i, j)] not in ss for i, j in itertools.combinations(sorted(s), 2))

    need = math.sqrt(n) / 2
    if n <= 16:
        for size in range(n, 0, -1):
            for s in itertools.combinations(range(1, n + 1), size):
                if ok(s):
                    return list(s)
        return []
    rng = random.Random(seed)
    prob = 1 / math.sqrt(n)
    while True:
        r = [v for v in range(1, n + 1) if rng.random() < prob]
        rs = set(r)
        bad = {f[(i, j)] for i, j in itertools.combinations(r, 2) if f[(i, j)] in rs}
        s = [v for v in r if v not in bad]
        if len(s) > need and ok(s):
            return s


# -- decomposition -> shrubbery -------------------------------------------------------

@dataclass(frozen=True)
class ShrubberyBuild:
    shrubbery: Shrubbery
    host_sizes: Tuple[int, ...]
    loops_needed: bool


def shrubbery_from_decomposition(g: Graph, dec: Decomposition) -> ShrubberyBuild:
    """A shrubbery of depth r from a decomposition of radius r of the cut-rank function.

    Leaf edges are subdivided so every leaf is at distance exactly r from the
    centre; each internal node v gets a host graph H_v with a transfer map
    f_v; all hosts are placed side by side in one disjoint union; a vertex's
    colour is the tuple of its ancestors' host vertices, parent first.
    """
    if g.n < 2:
        raise PreconditionError("need at least two vertices")
    if dec.n_elements != g.n:
        raise PreconditionError("decomposition does not match the vertex set")
    oracle = cut_rank_oracle(g)
    center = dec.center()
    r = dec.eccentricity(center)

    parent: List[Optional[int]] = [None] * dec.n_nodes
    depth = [0] * dec.n_nodes
    order = [center]
    seen = {center}
    queue = deque([center])
    while queue:
        v = queue.popleft()
        for w in dec.adjacency[v]:
            if w not in seen:
                seen.add(w)
                parent[w] = v
                depth[w] = depth[v] + 1
                order.append(w)
                queue.append(w)
    leaf_of = list(dec.leaf_of)
    for x, leaf in enumerate(dec.leaf_of):
        gap = r - depth[leaf]
        above = parent[leaf]
        for _ in range(gap):
            node = len(parent)
            parent.append(above)
            depth.append(depth[above] + 1)
            above = node
        parent[leaf] = above
        depth[leaf] = r

    rooted = _rooted_parts(parent, leaf_of)
    hosts: Dict[int, NodeUniversal] = {}
    offsets: Dict[int, int] = {}
    total = 0
    loops = False
    for v in sorted(rooted):
        parts = rooted[v]
        k = union_values(oracle, parts)
        nu = node_universal(g, parts, k)
        hosts[v] = nu
        offsets[v] = total
        total += nu.host.n
        loops = loops or nu.has_loops

    tuples = []
    for x in range(g.n):
        coords = []
        a = parent[leaf_of[x]]
        while a is not None:
            coords.append(hosts[a].h[x] + offsets[a])
            a = parent[a]
        tuples.append(tuple(coords))
    palette = {t: i + 1 for i, t in enumerate(sorted(set(tuples)))}
    shrub = Shrubbery(tuple(parent), tuple(leaf_of), tuple(palette[t] for t in tuples))
    check = validate_shrubbery(g, shrub)
    if not check:
        raise AssertionError(f"constructed shrubbery is invalid at {check.counterexample}")
    return ShrubberyBuild(shrub, tuple(hosts[v].host.n for v in sorted(hosts)), loops)


def _rooted_parts(parent: Sequence[Optional[int]], leaf_of: Sequence[int]) -> Dict[int, List[int]]:
    """Vertex partition at every internal node of a rooted tree: one part per
    child subtree plus, below the root, everything outside the node's subtree."""
    children: Dict[int, List[int]] = {}
    for v, p in enumerate(parent):
        if p is not None:
            children.setdefault(p, []).append(v)
    below: Dict[int, int] = {}
    at = {leaf: x for x, leaf in enumerate(leaf_of)}

    def fill(v: int) -> int:
        mask = 1 << at[v] if v in at else 0
        for c in children.get(v, []):
            mask |= fill(c)
        below[v] = mask
        return mask

    root = parent.index(None)
    full = fill(root)
    out = {}
    for v, kids in children.items():
        parts = [below[c] for c in kids]
        if parent[v] is not None:
            parts.append(full & ~below[v])
        out[v] = parts
    return out


# -- path upper bound ----------------------------------------------------------------

def path_capacity(w: int) -> int:
    return (w + 1) * (w - 1) ** (w - 1)


def path_rank_decomposition(n: int, w: int) -> Decomposition:
    """Decomposition of the cut-rank function of P_n with width and radius at most w.

    The root splits the path into w + 1 contiguous pieces and every other
    internal node into at most w - 1, so each node sees at most w + 1
    subpaths.  Needs (w + 1)(w - 1)^(w - 1) >= n.
    """
    if w < 2 or n < 2:
        raise PreconditionError("need w >= 2 and n >= 2")
    if path_capacity(w) < n:
        raise PreconditionError(f"(w+1)(w-1)^(w-1) = {path_capacity(w)} < {n}")
    edges: List[Tuple[int, int]] = []
    leaf_of = [0] * n
    counter = [1]

    def pieces(lo: int, hi: int, k: int) -> List[Tuple[int, int]]:
        size = hi - lo
        k = min(k, size)
        out = []
        for i in range(k):
            a = lo + (size * i) // k
            b = lo + (size * (i + 1)) // k
            out.append((a, b))
        return out

    def grow(node: int, lo: int, hi: int, k: int) -> None:
        for a, b in pieces(lo, hi, k):
            child = counter[0]
            counter[0] += 1
            edges.append((node, child))
            if b - a == 1:
                leaf_of[a] = child
            else:
                if w - 1 < 2:
                    raise AssertionError("path piece cannot be split further")
                grow(child, a, b, w - 1)

    grow(0, 0, n, w + 1)
    dec = Decomposition.from_edges(counter[0], edges, leaf_of)
    g = generate("path", n)
    got = width(dec, cut_rank_oracle(g))
    if got > w or dec.radius() > w:
        raise AssertionError(f"path decomposition has width {got}, radius {dec.radius()}")
    return dec


def path_lower_bound(n: int) -> float:
    """log n / log(1 + 4 log n), natural logarithms."""
    return math.log(n) / math.log(1 + 4 * math.log(n))


# -- universal graphs ------------------------------------------------------------------

def naive_universal(k: int) -> Graph:
    """Disjoint union of every labelled simple graph on k vertices (k <= 3)."""
    if not 1 <= k <= 3:
        raise ValueError("naive universal graphs are only built for k <= 3")
    pairs = list(itertools.combinations(range(k), 2))
    edges = []
    offset = 0
    for choice in itertools.product((0, 1), repeat=len(pairs)):
        for (a, b), on in zip(pairs, choice):
            if on:
                edges.append((offset + a, offset + b))
        offset += k
    return Graph(GroundSet.range(offset), tuple(edges), GroundSet(tuple(range(1, len(edges) + 1))), f"U{k}")


def loopy_universal(g: Graph) -> Graph:
    """G+ on V x {0, 1}: (u, i) ~ (v, j) for uv in E(G), u != v, plus a loop at every (v, 1)."""
    if not g.is_simple():
        raise NotSimpleError("need a simple graph")
    n = g.n
    labels = [(x, i) for i in (0, 1) for x in g.vertices]
    edges = []
    for u, v in g.edges:
        for i in (0, 1):
            for j in (0, 1):
                edges.append((u + i * n, v + j * n))
    edges += [(v + n, v + n) for v in range(n)]
    return Graph(GroundSet(tuple(labels)), tuple(edges), GroundSet(tuple(range(1, len(edges) + 1))), f"{g.name}+")
