"""Decomposition trees, width and radius, exact branch-depth search and the
constructive conversions between tree-depth and branch-depth of graphs."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

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
    submasks,
)
from .graph import Graph, RootedForest, edge_oracle, induced_components


class InvalidDecomposition(ValueError):
    pass


@dataclass(frozen=True)
class Decomposition:
    """An unrooted tree plus a bijection from ground elements to its leaves.

    Nodes are ``0..len(adjacency)-1``; ``leaf_of[i]`` is the leaf holding
    ground element ``i``.  Degree-2 nodes are allowed.
    """

    adjacency: Tuple[Tuple[int, ...], ...]
    leaf_of: Tuple[int, ...]

    def __post_init__(self):
        n = len(self.adjacency)
        if n == 0:
            raise InvalidDecomposition("empty tree")
        m = sum(len(a) for a in self.adjacency)
        if m != 2 * (n - 1):
            raise InvalidDecomposition("not a tree: wrong edge count")
        for v, nbrs in enumerate(self.adjacency):
            for w in nbrs:
                if not 0 <= w < n or v not in self.adjacency[w] or w == v:
                    raise InvalidDecomposition(f"bad adjacency at node {v}")
        if len(self._bfs(0)) != n:
            raise InvalidDecomposition("not a tree: disconnected")
        leaves = {v for v in range(n) if len(self.adjacency[v]) == 1}
        if len(leaves) == n:
            raise InvalidDecomposition("a decomposition needs an internal node")
        if len(set(self.leaf_of)) != len(self.leaf_of) or set(self.leaf_of) != leaves:
            raise InvalidDecomposition("leaf map is not a bijection onto the leaves")

    @classmethod
    def from_edges(cls, n_nodes: int, edges: Iterable[Tuple[int, int]], leaf_of: Sequence[int]) -> "Decomposition":
        adj: List[List[int]] = [[] for _ in range(n_nodes)]
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        return cls(tuple(tuple(x) for x in adj), tuple(leaf_of))

    @classmethod
    def star(cls, n_elements: int) -> "Decomposition":
        return cls.from_edges(n_elements + 1, [(0, i + 1) for i in range(n_elements)], list(range(1, n_elements + 1)))

    # -- structure ------------------------------------------------------------

    @property
    def n_nodes(self) -> int:
        return len(self.adjacency)

    @property
    def n_elements(self) -> int:
        return len(self.leaf_of)

    def edges(self) -> List[Tuple[int, int]]:
        return [(v, w) for v in range(self.n_nodes) for w in self.adjacency[v] if v < w]

    def is_leaf(self, v: int) -> bool:
        return len(self.adjacency[v]) == 1

    def internal_nodes(self) -> List[int]:
        return [v for v in range(self.n_nodes) if not self.is_leaf(v)]

    def element_at(self) -> Dict[int, int]:
        return {leaf: e for e, leaf in enumerate(self.leaf_of)}

    def _bfs(self, src: int) -> Dict[int, int]:
        dist = {src: 0}
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for w in self.adjacency[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist

    def eccentricity(self, v: int) -> int:
        return max(self._bfs(v).values())

    def radius(self) -> int:
        return min(self.eccentricity(v) for v in range(self.n_nodes))

    def center(self) -> int:
        """Lowest-index internal node of minimum eccentricity."""
        return min(self.internal_nodes(), key=lambda v: (self.eccentricity(v), v))

    def parts(self, v: int) -> List[int]:
        """Element masks of the components of T - v, one per neighbour of ``v``."""
        at = self.element_at()
        out = []
        for w in self.adjacency[v]:
            mask = 0
            seen = {v, w}
            stack = [w]
            while stack:
                x = stack.pop()
                if x in at:
                    mask |= 1 << at[x]
                for y in self.adjacency[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out.append(mask)
        return out

    def steiner_subtree(self, elements: int) -> "Decomposition":
        """Minimal subtree spanning the leaves of ``elements``, re-indexed.

        The result's leaf map follows the bit order of ``elements``.
        """
        targets = [self.leaf_of[i] for i in bits(elements)]
        if len(targets) < 2:
            raise PreconditionError("a subtree decomposition needs at least two elements")
        parent = {targets[0]: None}
        queue = deque([targets[0]])
        while queue:
            v = queue.popleft()
            for w in self.adjacency[v]:
                if w not in parent:
                    parent[w] = v
                    queue.append(w)
        keep = {targets[0]}
        for t in targets[1:]:
            while t not in keep:
                keep.add(t)
                t = parent[t]
        order = sorted(keep)
        pos = {v: i for i, v in enumerate(order)}
        edges = [(pos[v], pos[w]) for v in order for w in self.adjacency[v] if w in keep and v < w]
        return Decomposition.from_edges(len(order), edges, [pos[t] for t in targets])

    # -- export ---------------------------------------------------------------

    def to_dict(self, ground: Optional[GroundSet] = None, oracle: Optional[ConnectivityOracle] = None) -> dict:
        labels = ground.elements if ground is not None else tuple(range(self.n_elements))
        out = {
            "nodes": list(range(self.n_nodes)),
            "edges": [list(e) for e in self.edges()],
            "leafMap": {str(labels[i]): leaf for i, leaf in enumerate(self.leaf_of)},
            "radius": self.radius(),
        }
        if oracle is not None:
            out["width"] = width(self, oracle)
        return out

    def to_json(self, ground: Optional[GroundSet] = None, oracle: Optional[ConnectivityOracle] = None) -> str:
        return json.dumps(self.to_dict(ground, oracle))

    @classmethod
    def from_dict(cls, data: dict, ground: Optional[GroundSet] = None) -> "Decomposition":
        leaf_map = data["leafMap"]
        if ground is None:
            leaf_of = [leaf_map[k] for k in leaf_map]
        else:
            leaf_of = [leaf_map[str(e)] for e in ground]
        return cls.from_edges(len(data["nodes"]), [tuple(e) for e in data["edges"]], leaf_of)

    def to_dot(self, ground: Optional[GroundSet] = None, name: str = "decomposition") -> str:
        labels = ground.elements if ground is not None else tuple(range(self.n_elements))
        at = self.element_at()
        lines = [f"graph {json.dumps(name)} {{"]
        for v in range(self.n_nodes):
            if v in at:
                lines.append(f"  n{v} [shape=box, label={json.dumps(str(labels[at[v]]))}];")
            else:
                lines.append(f"  n{v} [shape=circle, label=\"\"];")
        for a, b in self.edges():
            lines.append(f"  n{a} -- n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- width ------------------------------------------------------------------------

def union_values(oracle: ConnectivityOracle, parts: Sequence[int]) -> int:
    """Maximum of the oracle over all unions of ``parts`` (the empty union included)."""
    unions = [0]
    best = 0
    for p in parts:
        new = [u | p for u in unions]
        best = max(best, max(oracle(u) for u in new))
        unions += new
    return best


def node_width(dec: Decomposition, oracle: ConnectivityOracle, v: int, cap: Optional[int] = None) -> int:
    cap = CAPS.node_degree if cap is None else cap
    if dec.is_leaf(v):
        raise PreconditionError(f"node {v} is a leaf")
    check_cap("node_width", len(dec.adjacency[v]), cap)
    if dec.n_elements != oracle.n:
        raise PreconditionError("decomposition and oracle have different ground sets")
    return union_values(oracle, dec.parts(v))


def width(dec: Decomposition, oracle: ConnectivityOracle, cap: Optional[int] = None) -> int:
    return max(node_width(dec, oracle, v, cap) for v in dec.internal_nodes())


def radius(dec: Decomposition) -> int:
    return dec.radius()


# -- exact search -----------------------------------------------------------------

class _Search:
    """Memoised feasibility search for a fixed width bound ``k``.

    ``feasible(X, h)`` asks whether the elements ``X`` can hang below one
    neighbour of a parent node as a subtree of height at most ``h``, with
    every internal node of that subtree within width ``k``.  The width test
    at a node with children parts Q1..Qj runs over all unions drawn from
    {Q1, .., Qj, E \\ X}.
    """

    def __init__(self, oracle: ConnectivityOracle, k: int):
        self.t = oracle.table()
        self.full = oracle.full
        self.k = k
        self.memo: Dict[Tuple[int, int], Optional[Tuple[int, ...]]] = {}

    def feasible(self, x: int, h: int) -> Optional[Tuple[int, ...]]:
        if x & (x - 1) == 0:
            return ()
        if h <= 0:
            return None
        key = (x, h)
        if key in self.memo:
            return self.memo[key]
        comp = self.full ^ x
        found = self._split(x, x, h - 1, [0, comp] if comp else [0], [])
        self.memo[key] = found
        return found

    def _split(self, whole: int, rest: int, h: int, unions: List[int], chosen: List[int]) -> Optional[Tuple[int, ...]]:
        if rest == 0:
            return tuple(chosen) if len(chosen) >= 2 else None
        t, k = self.t, self.k
        low = rest & -rest
        for sub in submasks(rest ^ low):
            q = sub | low
            if q == whole:
                continue
            if t[q] > k:
                continue
            new = [u | q for u in unions]
            if any(t[u] > k for u in new):
                continue
            if self.feasible(q, h) is None:
                continue
            chosen.append(q)
            found = self._split(whole, rest ^ q, h, unions + new, chosen)
            chosen.pop()
            if found is not None:
                return found
        return None

    def top(self, r: int) -> Optional[Tuple[int, ...]]:
        if r <= 0:
            return None
        return self._split(self.full, self.full, r - 1, [0], [])

    def build(self, top_parts: Sequence[int], r: int) -> Decomposition:
        n = popcount(self.full)
        edges: List[Tuple[int, int]] = []
        leaf_of = [0] * n
        counter = [1]

        def attach(parent: int, part: int, h: int) -> None:
            node = counter[0]
            counter[0] += 1
            edges.append((parent, node))
            if part & (part - 1) == 0:
                leaf_of[part.bit_length() - 1] = node
                return
            for q in self.memo[(part, h)]:
                attach(node, q, h - 1)

        for q in top_parts:
            attach(0, q, r - 1)
        return Decomposition.from_edges(counter[0], edges, leaf_of)


def exists_kr(oracle: ConnectivityOracle, k: int, r: int, cap: Optional[int] = None) -> Optional[Decomposition]:
    """A decomposition of width at most ``k`` and radius at most ``r``, or None."""
    cap = CAPS.branch_depth if cap is None else cap
    check_cap("exists_kr", oracle.n, cap)
    if oracle.n < 2 or k < 0 or r < 1:
        return None
    search = _Search(oracle, k)
    parts = search.top(r)
    if parts is None:
        return None
    return search.build(parts, r)


def branch_depth_exact(oracle: ConnectivityOracle, cap: Optional[int] = None) -> Tuple[int, Optional[Decomposition]]:
    """Least ``k`` with a (k, k)-decomposition, with a witness.

    Ground sets with fewer than two elements have branch-depth 0 and no
    decomposition.
    """
    cap = CAPS.branch_depth if cap is None else cap
    check_cap("branch_depth_exact", oracle.n, cap)
    if oracle.n < 2:
        return 0, None
    top = max(1, max(oracle.table()))
    for k in range(1, top):
        dec = exists_kr(oracle, k, k, cap)
        if dec is not None:
            return k, dec
    # the star has width max(λ) and radius 1
    return top, Decomposition.star(oracle.n)


def branch_depth(oracle: ConnectivityOracle, cap: Optional[int] = None) -> int:
    return branch_depth_exact(oracle, cap)[0]


# -- combining parts of value zero ------------------------------------------------------

def combine_components(
    oracle: ConnectivityOracle,
    pieces: Sequence[Tuple[int, Optional[Decomposition]]],
) -> Decomposition:
    """Join decompositions of value-zero parts into one decomposition.

    ``pieces`` pairs each part (an element mask of ``oracle``) with a
    decomposition of the restricted oracle, whose elements follow the bit
    order of the part; singleton parts pass ``None``.  The centre of the
    largest-radius piece becomes the hub: other centres are joined to it and
    singletons hang from it as leaves.  Ties in radius cost one extra level.
    """
    masks = [m for m, _ in pieces]
    acc = 0
    for m in masks:
        if m == 0 or acc & m:
            raise PreconditionError("pieces must be disjoint and non-empty")
        acc |= m
    if acc != oracle.full:
        raise PreconditionError("pieces must cover the ground set")
    for m in masks:
        if oracle(m) != 0:
            raise PreconditionError(f"part {m:#x} has λ = {oracle(m)} ≠ 0")
    for m, d in pieces:
        if (d is None) != (popcount(m) == 1):
            raise PreconditionError("exactly the singleton parts must come without a decomposition")
        if d is not None and d.n_elements != popcount(m):
            raise PreconditionError("piece decomposition has the wrong size")
    if len(pieces) == 1 and pieces[0][1] is not None:
        return pieces[0][1]

    big = [(m, d) for m, d in pieces if d is not None]
    big.sort(key=lambda md: -md[1].radius())
    edges: List[Tuple[int, int]] = []
    leaf_of = [0] * oracle.n
    offset = 0
    centers = []
    for m, d in big:
        positions = list(bits(m))
        edges += [(a + offset, b + offset) for a, b in d.edges()]
        for local, leaf in enumerate(d.leaf_of):
            leaf_of[positions[local]] = leaf + offset
        centers.append(d.center() + offset)
        offset += d.n_nodes
    if centers:
        hub = centers[0]
        edges += [(hub, c) for c in centers[1:]]
    else:
        hub = offset
        offset += 1
    for m, d in pieces:
        if d is None:
            leaf_of[m.bit_length() - 1] = offset
            edges.append((hub, offset))
            offset += 1
    return Decomposition.from_edges(offset, edges, leaf_of)


# -- graphs: tree-depth <-> branch-depth ------------------------------------------------------

def decomposition_from_treedepth(g: Graph, forest: RootedForest) -> Decomposition:
    """A (t, t)-decomposition of λ_G from an elimination forest of height t.

    Every edge becomes a leaf hanging from its lower endpoint in the forest
    (loops hang from their vertex).  Forest nodes left as unlabelled leaves
    (for example a root with a single child) are pruned.  The width is
    re-measured before returning.
    """
    if g.m < 2:
        raise PreconditionError("need at least two edges")
    if not g.is_connected():
        raise PreconditionError("graph must be connected")
    if not forest.closure_contains(g):
        raise PreconditionError("forest closure does not contain the graph")
    t = forest.height()
    depth = [forest.depth_of(v) for v in range(g.n)]
    adj: List[set] = [set() for _ in range(g.n + g.m)]
    for v, p in enumerate(forest.parent):
        if p is not None:
            adj[v].add(p)
            adj[p].add(v)
    for i, (u, v) in enumerate(g.edges):
        low = u if depth[u] >= depth[v] else v
        adj[g.n + i].add(low)
        adj[low].add(g.n + i)
    alive = set(range(g.n + g.m))
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            if v in alive and len(adj[v]) <= 1:
                for w in adj[v]:
                    adj[w].discard(v)
                adj[v].clear()
                alive.discard(v)
                changed = True
    order = sorted(alive)
    pos = {v: i for i, v in enumerate(order)}
    edges = [(pos[v], pos[w]) for v in order for w in adj[v] if v < w]
    dec = Decomposition.from_edges(len(order), edges, [pos[g.n + i] for i in range(g.m)])
    w = width(dec, edge_oracle(g))
    if w > t or dec.radius() > t:
        raise AssertionError(f"construction produced width {w}, radius {dec.radius()} above tree-depth {t}")
    return dec


def hub_vertices(g: Graph, parts: Sequence[int], k: Optional[int] = None) -> int:
    """Vertices meeting edges from at least two parts of an edge partition.

    When ``k`` is given and every union of parts has λ_G at most ``k``, the
    result is checked to have at most max(2k - 1, 0) vertices.
    """
    seen = 0
    multi = 0
    for p in parts:
        t = g.touched(p)
        multi |= seen & t
        seen |= t
    if k is not None:
        if union_values(edge_oracle(g), parts) <= k and popcount(multi) > max(2 * k - 1, 0):
            raise AssertionError("hub bound violated")
    return multi


def _star_forest(g: Graph, emask: int, parent: List[Optional[int]], above: Optional[int]) -> None:
    """Place a connected piece with at most two edges: highest-degree vertex on top."""
    vs = list(bits(g.touched(emask)))
    deg = {v: 0 for v in vs}
    for i in bits(emask):
        a, b = g.edges[i]
        deg[a] += 1
        deg[b] += 1
    top = max(vs, key=lambda v: (deg[v], -v))
    parent[top] = above
    for v in vs:
        if v != top:
            parent[v] = top


def treedepth_from_decomposition(g: Graph, dec: Decomposition) -> Tuple[int, RootedForest]:
    """Elimination forest from a (w, r)-decomposition of λ_G.

    At the centre of the current subtree the hub vertices (those meeting two
    parts) are stacked into a chain; the pieces left after removing them are
    handled recursively on their minimal subtrees, which have smaller
    radius.  Returns the bound (2w - 1)r + 1 and the forest, whose closure
    contains ``g``.
    """
    oracle = edge_oracle(g)
    if dec.n_elements != g.m:
        raise InvalidDecomposition("decomposition does not match the edge set")
    w = width(dec, oracle)
    r = dec.radius()
    if w < 1:
        w = 1
    bound = (2 * w - 1) * r + 1
    parent: List[Optional[int]] = [None] * g.n
    adj_e = _edge_adjacency(g)

    def handle(emask: int, sub: Decomposition, above: Optional[int]) -> None:
        # sub is a decomposition of the piece, leaves in bit order of emask
        positions = list(bits(emask))
        parts = [expand(p, positions) for p in sub.parts(sub.center())]
        hubs = hub_vertices(g, parts)
        last = above
        for v in bits(hubs):
            parent[v] = last
            last = v
        rest = emask & ~_edges_touching(g, emask, hubs)
        distribute(rest, g.touched(emask) & ~hubs, sub, positions, last)

    def distribute(emask: int, vmask: int, sub: Decomposition, positions: List[int], above: Optional[int]) -> None:
        covered = 0
        for piece in induced_components(adj_e, emask):
            covered |= g.touched(piece)
            if popcount(piece) <= 2:
                _star_forest(g, piece, parent, above)
            else:
                handle(piece, sub.steiner_subtree(compress(piece, positions)), above)
        for v in bits(vmask & ~covered):
            parent[v] = above

    distribute((1 << g.m) - 1, (1 << g.n) - 1, dec, list(range(g.m)), None)
    forest = RootedForest(tuple(parent))
    if not forest.closure_contains(g):
        raise AssertionError("constructed forest does not cover the graph")
    return bound, forest


def _edges_touching(g: Graph, emask: int, vmask: int) -> int:
    out = 0
    for i in bits(emask):
        a, b = g.edges[i]
        if vmask >> a & 1 or vmask >> b & 1:
            out |= 1 << i
    return out


def _edge_adjacency(g: Graph) -> List[int]:
    """Edges sharing an endpoint, as masks over edge indices."""
    at_vertex = [0] * g.n
    for i, (a, b) in enumerate(g.edges):
        at_vertex[a] |= 1 << i
        at_vertex[b] |= 1 << i
    return [at_vertex[a] | at_vertex[b] for a, b in g.edges]

