"""Multigraphs, their two connectivity functions, tree-depth and local complementation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .connectivity import (
    CAPS,
    ConnectivityOracle,
    GroundSet,
    PreconditionError,
    bits,
    check_cap,
    popcount,
)
from .gf import gf2_rank_bits


class NotSimpleError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """A finite multigraph with loops.

    ``edges`` holds endpoint *indices* into ``vertices``; ``edge_names`` is a
    ground set over the edges, so parallel edges stay distinguishable.
    """

    vertices: GroundSet
    edges: Tuple[Tuple[int, int], ...]
    edge_names: GroundSet
    name: str = ""

    def __post_init__(self):
        if len(self.edges) != len(self.edge_names):
            raise ValueError("one name per edge is required")
        n = len(self.vertices)
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) references a missing vertex")

    @classmethod
    def build(
        cls,
        vertices: Iterable[Hashable] | int,
        edges: Iterable[Tuple[Hashable, Hashable]],
        edge_names: Optional[Iterable[Hashable]] = None,
        name: str = "",
    ) -> "Graph":
        """Build from vertex labels (or a count, giving labels ``1..n``) and label pairs."""
        if isinstance(vertices, int):
            vs = GroundSet.range(0) if vertices == 0 else GroundSet(tuple(range(1, vertices + 1)))
        else:
            vs = GroundSet.of(vertices)
        idx = [(vs.index(a), vs.index(b)) for a, b in edges]
        names = GroundSet.of(edge_names) if edge_names is not None else GroundSet(tuple(range(1, len(idx) + 1)))
        return cls(vs, tuple(idx), names, name)

    # -- basic queries -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_labels(self) -> List[Tuple[Hashable, Hashable]]:
        el = self.vertices.elements
        return [(el[u], el[v]) for u, v in self.edges]

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            if u == v:
                return False
            key = (min(u, v), max(u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def simplify(self) -> "Graph":
        """Drop loops and keep the lowest-index edge of each parallel class."""
        seen = set()
        keep = []
        for i, (u, v) in enumerate(self.edges):
            if u == v:
                continue
            key = (min(u, v), max(u, v))
            if key not in seen:
                seen.add(key)
                keep.append(i)
        return Graph(
            self.vertices,
            tuple(self.edges[i] for i in keep),
            GroundSet(tuple(self.edge_names.elements[i] for i in keep)),
            self.name,
        )

    def adjacency(self) -> List[int]:
        """Neighbour bitmasks of the simplification (loops ignored)."""
        adj = [0] * self.n
        for u, v in self.edges:
            if u != v:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency()[u] >> v & 1)

    def degree_sequence(self) -> List[int]:
        """Degrees with loops counted twice, sorted descending."""
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return sorted(deg, reverse=True)

    def edge_vertex_masks(self) -> List[int]:
        return [(1 << u) | (1 << v) for u, v in self.edges]

    def touched(self, edge_mask: int) -> int:
        """Vertices incident with some edge in ``edge_mask``."""
        out = 0
        for i in bits(edge_mask):
            u, v = self.edges[i]
            out |= (1 << u) | (1 << v)
        return out

    def components(self) -> List[int]:
        """Vertex masks of connected components, ordered by lowest vertex."""
        return induced_components(self.adjacency(), (1 << self.n) - 1)

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def induced_subgraph(self, vertex_mask: int) -> "Graph":
        keep = list(bits(vertex_mask))
        pos = {old: new for new, old in enumerate(keep)}
        eidx = [i for i, (u, v) in enumerate(self.edges) if u in pos and v in pos]
        return Graph(
            GroundSet(tuple(self.vertices.elements[i] for i in keep)),
            tuple((pos[self.edges[i][0]], pos[self.edges[i][1]]) for i in eidx),
            GroundSet(tuple(self.edge_names.elements[i] for i in eidx)),
            self.name,
        )

    def edge_subgraph(self, edge_mask: int) -> "Graph":
        """Subgraph with the given edges and every vertex they touch."""
        vmask = self.touched(edge_mask)
        keep = list(bits(vmask))
        pos = {old: new for new, old in enumerate(keep)}
        eidx = list(bits(edge_mask))
        return Graph(
            GroundSet(tuple(self.vertices.elements[i] for i in keep)),
            tuple((pos[self.edges[i][0]], pos[self.edges[i][1]]) for i in eidx),
            GroundSet(tuple(self.edge_names.elements[i] for i in eidx)),
            self.name,
        )

    def with_name(self, name: str) -> "Graph":
        return Graph(self.vertices, self.edges, self.edge_names, name)

    def to_networkx(self):
        import networkx as nx

        g = nx.MultiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def induced_components(adj: Sequence[int], mask: int) -> List[int]:
    comps = []
    rest = mask
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= mask & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


# -- connectivity functions -------------------------------------------------

def lambda_edges(g: Graph, x: int) -> int:
    """Number of vertices meeting both an edge in ``x`` and an edge outside it."""
    full = (1 << g.m) - 1
    return popcount(g.touched(x) & g.touched(full & ~x))


def edge_oracle(g: Graph) -> ConnectivityOracle:
    vm = g.edge_vertex_masks()

    def lam(x: int) -> int:
        a = b = 0
        for i in range(g.m):
            if x >> i & 1:
                a |= vm[i]
            else:
                b |= vm[i]
        return popcount(a & b)

    return ConnectivityOracle(g.edge_names, lam, name=f"λ_G[{g.name}]")


def cut_rank(g: Graph, x: int) -> int:
    """GF(2) rank of the adjacency submatrix with rows ``x`` and the other columns."""
    if not g.is_simple():
        raise NotSimpleError("cut-rank needs a simple graph; call simplify() first")
    return _cut_rank(g.adjacency(), (1 << g.n) - 1, x)


def _cut_rank(adj: Sequence[int], full: int, x: int) -> int:
    outside = full & ~x
    return gf2_rank_bits(adj[v] & outside for v in bits(x))


def cut_rank_oracle(g: Graph) -> ConnectivityOracle:
    if not g.is_simple():
        raise NotSimpleError("cut-rank needs a simple graph; call simplify() first")
    adj = g.adjacency()
    full = (1 << g.n) - 1
    return ConnectivityOracle(g.vertices, lambda x: _cut_rank(adj, full, x), name=f"ρ_G[{g.name}]")


# -- rooted forests and tree-depth ----------------------------------------------

@dataclass(frozen=True)
class RootedForest:
    """Parent pointers over vertex indices; roots map to ``None``."""

    parent: Tuple[Optional[int], ...]

    @property
    def roots(self) -> List[int]:
        return [v for v, p in enumerate(self.parent) if p is None]

    def depth_of(self, v: int) -> int:
        d = 1
        while self.parent[v] is not None:
            v = self.parent[v]
            d += 1
            if d > len(self.parent):
                raise ValueError("parent pointers contain a cycle")
        return d

    def height(self) -> int:
        return max((self.depth_of(v) for v in range(len(self.parent))), default=0)

    def ancestors(self, v: int) -> List[int]:
        out = []
        while self.parent[v] is not None:
            v = self.parent[v]
            out.append(v)
        return out

    def closure_contains(self, g: Graph) -> bool:
        """True if every non-loop edge of ``g`` joins an ancestor/descendant pair."""
        if len(self.parent) != g.n:
            return False
        anc = [set(self.ancestors(v)) for v in range(g.n)]
        return all(u == v or u in anc[v] or v in anc[u] for u, v in g.edges)


def tree_depth(g: Graph, cap: Optional[int] = None) -> Tuple[int, RootedForest]:
    """Exact tree-depth with a witness forest.

    td(connected H) = 1 + min_v td(H - v), td(disconnected H) = max over
    components, memoised on vertex subsets.  Ties go to the lowest vertex.
    """
    cap = CAPS.tree_depth if cap is None else cap
    check_cap("tree_depth", g.n, cap)
    adj = g.adjacency()
    memo: Dict[int, Tuple[int, int]] = {}

    def td(mask: int) -> int:
        if mask == 0:
            return 0
        comps = induced_components(adj, mask)
        return max(td_connected(c) for c in comps)

    def td_connected(mask: int) -> int:
        hit = memo.get(mask)
        if hit is not None:
            return hit[0]
        size = popcount(mask)
        if size == 1:
            memo[mask] = (1, mask.bit_length() - 1)
            return 1
        if all(popcount(adj[v] & mask) == size - 1 for v in bits(mask)):
            memo[mask] = (size, (mask & -mask).bit_length() - 1)
            return size
        best, best_v = size + 1, -1
        for v in bits(mask):
            val = 1 + td(mask & ~(1 << v))
            if val < best:
                best, best_v = val, v
        memo[mask] = (best, best_v)
        return best

    full = (1 << g.n) - 1
    value = td(full)
    parent: List[Optional[int]] = [None] * g.n

    def build(mask: int, par: Optional[int]) -> None:
        for comp in induced_components(adj, mask):
            td_connected(comp)
            v = memo[comp][1]
            parent[v] = par
            build(comp & ~(1 << v), v)

    build(full, None)
    return value, RootedForest(tuple(parent))


# -- local complementation and constructions ----------------------------------

def local_complement(g: Graph, v: Hashable) -> Graph:
    """G*v: complement the subgraph induced on the neighbourhood of ``v``."""
    if not g.is_simple():
        raise NotSimpleError("local complementation needs a simple graph")
    try:
        vi = g.vertices.index(v)
    except KeyError:
        raise PreconditionError(f"vertex {v!r} not in graph") from None
    adj = list(g.adjacency())
    nbrs = list(bits(adj[vi]))
    for i, x in enumerate(nbrs):
        for y in nbrs[i + 1 :]:
            adj[x] ^= 1 << y
            adj[y] ^= 1 << x
    return from_adjacency(g.vertices, adj, g.name)


def from_adjacency(vertices: GroundSet, adj: Sequence[int], name: str = "") -> Graph:
    edges = tuple((u, w) for u in range(len(adj)) for w in bits(adj[u]) if u < w)
    return Graph(vertices, edges, GroundSet(tuple(range(1, len(edges) + 1))), name)


def incidence_graph(g: Graph) -> Graph:
    """Subdivide every edge once; a loop becomes a pendant vertex on its endpoint."""
    labels = [("v", x) for x in g.vertices] + [("e", e) for e in g.edge_names]
    edges = []
    for i, (u, v) in enumerate(g.edges):
        s = g.n + i
        edges.append((u, s))
        if u != v:
            edges.append((v, s))
    return Graph(
        GroundSet(tuple(labels)),
        tuple(edges),
        GroundSet(tuple(range(1, len(edges) + 1))),
        f"I({g.name})" if g.name else "",
    )


FAMILIES = ("path", "cycle", "fan", "wheel", "multicycle", "k3_plus", "k3_plus_plus", "complete", "star", "edgeless")


def generate(family: str, *args: int) -> Graph:
    """Canonical labelled members of small graph families; vertices are ``1..n``.

    ``k3_plus`` has an edge named ``"e"`` and ``k3_plus_plus`` one named
    ``"f"``, both joining vertices 2 and 3.
    """
    if family == "path":
        (n,) = _need(family, args, 1, lambda n: n >= 1)
        return Graph.build(n, [(i, i + 1) for i in range(1, n)], name=f"P{n}")
    if family == "cycle":
        (n,) = _need(family, args, 1, lambda n: n >= 1)
        return Graph.build(n, [(i, i % n + 1) for i in range(1, n + 1)], name=f"C{n}")
    if family == "fan":
        (n,) = _need(family, args, 1, lambda n: n >= 1)
        hub = n + 1
        edges = [(i, i + 1) for i in range(1, n)] + [(i, hub) for i in range(1, n + 1)]
        return Graph.build(n + 1, edges, name=f"F{n}")
    if family == "wheel":
        (n,) = _need(family, args, 1, lambda n: n >= 3)
        hub = n + 1
        edges = [(i, i % n + 1) for i in range(1, n + 1)] + [(i, hub) for i in range(1, n + 1)]
        return Graph.build(n + 1, edges, name=f"W{n}")
    if family == "multicycle":
        m, n = _need(family, args, 2, lambda m, n: m >= 2 and n >= 1)
        edges = [(i, i % m + 1) for i in range(1, m + 1) for _ in range(n)]
        return Graph.build(m, edges, name=f"C{m},{n}")
    if family == "k3_plus":
        _need(family, args, 0, lambda: True)
        edges = [(1, 2), (1, 2), (1, 3), (1, 3), (2, 3)]
        return Graph.build(3, edges, edge_names=[1, 2, 3, 4, "e"], name="K3+")
    if family == "k3_plus_plus":
        _need(family, args, 0, lambda: True)
        edges = []
        nxt = 4
        for end in (2, 2, 3, 3):
            a, b = nxt, nxt + 1
            nxt += 2
            edges += [(1, a), (a, b), (b, end)]
        edges.append((2, 3))
        return Graph.build(nxt - 1, edges, edge_names=list(range(1, 13)) + ["f"], name="K3++")
    if family == "complete":
        (n,) = _need(family, args, 1, lambda n: n >= 1)
        return Graph.build(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)], name=f"K{n}")
    if family == "star":
        (n,) = _need(family, args, 1, lambda n: n >= 1)
        return Graph.build(n + 1, [(1, i) for i in range(2, n + 2)], name=f"K1,{n}")
    if family == "edgeless":
        (n,) = _need(family, args, 1, lambda n: n >= 0)
        return Graph.build(n, [], name=f"E{n}")
    raise ValueError(f"unknown graph family {family!r}; expected one of {FAMILIES}")


def _need(family, args, count, ok):
    if len(args) != count:
        raise ValueError(f"{family} takes {count} parameter(s), got {len(args)}")
    if not ok(*args):
        raise ValueError(f"invalid parameters for {family}: {args}")
    return args


# -- minors -----------------------------------------------------------------------

def delete_edge(g: Graph, name: Hashable) -> Graph:
    i = _edge_index(g, name)
    keep = [j for j in range(g.m) if j != i]
    return Graph(
        g.vertices,
        tuple(g.edges[j] for j in keep),
        GroundSet(tuple(g.edge_names.elements[j] for j in keep)),
        g.name,
    )


def contract_edge(g: Graph, name: Hashable) -> Graph:
    """Identify the ends of an edge; other parallel edges become loops.

    The merged vertex keeps the label of the lower-index endpoint.  A loop
    is simply deleted.
    """
    i = _edge_index(g, name)
    u, v = g.edges[i]
    if u == v:
        return delete_edge(g, name)
    keep_v, drop_v = min(u, v), max(u, v)

    def remap(x: int) -> int:
        x = keep_v if x == drop_v else x
        return x - 1 if x > drop_v else x

    keep = [j for j in range(g.m) if j != i]
    return Graph(
        GroundSet(tuple(x for k, x in enumerate(g.vertices.elements) if k != drop_v)),
        tuple((remap(g.edges[j][0]), remap(g.edges[j][1])) for j in keep),
        GroundSet(tuple(g.edge_names.elements[j] for j in keep)),
        g.name,
    )


def delete_vertex(g: Graph, label: Hashable) -> Graph:
    try:
        vi = g.vertices.index(label)
    except KeyError:
        raise PreconditionError(f"vertex {label!r} not in graph") from None
    return g.induced_subgraph(((1 << g.n) - 1) & ~(1 << vi))


def graph_minor_ops(g: Graph, action: str, target: Hashable) -> Graph:
    ops = {"delete_edge": delete_edge, "contract_edge": contract_edge, "delete_vertex": delete_vertex}
    if action not in ops:
        raise ValueError(f"unknown minor operation {action!r}")
    return ops[action](g, target)


def _edge_index(g: Graph, name: Hashable) -> int:
    try:
        return g.edge_names.index(name)
    except KeyError:
        raise PreconditionError(f"edge {name!r} not in graph") from None
