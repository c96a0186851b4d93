"""Test corpora: small graphs and matroids, each generated deterministically."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Tuple

import networkx as nx

from .gf import GFMatrix
from .graph import Graph
from .matroid import Matroid, linear, uniform


# -- graphs --------------------------------------------------------------------------

def _as_weighted(n: int, edges: List[Tuple[int, int]]) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(n), loops=0)
    for u, v in edges:
        if u == v:
            h.nodes[u]["loops"] += 1
        elif h.has_edge(u, v):
            h[u][v]["mult"] += 1
        else:
            h.add_edge(u, v, mult=1)
    return h


def _same(a: nx.Graph, b: nx.Graph) -> bool:
    return nx.is_isomorphic(
        a, b, node_match=lambda x, y: x["loops"] == y["loops"], edge_match=lambda x, y: x["mult"] == y["mult"]
    )


def connected_multigraphs(max_edges: int) -> List[Graph]:
    """Every connected multigraph (loops and parallel edges allowed) with
    1..max_edges edges, one per isomorphism class.

    Grown one edge at a time: each connected graph with m + 1 edges arises
    from one with m edges by adding a loop, an edge between present
    vertices, or a pendant edge.
    """
    level: List[Tuple[int, List[Tuple[int, int]]]] = [(1, [(0, 0)]), (2, [(0, 1)])]
    out: List[Graph] = []
    for m in range(1, max_edges + 1):
        for n, edges in level:
            out.append(Graph.build(n, [(u + 1, v + 1) for u, v in edges], name=f"m{m}n{n}"))
        if m == max_edges:
            break
        buckets: Dict[str, List[Tuple[int, List[Tuple[int, int]], nx.Graph]]] = {}
        nxt: List[Tuple[int, List[Tuple[int, int]]]] = []
        for n, edges in level:
            grown = [(n, edges + [(u, v)]) for u in range(n) for v in range(u, n)]
            grown += [(n + 1, edges + [(u, n)]) for u in range(n)]
            for n2, e2 in grown:
                h = _as_weighted(n2, e2)
                key = nx.weisfeiler_lehman_graph_hash(h, node_attr="loops", edge_attr="mult")
                key = f"{n2}:{len(e2)}:{key}"
                bucket = buckets.setdefault(key, [])
                if any(_same(h, other) for _, _, other in bucket):
                    continue
                bucket.append((n2, e2, h))
                nxt.append((n2, sorted(e2)))
        level = nxt
    return out


def simple_graphs(max_n: int, min_n: int = 1) -> List[Graph]:
    """All simple graphs with min_n..max_n vertices up to isomorphism (max_n <= 7)."""
    if max_n > 7:
        raise ValueError("the graph atlas covers up to 7 vertices")
    out = []
    for i, h in enumerate(nx.graph_atlas_g()):
        n = h.number_of_nodes()
        if min_n <= n <= max_n:
            out.append(Graph.build(n, [(u + 1, v + 1) for u, v in h.edges()], name=f"G{i}"))
    return out


def from_networkx(h) -> Graph:
    nodes = list(h.nodes())
    pos = {v: i + 1 for i, v in enumerate(nodes)}
    return Graph.build(len(nodes), [(pos[u], pos[v]) for u, v in h.edges()])


# -- matroids --------------------------------------------------------------------------

@dataclass(frozen=True)
class MatroidRecipe:
    """Recipe for a corpus matroid so failures can be reported and replayed."""

    kind: str
    p: int = 2
    rows: Tuple[Tuple[int, ...], ...] = ()
    ncols: int = 0
    r: int = 0
    n: int = 0

    def build(self) -> Matroid:
        if self.kind == "uniform":
            return uniform(self.r, self.n)
        return linear(self.rows, self.p, self.ncols, name=self.label())

    def label(self) -> str:
        if self.kind == "uniform":
            return f"U{self.r},{self.n}"
        return f"GF({self.p}) " + ";".join("".join(map(str, r)) for r in self.rows)

    def to_dict(self) -> dict:
        if self.kind == "uniform":
            return {"kind": "uniform", "r": self.r, "n": self.n}
        return {"kind": "linear", "p": self.p, "rows": [list(r) for r in self.rows]}


def random_linear_recipes(count: int = 200, max_elements: int = 9, seed: int = 0, fields=(2, 3)) -> List[MatroidRecipe]:
    rng = random.Random(seed)
    out = []
    for i in range(count):
        p = fields[i % len(fields)]
        n = rng.randint(1, max_elements)
        r = rng.randint(1, min(4, n))
        rows = tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(r))
        out.append(MatroidRecipe("linear", p, rows, n))
    return out


def uniform_recipes(max_n: int = 7) -> List[MatroidRecipe]:
    return [MatroidRecipe("uniform", r=r, n=n) for n in range(1, max_n + 1) for r in range(n + 1)]


def matroid_corpus(count: int = 200, max_elements: int = 9, seed: int = 0, max_uniform: int = 7) -> List[MatroidRecipe]:
    return random_linear_recipes(count, max_elements, seed) + uniform_recipes(max_uniform)


def random_full_rank_gf2(rng: random.Random, max_cols: int = 5, max_rows: int = 3) -> GFMatrix:
    """A random full-row-rank GF(2) matrix, rows drawn until independent."""
    while True:
        c = rng.randint(1, max_cols)
        r = rng.randint(1, min(max_rows, c))
        rows = [[rng.randrange(2) for _ in range(c)] for _ in range(r)]
        m = GFMatrix.from_rows(rows, 2, ncols=c)
        if m.is_full_row_rank():
            return m
