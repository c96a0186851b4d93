import json

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from branchdepth.connectivity import ConnectivityOracle, GroundSet, PreconditionError, mask_of, popcount, restrict_oracle
from branchdepth.decomposition import (
    Decomposition,
    InvalidDecomposition,
    branch_depth,
    branch_depth_exact,
    combine_components,
    decomposition_from_treedepth,
    exists_kr,
    hub_vertices,
    node_width,
    treedepth_from_decomposition,
    width,
)
from branchdepth.graph import Graph, cut_rank_oracle, edge_oracle, generate, tree_depth
from branchdepth.matroid import linear

import brute
from strategies import matrices, multigraphs, simple_graphs


def brute_bd(oracle):
    return brute.branch_depth(oracle.n, lambda s: oracle(mask_of(s)))


def test_width_examples():
    k3 = edge_oracle(generate("complete", 3))
    star = Decomposition.star(3)
    assert node_width(star, k3, 0) == 2
    zero = ConnectivityOracle(GroundSet.range(4), lambda x: 0)
    assert width(Decomposition.star(4), zero) == 0
    assert width(Decomposition.star(2), cut_rank_oracle(generate("path", 2))) == 1


def test_radius_examples():
    assert Decomposition.star(5).radius() == 1
    path_shaped = Decomposition.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)], [2, 3, 4, 5])
    assert path_shaped.radius() == 2


def test_invalid_trees_rejected():
    with pytest.raises(InvalidDecomposition):
        Decomposition.from_edges(2, [(0, 1)], [0, 1])
    with pytest.raises(InvalidDecomposition):
        Decomposition.from_edges(3, [(0, 1), (0, 2)], [1])
    with pytest.raises(InvalidDecomposition):
        Decomposition.from_edges(4, [(0, 1), (2, 3)], [1, 2, 3])


@pytest.mark.parametrize(
    "graph,expected",
    [
        (generate("path", 2), 0),
        (Graph.build(1, [(1, 1), (1, 1)]), 1),
        (generate("path", 4), 2),
        (generate("complete", 3), 2),
        (generate("complete", 4), 3),
        (generate("cycle", 6), 2),
        (generate("path", 7), 2),
    ],
)
def test_graph_branch_depth_values(graph, expected):
    k, dec = branch_depth_exact(edge_oracle(graph))
    assert k == expected
    if k:
        assert width(dec, edge_oracle(graph)) <= k and dec.radius() <= k


def test_exists_kr_examples():
    lam = edge_oracle(generate("path", 4))
    star = exists_kr(lam, 2, 1)
    assert star is not None and len(star.internal_nodes()) == 1
    assert exists_kr(lam, 1, 1) is None
    two = ConnectivityOracle(GroundSet.range(2), lambda x: 3 if x in (1, 2) else 0)
    assert exists_kr(two, 3, 1) is not None


@given(multigraphs(max_vertices=5, max_edges=6))
def test_graph_branch_depth_matches_brute(g):
    assert branch_depth(edge_oracle(g)) == brute_bd(edge_oracle(g))


@given(simple_graphs(max_vertices=6))
def test_rank_depth_matches_brute(g):
    assert branch_depth(cut_rank_oracle(g)) == brute_bd(cut_rank_oracle(g))


@settings(max_examples=30)
@given(matrices(p=2, max_rows=3, max_cols=6))
def test_matroid_branch_depth_matches_brute(rows):
    m = linear(rows, 2)
    assert branch_depth(m.oracle()) == brute_bd(m.oracle())


@given(multigraphs(max_vertices=5, max_edges=6), st.integers(1, 3), st.integers(1, 3))
def test_exists_kr_is_monotone(g, k, r):
    lam = edge_oracle(g)
    if lam.n < 2:
        return
    found = exists_kr(lam, k, r)
    if found is not None:
        assert width(found, lam) <= k and found.radius() <= r
        assert exists_kr(lam, k + 1, r) is not None
        assert exists_kr(lam, k, r + 1) is not None


def _piece(radius):
    if radius == 1:
        return Decomposition.star(2)
    return Decomposition.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)], [2, 3, 4, 5])


@pytest.mark.parametrize("ra,rb,expected", [(2, 1, 2), (2, 2, 3)])
def test_combine_components_radius(ra, rb, expected):
    # two components: a path with 4 edges and a path with 2 (or 4) edges
    na = 4 if ra == 2 else 2
    nb = 4 if rb == 2 else 2
    edges = [(i, i + 1) for i in range(1, na + 1)] + [(i, i + 1) for i in range(na + 2, na + nb + 2)]
    g = Graph.build(na + nb + 2, edges)
    lam = edge_oracle(g)
    a, b = (1 << na) - 1, ((1 << nb) - 1) << na
    dec = combine_components(lam, [(a, _piece(ra)), (b, _piece(rb))])
    assert dec.radius() == expected
    pieces = max(width(_piece(ra), restrict_oracle(lam, a)), width(_piece(rb), restrict_oracle(lam, b)))
    assert width(dec, lam) == pieces


def test_combine_components_with_singleton():
    g = Graph.build(7, [(1, 2), (2, 3), (3, 4), (4, 5), (6, 7)])
    lam = edge_oracle(g)
    dec = combine_components(lam, [(0b01111, _piece(2)), (0b10000, None)])
    assert dec.radius() == 2


def test_combine_components_checks_zero_parts():
    lam = edge_oracle(generate("path", 4))
    with pytest.raises(PreconditionError):
        combine_components(lam, [(0b001, None), (0b110, Decomposition.star(2))])


@settings(max_examples=25)
@given(multigraphs(max_vertices=4, max_edges=4, loops=False), multigraphs(max_vertices=4, max_edges=4, loops=False))
def test_disjoint_union_branch_depth(g1, g2):
    if g1.m < 2 or g2.m < 2 or not g1.is_connected() or not g2.is_connected():
        return
    union = Graph.build(g1.n + g2.n, [(u + 1, v + 1) for u, v in g1.edges] + [(u + 1 + g1.n, v + 1 + g1.n) for u, v in g2.edges])
    k = max(branch_depth(edge_oracle(g1)), branch_depth(edge_oracle(g2)))
    assert branch_depth(edge_oracle(union)) in (k, k + 1)


def test_td_to_bd_examples():
    k3 = generate("complete", 3)
    t, forest = tree_depth(k3)
    dec = decomposition_from_treedepth(k3, forest)
    assert t == 3 and width(dec, edge_oracle(k3)) <= 3 and dec.radius() <= 3
    star = generate("star", 3)
    t, forest = tree_depth(star)
    dec = decomposition_from_treedepth(star, forest)
    assert t == 2 and width(dec, edge_oracle(star)) <= 2 and dec.radius() <= 2
    with pytest.raises(PreconditionError):
        decomposition_from_treedepth(generate("path", 2), tree_depth(generate("path", 2))[1])


@given(multigraphs(max_vertices=6, max_edges=7))
def test_td_to_bd_construction(g):
    if g.m < 2 or not g.is_connected():
        return
    t, forest = tree_depth(g)
    dec = decomposition_from_treedepth(g, forest)
    assert width(dec, edge_oracle(g)) <= t and dec.radius() <= t


def test_bd_to_td_examples():
    p4 = generate("path", 4)
    bound, forest = treedepth_from_decomposition(p4, Decomposition.star(3))
    assert bound == 4 and forest.height() <= 4 and forest.closure_contains(p4)


@given(multigraphs(max_vertices=6, max_edges=7))
def test_bd_to_td_construction(g):
    if g.m < 2:
        return
    k, dec = branch_depth_exact(edge_oracle(g))
    bound, forest = treedepth_from_decomposition(g, dec)
    w, r = max(width(dec, edge_oracle(g)), 1), dec.radius()
    assert bound == (2 * w - 1) * r + 1
    assert forest.closure_contains(g) and forest.height() <= bound


def test_hub_vertices_examples():
    p4 = generate("path", 4)
    assert hub_vertices(p4, [0b001, 0b010, 0b100], k=2) == 0b0110
    assert hub_vertices(p4, [0b111]) == 0
    k3 = generate("complete", 3)
    hubs = hub_vertices(k3, [0b001, 0b010, 0b100], k=2)
    assert hubs == 0b111 and popcount(hubs) == 2 * 2 - 1


def test_json_and_dot_export():
    g = generate("path", 4)
    lam = edge_oracle(g)
    k, dec = branch_depth_exact(lam)
    data = json.loads(dec.to_json(g.edge_names, lam))
    assert set(data) == {"nodes", "edges", "leafMap", "width", "radius"}
    back = Decomposition.from_dict(data, g.edge_names)
    assert width(back, lam) == data["width"] and back.radius() == data["radius"]
    dot = Decomposition.star(3).to_dot(g.edge_names)
    assert dot.count("shape=circle") == 1 and dot.count("shape=box") == 3
