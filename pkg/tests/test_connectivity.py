import pytest
from hypothesis import given
import hypothesis.strategies as st

from branchdepth.connectivity import (
    CapExceeded,
    ConnectivityOracle,
    GroundSet,
    PreconditionError,
    bits,
    compress,
    expand,
    is_partition,
    popcount,
    restrict_oracle,
    submasks,
    verify_axioms,
    zero_components,
)
from branchdepth.graph import Graph, cut_rank_oracle, edge_oracle, generate
from branchdepth.matroid import cycle_matroid

import brute
from strategies import multigraphs


def test_bit_helpers():
    assert list(bits(0b10110)) == [1, 2, 4]
    assert popcount(0b10110) == 3
    assert sorted(submasks(0b101)) == [0, 1, 4, 5]
    assert expand(0b11, [2, 5]) == 0b100100
    assert compress(0b100100, [2, 5]) == 0b11


def test_ground_set():
    g = GroundSet.of("abc")
    assert g.mask("ac") == 0b101
    assert g.members(0b110) == ["b", "c"]
    assert g.complement(0b001) == 0b110
    with pytest.raises(ValueError):
        GroundSet.of("aa")


def test_axioms_pass_for_triangle_and_c4():
    assert verify_axioms(edge_oracle(generate("complete", 3)))
    assert verify_axioms(cut_rank_oracle(generate("cycle", 4)))


def test_axioms_report_symmetry_witness():
    o = ConnectivityOracle(GroundSet.range(3), popcount, "size")
    rep = verify_axioms(o)
    assert not rep
    assert rep.axiom == "symmetry"
    assert rep.witness == (0b001,)
    assert rep.values == (1, 2)


def test_axioms_report_submodularity():
    # symmetric, zero on the empty set, not submodular: 1 on singletons/co-singletons, 3 on pairs of 4
    def f(x):
        k = popcount(x)
        return {0: 0, 1: 1, 2: 3, 3: 1, 4: 0}[k]

    rep = verify_axioms(ConnectivityOracle(GroundSet.range(4), f))
    assert rep.axiom == "submodularity"


def test_axioms_cap():
    o = ConnectivityOracle(GroundSet.range(12), lambda x: 0)
    with pytest.raises(CapExceeded):
        verify_axioms(o)


def test_restriction_of_component():
    g = Graph.build(5, [(1, 2), (2, 3), (4, 5)])
    lam = edge_oracle(g)
    r = restrict_oracle(lam, 0b011)
    alone = edge_oracle(Graph.build(3, [(1, 2), (2, 3)]))
    assert [r(x) for x in range(4)] == [alone(x) for x in range(4)]


def test_restriction_to_empty_set():
    r = restrict_oracle(edge_oracle(generate("path", 4)), 0)
    assert r.n == 0 and r(0) == 0


def test_restriction_needs_value_zero():
    # only the second vertex of the path sees both sides of {e1}
    with pytest.raises(PreconditionError, match="got 1"):
        restrict_oracle(edge_oracle(generate("path", 4)), 0b001)


def test_zero_components_examples():
    g = Graph.build(5, [(1, 2), (2, 3), (4, 5)])
    assert zero_components(edge_oracle(g)) == [0b011, 0b100]
    m = cycle_matroid(generate("complete", 3))
    assert zero_components(m.oracle()) == [0b111]
    coloops = cycle_matroid(generate("path", 3))
    assert zero_components(coloops.oracle()) == [0b01, 0b10]


@given(multigraphs(max_vertices=5, max_edges=6))
def test_zero_components_are_minimal_zero_sets(g):
    lam = edge_oracle(g)
    parts = zero_components(lam)
    assert is_partition(parts, lam.full) or lam.n == 0
    for p in parts:
        assert lam(p) == 0
        for sub in submasks(p):
            if sub and sub != p:
                assert lam(sub) != 0


@given(multigraphs(max_vertices=5, max_edges=6))
def test_edge_oracle_matches_definition(g):
    lam = edge_oracle(g)
    for x in range(1 << g.m):
        assert lam(x) == brute.lambda_graph(g.edges, frozenset(bits(x)))


@given(multigraphs(max_vertices=4, max_edges=5))
def test_lambda_is_additive_over_zero_parts(g):
    lam = edge_oracle(g)
    parts = zero_components(lam)
    for x in range(1 << g.m):
        assert lam(x) == sum(lam(x & p) for p in parts)
    for p in parts:
        r = restrict_oracle(lam, p)
        for sub in range(1 << r.n):
            assert r(sub) == lam(expand(sub, list(bits(p))))


@given(st.integers(1, 4), st.lists(st.integers(0, 3), min_size=16, max_size=16))
def test_local_submodularity_matches_pairwise(n, raw):
    full = (1 << n) - 1
    # symmetric, zero on the empty set and on E
    values = [0 if x in (0, full) else raw[min(x, full ^ x)] for x in range(1 << n)]
    oracle = ConnectivityOracle(GroundSet.range(n), values.__getitem__)
    pairwise = all(
        values[x] + values[y] >= values[x & y] + values[x | y] for x in range(1 << n) for y in range(1 << n)
    )
    rep = verify_axioms(oracle)
    assert rep.ok == pairwise
    if not rep.ok:
        assert rep.axiom == "submodularity"
