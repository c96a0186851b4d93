import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from branchdepth.connectivity import CapExceeded, PreconditionError, bits
from branchdepth.corpus import random_full_rank_gf2
from branchdepth.gf import GFMatrix, block_diagonal
from branchdepth.matroid import components, contraction_depth, linear, uniform
from branchdepth.wqo import (
    LabeledMatrix,
    QuasiOrder,
    component_split,
    find_good_pair,
    is_restriction,
    matrix_contraction_depth,
    naturals,
    product_order,
    rref,
    trivial_order,
)

import brute


def ident(n, labels=()):
    return LabeledMatrix.of([[int(i == j) for j in range(n)] for i in range(n)], 2, labels)


def cycle(n):
    rows = [[1 if j in (i, (i - 1) % n) else 0 for j in range(n)] for i in range(n - 1)]
    return LabeledMatrix.of(rows, 2, name=f"C{n}")


@st.composite
def full_rank(draw, max_cols=5, max_rows=3):
    seed = draw(st.integers(0, 10**6))
    return LabeledMatrix(random_full_rank_gf2(random.Random(seed), max_cols, max_rows))


def test_rref_examples():
    assert rref(GFMatrix.from_rows([[1, 1], [1, 1]], 2)).rows == ((1, 1), (0, 0))
    assert rref(GFMatrix.from_rows([[0, 1], [1, 0]], 2)).rows == ((1, 0), (0, 1))


def test_labeled_matrix_needs_full_rank():
    with pytest.raises(PreconditionError):
        LabeledMatrix.of([[1, 1], [1, 1]], 2)
    with pytest.raises(ValueError):
        LabeledMatrix.of([[1, 0]], 2, labels=(0,))


def test_restriction_examples():
    assert is_restriction(LabeledMatrix.of([[1]], 2), ident(2)) == (0,)
    assert is_restriction(LabeledMatrix.of([[1, 1]], 2), ident(2)) is None
    n1 = LabeledMatrix.of([[1, 0], [0, 1]], 2, labels=(5, 5))
    n2 = LabeledMatrix.of([[1, 0], [0, 1]], 2, labels=(1, 1))
    assert is_restriction(n1, n2, naturals()) is None
    assert is_restriction(n2, n1, naturals()) == (0, 1)


def test_restriction_cap():
    with pytest.raises(CapExceeded):
        is_restriction(ident(1), ident(11))


@settings(max_examples=80)
@given(full_rank(max_cols=3, max_rows=2), full_rank(max_cols=4, max_rows=3))
def test_restriction_matches_row_operation_search(a, b):
    assert (is_restriction(a, b) is not None) == brute.restriction_by_row_ops(a.matrix.rows, b.matrix.rows)


@settings(max_examples=60)
@given(full_rank(max_cols=4, max_rows=3), full_rank(max_cols=5, max_rows=3))
def test_restriction_gives_matroid_restriction(a, b):
    phi = is_restriction(a, b)
    if phi is None:
        return
    m1, m2 = a.matroid(), b.matroid()
    sub = m2.restrict(sum(1 << j for j in phi))
    # the restriction keeps base order, so compare up to isomorphism
    assert brute.matroid_isomorphic(a.ncols, lambda s: m1.rank(sum(1 << i for i in s)), lambda s: sub.rank(sum(1 << i for i in s)))
    assert all(m1.rank(x) == m2.rank(sum(1 << phi[i] for i in bits(x))) for x in range(1 << a.ncols))


@given(full_rank(), full_rank(), full_rank())
def test_restriction_is_a_quasi_order(a, b, c):
    assert is_restriction(a, a) is not None
    ab, bc = is_restriction(a, b), is_restriction(b, c)
    if ab is not None and bc is not None:
        assert is_restriction(a, c) is not None


@settings(max_examples=40)
@given(full_rank(max_cols=3, max_rows=2), full_rank(max_cols=3, max_rows=2), st.data())
def test_disjoint_union_monotone(n1, n2, data):
    # pick restrictions of each by keeping a column subset with full rank rows
    def shrink(n):
        cols = data.draw(st.lists(st.integers(0, n.ncols - 1), unique=True, min_size=1))
        sub = n.matrix.columns(sorted(cols)).nonzero_rref()
        return LabeledMatrix(sub)

    s1, s2 = shrink(n1), shrink(n2)
    assert is_restriction(s1, n1) is not None and is_restriction(s2, n2) is not None
    big = LabeledMatrix(block_diagonal([n1.matrix, n2.matrix]))
    small = LabeledMatrix(block_diagonal([s1.matrix, s2.matrix]))
    assert is_restriction(small, big) is not None


def test_matrix_contraction_depth():
    u23 = LabeledMatrix.of([[1, 0, 1], [0, 1, 1]], 2)
    assert matrix_contraction_depth(u23) == contraction_depth(uniform(2, 3)).value == 3
    assert matrix_contraction_depth(ident(2)) == 1


def test_find_good_pair_examples():
    n = cycle(4)
    assert find_good_pair([n, n]) == (0, 1)
    assert find_good_pair([cycle(3), cycle(4), cycle(5)]) is None
    assert find_good_pair([ident(1), ident(2), ident(3)]) == (0, 1)
    assert find_good_pair([]) is None


def test_component_split_examples():
    blocks = component_split(GFMatrix.identity(2, 2))
    assert [(b.nrows, b.ncols) for b in blocks] == [(1, 1), (1, 1)]
    assert len(component_split(GFMatrix.from_rows([[1, 0, 1], [0, 1, 1]], 2))) == 1
    with pytest.raises(PreconditionError):
        component_split(GFMatrix.from_rows([[1, 1], [1, 1]], 2))


@given(st.integers(0, 10**6))
def test_component_split_recovers_mixed_blocks(seed):
    rng = random.Random(seed)
    diag = block_diagonal([GFMatrix.from_rows([[1, 1]], 2), GFMatrix.from_rows([[1, 1]], 2)])
    mixes = [m for m in brute.invertible_matrices(2, 2)]
    mixed = diag.left_multiply(rng.choice(mixes))
    blocks = component_split(mixed)
    assert [(b.nrows, b.ncols) for b in blocks] == [(1, 2), (1, 2)]
    assert len(components(linear(mixed.rows, 2))) == 2


@given(full_rank(max_cols=6, max_rows=3))
def test_component_split_matches_components(n):
    blocks = component_split(n.matrix)
    comps = components(n.matroid())
    assert sorted(b.ncols for b in blocks) == sorted(len(list(bits(c))) for c in comps)
    assert sum(b.nrows for b in blocks) == n.matrix.nrows


def test_quasi_orders():
    assert trivial_order().spot_check()
    assert naturals().spot_check()
    q = product_order(naturals(), ("a", "b"))
    assert q.spot_check()
    assert q((1, "a"), (2, "a")) and not q((1, "a"), (2, "b"))
    bad = QuasiOrder("bad", lambda a, b: a != b, (0, 1))
    assert not bad.spot_check()
