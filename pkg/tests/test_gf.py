import pytest
from hypothesis import given
import hypothesis.strategies as st

from branchdepth import gf
from branchdepth.gf import GFMatrix, block_diagonal

import brute
from strategies import matrices


def test_rref_examples():
    assert GFMatrix.identity(3).rref() == GFMatrix.identity(3)
    assert GFMatrix.from_rows([[1, 1], [1, 1]]).rref().rows == ((1, 1), (0, 0))
    assert GFMatrix.from_rows([[0, 1], [1, 0]]).rref().rows == ((1, 0), (0, 1))


def test_gf3_inverse_and_rank():
    assert gf.inverse(2, 3) == 2
    assert gf.rank([[1, 2], [2, 1]], 3) == 1
    with pytest.raises(ZeroDivisionError):
        gf.inverse(0, 5)


def test_unsupported_field():
    with pytest.raises(ValueError):
        GFMatrix.from_rows([[1]], p=4)


@given(matrices(p=2, max_rows=4, max_cols=5))
def test_gf2_rank_matches_span_count(rows):
    assert gf.rank(rows, 2) == brute.span_rank_gf2(rows)
    packed = [sum(x << i for i, x in enumerate(col)) for col in zip(*rows)]
    assert gf.gf2_rank_bits(packed) == gf.rank(rows, 2)


@given(matrices(p=3, max_rows=3, max_cols=4))
def test_gf3_rank_matches_span_count(rows):
    assert gf.rank(rows, 3) == brute.rank_gfp(rows, 3)


@given(matrices(p=2, max_rows=3, max_cols=5), st.data())
def test_rref_idempotent_and_row_invariant(rows, data):
    m = GFMatrix.from_rows(rows)
    assert m.rref().rref() == m.rref()
    mix = data.draw(st.sampled_from(list(brute.invertible_matrices(m.nrows))))
    assert m.left_multiply(mix).nonzero_rref() == m.nonzero_rref()


def test_block_diagonal_shape():
    b = block_diagonal([GFMatrix.identity(1), GFMatrix.from_rows([[1, 1]])])
    assert b.rows == ((1, 0, 0), (0, 1, 1))
