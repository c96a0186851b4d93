"""Labelled matrices and the restriction order.

A labelled matrix is a full-row-rank matrix over GF(p) with one label per
column.  N1 is a restriction of N2 when some column subset of N2, read in a
suitable order, becomes N1 after row operations and deleting zero rows, with
every label of N1 at most the matching label of N2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, List, Optional, Sequence, Tuple

from . import gf
from .connectivity import CAPS, PreconditionError, bits, check_cap
from .gf import GFMatrix
from .matroid import LinearMatroid, contraction_depth, fundamental_components


@dataclass(frozen=True)
class QuasiOrder:
    name: str
    leq: Callable[[Hashable, Hashable], bool] = field(compare=False)
    elements: Tuple[Hashable, ...] = ()

    def __call__(self, a: Hashable, b: Hashable) -> bool:
        return bool(self.leq(a, b))

    def spot_check(self, elements: Optional[Sequence[Hashable]] = None) -> bool:
        """Reflexivity and transitivity on the given (or declared) elements."""
        els = list(self.elements if elements is None else elements)
        if not all(self(a, a) for a in els):
            return False
        for a, b, c in itertools.product(els, repeat=3):
            if self(a, b) and self(b, c) and not self(a, c):
                return False
        return True


def trivial_order() -> QuasiOrder:
    return QuasiOrder("trivial", lambda a, b: True, (0,))


def naturals() -> QuasiOrder:
    return QuasiOrder("naturals", lambda a, b: a <= b, tuple(range(5)))


def product_order(q: QuasiOrder, finite: Sequence[Hashable]) -> QuasiOrder:
    """Q x F: (x1, x2) <= (y1, y2) iff x1 <= y1 in Q and x2 == y2."""
    els = tuple(itertools.product(q.elements, finite))
    return QuasiOrder(f"{q.name}x{len(finite)}", lambda a, b: q(a[0], b[0]) and a[1] == b[1], els)


@dataclass(frozen=True)
class LabeledMatrix:
    matrix: GFMatrix
    labels: Tuple[Hashable, ...] = ()
    name: str = ""

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", (0,) * self.matrix.ncols)
        if len(self.labels) != self.matrix.ncols:
            raise ValueError("one label per column is required")
        if not self.matrix.is_full_row_rank():
            raise PreconditionError("labelled matrices must have full row rank")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]], p: int = 2, labels: Sequence[Hashable] = (), ncols: Optional[int] = None, name: str = "") -> "LabeledMatrix":
        return cls(GFMatrix.from_rows(rows, p, ncols), tuple(labels), name)

    @property
    def ncols(self) -> int:
        return self.matrix.ncols

    @property
    def p(self) -> int:
        return self.matrix.p

    def matroid(self) -> LinearMatroid:
        return LinearMatroid(self.matrix, name=self.name)


def rref(a: GFMatrix) -> GFMatrix:
    return a.rref()


def is_restriction(
    n1: LabeledMatrix, n2: LabeledMatrix, order: Optional[QuasiOrder] = None, cap: Optional[int] = None
) -> Optional[Tuple[int, ...]]:
    """The first injection phi (column i of N1 -> column phi[i] of N2) witnessing
    N1 <= N2, in lexicographic order, or None.

    Columns are assigned one at a time; a partial assignment survives only if
    the chosen prefix of N2 has the same nonzero RREF as the prefix of N1.
    That test is exact because a row operation taking N2[Y] to N1 also takes
    every column prefix to the matching prefix.
    """
    cap = CAPS.restriction if cap is None else cap
    check_cap("is_restriction", n2.ncols, cap)
    order = order or trivial_order()
    if n1.p != n2.p or n1.ncols > n2.ncols or n1.matrix.nrows > n2.matrix.nrows:
        return None
    p = n1.p
    c1 = n1.ncols
    target = [n1.matrix.columns(range(j + 1)).nonzero_rref().rows for j in range(c1)]
    cols2 = [n2.matrix.column(j) for j in range(n2.ncols)]
    zero1 = [not any(n1.matrix.column(j)) for j in range(c1)]
    zero2 = [not any(col) for col in cols2]
    allowed = [
        [j for j in range(n2.ncols) if zero1[i] == zero2[j] and order(n1.labels[i], n2.labels[j])]
        for i in range(c1)
    ]
    phi: List[int] = []
    used = set()

    def prefix_ok() -> bool:
        rows = [[cols2[j][r] for j in phi] for r in range(n2.matrix.nrows)]
        reduced, pivots = gf.rref(rows, p)
        return tuple(tuple(r) for r in reduced[: len(pivots)]) == target[len(phi) - 1]

    def search(i: int) -> bool:
        if i == c1:
            return n2.matrix.column_rank(phi) == n1.matrix.nrows
        for j in allowed[i]:
            if j in used:
                continue
            phi.append(j)
            used.add(j)
            if prefix_ok() and search(i + 1):
                return True
            phi.pop()
            used.discard(j)
        return False

    if c1 == 0:
        return () if n1.matrix.nrows == 0 else None
    return tuple(phi) if search(0) else None


def matrix_contraction_depth(n: LabeledMatrix, cap: Optional[int] = None) -> int:
    if n.ncols == 0:
        return 0
    return contraction_depth(n.matroid(), cap).value


def find_good_pair(
    seq: Sequence[LabeledMatrix], order: Optional[QuasiOrder] = None, cap: Optional[int] = None
) -> Optional[Tuple[int, int]]:
    """First (i, j), i < j, with seq[i] <= seq[j], scanning j then i; indices are 0-based."""
    for j in range(len(seq)):
        for i in range(j):
            if is_restriction(seq[i], seq[j], order, cap) is not None:
                return i, j
    return None


def component_columns(n: GFMatrix) -> List[List[int]]:
    m = LinearMatroid(n)
    return [list(bits(c)) for c in fundamental_components(m)]


def component_split(n: GFMatrix) -> List[GFMatrix]:
    """Row-equivalent blocks, one per connected component of M(N).

    In RREF each row is supported inside the component of its pivot column,
    so the block of a component is its pivot rows restricted to its columns.
    """
    if not n.is_full_row_rank():
        raise PreconditionError("component_split needs full row rank")
    reduced, pivots = gf.rref(n.rows, n.p)
    blocks = []
    for cols in component_columns(n):
        cs = set(cols)
        rows = [[reduced[r][c] for c in cols] for r, pc in enumerate(pivots) if pc in cs]
        blocks.append(GFMatrix.from_rows(rows, n.p, ncols=len(cols)))
    return blocks
