"""Linear algebra over small prime fields.

Matrices are plain lists of rows, each row a list of ints in ``range(p)``.
Everything here is exact and written for desk-scale sizes (a few dozen
rows and columns at most).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

SUPPORTED_PRIMES = (2, 3, 5, 7)

Row = List[int]


def check_prime(p: int) -> None:
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"unsupported field size {p}; expected one of {SUPPORTED_PRIMES}")


def inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    return pow(a, p - 2, p)


def rref(rows: Sequence[Sequence[int]], p: int) -> Tuple[List[Row], List[int]]:
    """Reduced row echelon form over GF(p).

    Returns ``(rows, pivots)`` where zero rows are kept at the bottom so the
    shape matches the input.
    """
    work = [[x % p for x in row] for row in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == len(work):
            break
        piv = next((i for i in range(r, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = inverse(work[r][c], p)
        work[r] = [(x * inv) % p for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [(a - f * b) % p for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    return work, pivots


def rank(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref(rows, p)[1])


def column_rank(rows: Sequence[Sequence[int]], cols: Iterable[int], p: int) -> int:
    """Rank of the column submatrix on ``cols``."""
    cols = list(cols)
    if not cols or not rows:
        return 0
    return rank([[row[c] for c in cols] for row in rows], p)


def gf2_rank_bits(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of vectors packed into int bitsets."""
    basis: List[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int) -> List[Row]:
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) % p for j in range(ncols)]
        for i in range(len(a))
    ]


@dataclass(frozen=True)
class GFMatrix:
    """Row-major matrix over GF(p) with a fixed number of columns.

    ``ncols`` is stored separately so that matrices with zero rows still
    know their width.
    """

    rows: Tuple[Tuple[int, ...], ...]
    ncols: int
    p: int = 2

    def __post_init__(self):
        check_prime(self.p)
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix")
            if any(not 0 <= x < self.p for x in row):
                raise ValueError(f"entry out of range for GF({self.p})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int = 2, ncols: int | None = None) -> "GFMatrix":
        rows = [tuple(int(x) % p for x in row) for row in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        return cls(tuple(rows), ncols, p)

    @classmethod
    def identity(cls, n: int, p: int = 2) -> "GFMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], p, ncols=n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def columns(self, cols: Sequence[int]) -> "GFMatrix":
        return GFMatrix(tuple(tuple(row[c] for c in cols) for row in self.rows), len(cols), self.p)

    def rank(self) -> int:
        return rank(self.rows, self.p)

    def column_rank(self, cols: Iterable[int]) -> int:
        return column_rank(self.rows, cols, self.p)

    def rref(self) -> "GFMatrix":
        reduced, _ = rref(self.rows, self.p)
        return GFMatrix(tuple(tuple(r) for r in reduced), self.ncols, self.p)

    def nonzero_rref(self) -> "GFMatrix":
        """RREF with the zero rows dropped; canonical for the row space."""
        reduced, pivots = rref(self.rows, self.p)
        return GFMatrix(tuple(tuple(r) for r in reduced[: len(pivots)]), self.ncols, self.p)

    def is_full_row_rank(self) -> bool:
        return self.rank() == self.nrows

    def left_multiply(self, a: Sequence[Sequence[int]]) -> "GFMatrix":
        return GFMatrix.from_rows(matmul(a, self.rows, self.p), self.p, ncols=self.ncols)


def block_diagonal(blocks: Sequence[GFMatrix]) -> GFMatrix:
    if not blocks:
        raise ValueError("need at least one block")
    p = blocks[0].p
    if any(b.p != p for b in blocks):
        raise ValueError("blocks over different fields")
    total = sum(b.ncols for b in blocks)
    rows: List[Tuple[int, ...]] = []
    offset = 0
    for b in blocks:
        for row in b.rows:
            full = [0] * total
            full[offset : offset + b.ncols] = row
            rows.append(tuple(full))
        offset += b.ncols
    return GFMatrix(tuple(rows), total, p)
