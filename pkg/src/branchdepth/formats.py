"""Text formats for graphs, matrices and uniform matroids.

Graph::

    p graph <n> <m>
    e <u> <v>          (m lines, 1-indexed)
    name <string>      (optional)
    matroid graphic    (optional: read as a cycle matroid)

Matrix::

    p matrix <p> <r> <c>
    <r rows of c integers>
    l <label> ... <label>   (optional, one natural per column)

Uniform matroid: a single line ``uniform <r> <n>``.  Lines starting with
``c`` or ``#`` are comments.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

from .gf import GFMatrix
from .graph import Graph
from .matroid import Matroid, cycle_matroid, linear, uniform
from .wqo import LabeledMatrix


class ParseError(ValueError):
    pass


def _lines(text: str) -> List[List[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#") or line.split()[0] == "c":
            continue
        out.append(line.split())
    return out


def _int(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer for {what}, got {tok!r}") from None


def detect_format(text: str) -> str:
    """``graph``, ``graphic``, ``matrix`` or ``uniform`` from the header token."""
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input")
    head = lines[0]
    if head[0] == "uniform":
        return "uniform"
    if head[0] == "p" and len(head) >= 2:
        if head[1] == "graph":
            return "graphic" if any(l[:2] == ["matroid", "graphic"] for l in lines) else "graph"
        if head[1] == "matrix":
            return "matrix"
    raise ParseError(f"unrecognised header {' '.join(head)!r}")


def parse_graph(text: str) -> Graph:
    lines = _lines(text)
    if not lines or lines[0][:2] != ["p", "graph"] or len(lines[0]) != 4:
        raise ParseError("graph input must start with 'p graph <n> <m>'")
    n = _int(lines[0][2], "n")
    m = _int(lines[0][3], "m")
    if n < 0 or m < 0:
        raise ParseError("negative size in header")
    edges: List[Tuple[int, int]] = []
    name = ""
    for tok in lines[1:]:
        if tok[0] == "e":
            if len(tok) != 3:
                raise ParseError(f"bad edge line {' '.join(tok)!r}")
            u, v = _int(tok[1], "vertex"), _int(tok[2], "vertex")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"edge {u} {v} outside 1..{n}")
            edges.append((u, v))
        elif tok[0] == "name":
            name = " ".join(tok[1:])
        elif tok[:2] == ["matroid", "graphic"]:
            continue
        else:
            raise ParseError(f"unknown line {' '.join(tok)!r}")
    if len(edges) != m:
        raise ParseError(f"header says {m} edges, found {len(edges)}")
    return Graph.build(n, edges, name=name)


@dataclass(frozen=True)
class MatrixInput:
    matrix: GFMatrix
    labels: Optional[Tuple[int, ...]]
    name: str = ""


def parse_matrix(text: str) -> MatrixInput:
    lines = _lines(text)
    if not lines or lines[0][:2] != ["p", "matrix"] or len(lines[0]) != 5:
        raise ParseError("matrix input must start with 'p matrix <p> <r> <c>'")
    p, r, c = (_int(t, "header") for t in lines[0][2:])
    rows = []
    labels = None
    name = ""
    for tok in lines[1:]:
        if tok[0] == "l":
            labels = tuple(_int(t, "label") for t in tok[1:])
            if len(labels) != c or any(x < 0 for x in labels):
                raise ParseError("label line needs one natural per column")
        elif tok[0] == "name":
            name = " ".join(tok[1:])
        else:
            row = [_int(t, "entry") for t in tok]
            if len(row) != c:
                raise ParseError(f"row has {len(row)} entries, expected {c}")
            rows.append(row)
    if len(rows) != r:
        raise ParseError(f"header says {r} rows, found {len(rows)}")
    try:
        matrix = GFMatrix.from_rows(rows, p, ncols=c)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return MatrixInput(matrix, labels, name)


def parse_uniform(text: str) -> Tuple[int, int]:
    lines = _lines(text)
    if len(lines) != 1 or lines[0][0] != "uniform" or len(lines[0]) != 3:
        raise ParseError("uniform input is a single line 'uniform <r> <n>'")
    r, n = _int(lines[0][1], "r"), _int(lines[0][2], "n")
    if not 0 <= r <= n:
        raise ParseError("need 0 <= r <= n")
    return r, n


def parse_matroid(text: str, backend: str = "auto") -> Matroid:
    kind = detect_format(text)
    if backend not in ("auto", kind) and not (backend == "graphic" and kind == "graph"):
        raise ParseError(f"input is {kind}, not {backend}")
    if kind in ("graph", "graphic"):
        g = parse_graph(text)
        return cycle_matroid(g)
    if kind == "matrix":
        mi = parse_matrix(text)
        return linear(mi.matrix.rows, mi.matrix.p, mi.matrix.ncols, name=mi.name)
    r, n = parse_uniform(text)
    return uniform(r, n)


def parse_labeled_matrix(text: str) -> LabeledMatrix:
    kind = detect_format(text)
    if kind != "matrix":
        raise ParseError("labelled matrices use the matrix format")
    mi = parse_matrix(text)
    try:
        return LabeledMatrix(mi.matrix, mi.labels or (), mi.name)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def dump_graph(g: Graph, graphic: bool = False) -> str:
    """Graph format; vertices are renumbered 1..n in ground-set order."""
    lines = [f"p graph {g.n} {g.m}"]
    if g.name:
        lines.append(f"name {g.name}")
    if graphic:
        lines.append("matroid graphic")
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def dump_matrix(n: Union[GFMatrix, LabeledMatrix]) -> str:
    labels = None
    if isinstance(n, LabeledMatrix):
        labels, n = n.labels, n.matrix
    lines = [f"p matrix {n.p} {n.nrows} {n.ncols}"]
    lines += [" ".join(map(str, row)) for row in n.rows]
    if labels is not None:
        lines.append("l " + " ".join(map(str, labels)))
    return "\n".join(lines) + "\n"


def read_text(path: Union[str, Path]) -> str:
    return Path(path).read_text()
