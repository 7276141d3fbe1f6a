"""Text format for tetrahedral meshes carrying two fields.

::

    tetfield 1
    <n_v> <n_T>
    x y z f1 f2        (n_v lines)
    a b c d            (n_T lines, 0-based vertex ids)

Floats are written with ``repr`` so a round trip is bit-exact.  Blank lines
and lines starting with ``#`` are ignored by the parser.
"""
from __future__ import annotations

import math
from typing import List, Optional, Tuple, Union

import numpy as np

from .mesh import MeshStructureError, TetField

MAGIC = "tetfield"
VERSION = "1"


class ParseError(MeshStructureError):
    """Malformed input with a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


def _tokens(line: str) -> List[Tuple[str, int]]:
    out, i, n = [], 0, len(line)
    while i < n:
        while i < n and line[i] in " \t\r":
            i += 1
        if i >= n:
            break
        j = i
        while j < n and line[j] not in " \t\r":
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def _int(tok: str, col: int, lineno: int) -> int:
    try:
        return int(tok, 10)
    except ValueError:
        raise ParseError(f"expected an integer, found {tok!r}", lineno, col) from None


def _float(tok: str, col: int, lineno: int) -> float:
    try:
        x = float(tok)
    except ValueError:
        raise ParseError(f"expected a number, found {tok!r}", lineno, col) from None
    if not math.isfinite(x):
        raise ParseError(f"non-finite value {tok!r}", lineno, col)
    return x


def parse_tetfield(data: Union[bytes, str]) -> TetField:
    """Parse the text format.

    Raises
    ------
    ParseError
        With the offending line and column.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8 text ({exc.reason})", 1) from None
    lines = [(i + 1, _tokens(s)) for i, s in enumerate(data.split("\n"))]
    lines = [(n, t) for n, t in lines if t and not t[0][0].startswith("#")]
    it = iter(lines)

    def need(what: str):
        try:
            return next(it)
        except StopIteration:
            last = lines[-1][0] if lines else 1
            raise ParseError(f"unexpected end of file, expected {what}", last + 1) from None

    n, toks = need("header")
    if len(toks) != 2 or toks[0][0] != MAGIC:
        raise ParseError(f"expected header '{MAGIC} {VERSION}'", n)
    if toks[1][0] != VERSION:
        raise ParseError(f"unsupported version {toks[1][0]!r}", n, toks[1][1])
    n, toks = need("counts")
    if len(toks) != 2:
        raise ParseError("expected '<n_v> <n_T>'", n)
    n_v, n_T = (_int(t, c, n) for t, c in toks)
    if n_v < 0 or n_T < 0:
        raise ParseError("counts must be non-negative", n)

    verts = np.empty((n_v, 5), dtype=np.float64)
    for i in range(n_v):
        n, toks = need(f"vertex {i}")
        if len(toks) != 5:
            col = toks[5][1] if len(toks) > 5 else 1
            raise ParseError(f"vertex line needs 5 numbers, found {len(toks)}", n, col)
        verts[i] = [_float(t, c, n) for t, c in toks]

    tets = np.empty((n_T, 4), dtype=np.int64)
    seen = {}
    for i in range(n_T):
        n, toks = need(f"tet {i}")
        if len(toks) != 4:
            col = toks[4][1] if len(toks) > 4 else 1
            raise ParseError(f"tet line needs 4 vertex ids, found {len(toks)}", n, col)
        ids = []
        for t, c in toks:
            v = _int(t, c, n)
            if not 0 <= v < n_v:
                raise ParseError(f"vertex id {v} out of range [0, {n_v})", n, c)
            ids.append(v)
        key = tuple(sorted(ids))
        if len(set(key)) != 4:
            raise ParseError("tet repeats a vertex", n)
        if key in seen:
            raise ParseError(f"duplicate of the tet on line {seen[key]}", n)
        seen[key] = n
        tets[i] = ids
    extra = next(it, None)
    if extra is not None:
        raise ParseError("trailing content after the last tet", extra[0], extra[1][0][1])
    return TetField(verts[:, :3], verts[:, 3], verts[:, 4], tets)


def write_tetfield(mesh: TetField) -> bytes:
    out = [f"{MAGIC} {VERSION}", f"{mesh.n_v} {mesh.n_T}"]
    P = mesh.positions.tolist()
    f1 = mesh.f1.tolist()
    f2 = mesh.f2.tolist()
    for p, a, b in zip(P, f1, f2):
        out.append(" ".join(repr(float(x)) for x in (*p, a, b)))
    for t in mesh.tets.tolist():
        out.append(" ".join(str(v) for v in t))
    return ("\n".join(out) + "\n").encode("ascii")


def read_tetfield(path) -> TetField:
    with open(path, "rb") as fh:
        return parse_tetfield(fh.read())


def save_tetfield(mesh: TetField, path: Optional[str]) -> None:
    with open(path, "wb") as fh:
        fh.write(write_tetfield(mesh))
