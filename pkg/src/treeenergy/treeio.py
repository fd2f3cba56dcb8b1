"""Edge-list text format and graph6 interop.

Edge-list format: the first line holds the vertex count ``n``; each further
line holds two whitespace-separated 0-based vertex indices.  Blank lines are
ignored on input; output uses LF line endings.
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import Iterable, Iterator, TextIO, Union

from .errors import ParameterError, TreeParseError
from .trees import Tree

__all__ = [
    "parse_tree",
    "serialize_tree",
    "read_tree",
    "write_tree",
    "parse_graph6",
    "to_graph6",
    "read_graph6",
    "dump_trees",
]

PathLike = Union[str, Path]


def parse_tree(source: Union[str, TextIO, Iterable[str]]) -> Tree:
    """Parse edge-list text into a validated :class:`Tree`."""
    lines: Iterable[str]
    if isinstance(source, str):
        lines = io.StringIO(source)
    else:
        lines = source
    n = None
    edges = []
    last = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        last = lineno
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise TreeParseError(f"line {lineno}: expected the vertex count, got {line!r}")
            try:
                n = int(parts[0])
            except ValueError:
                raise TreeParseError(f"line {lineno}: vertex count {parts[0]!r} is not an integer") from None
            if n < 0:
                raise TreeParseError(f"line {lineno}: negative vertex count {n}")
            continue
        if len(parts) != 2:
            raise TreeParseError(f"line {lineno}: expected two vertex indices, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise TreeParseError(f"line {lineno}: non-integer vertex index in {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise TreeParseError(f"line {lineno}: vertex index out of range [0, {n}) in {line!r}")
        if u == v:
            raise TreeParseError(f"line {lineno}: self-loop {line!r}")
        edges.append((u, v))
        if len(edges) > max(n - 1, 0):
            raise TreeParseError(f"line {lineno}: cyclic, more than n-1 = {n - 1} edges")
    if n is None:
        raise TreeParseError("empty input: missing vertex count")
    try:
        return Tree(n, tuple(edges))
    except ParameterError as exc:
        raise TreeParseError(f"line {last}: {exc}") from None


def serialize_tree(tree: Tree) -> str:
    return f"{tree.n}\n" + "".join(f"{u} {v}\n" for u, v in tree.edges)


def read_tree(path: PathLike) -> Tree:
    with open(path, encoding="utf-8") as fh:
        return parse_tree(fh)


def write_tree(tree: Tree, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_tree(tree))


def dump_trees(trees: Iterable[Tree], fh: TextIO) -> int:
    """Write trees back to back, each block followed by a blank separator line."""
    count = 0
    for t in trees:
        fh.write(serialize_tree(t))
        fh.write("\n")
        count += 1
    return count


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------


def _decode_n(data: bytes) -> tuple[int, bytes]:
    if not data:
        raise TreeParseError("graph6: empty string")
    if data[0] != 126:
        return data[0] - 63, data[1:]
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise TreeParseError("graph6: truncated 36-bit vertex count")
        chunk, rest = data[2:8], data[8:]
    else:
        if len(data) < 4:
            raise TreeParseError("graph6: truncated 18-bit vertex count")
        chunk, rest = data[1:4], data[4:]
    n = 0
    for c in chunk:
        n = (n << 6) | (c - 63)
    return n, rest


def parse_graph6(line: Union[str, bytes]) -> Tree:
    """Decode one graph6 string; the graph must be a tree."""
    data = line.encode("ascii") if isinstance(line, str) else bytes(line)
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    if any(not 63 <= c <= 126 for c in data):
        raise TreeParseError("graph6: byte outside the printable range 63..126")
    n, body = _decode_n(data)
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise TreeParseError(f"graph6: expected {(nbits + 5) // 6} data bytes for n={n}, got {len(body)}")
    edges = []
    k = 0
    # upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    try:
        return Tree(n, tuple(edges))
    except ParameterError as exc:
        raise TreeParseError(f"graph6: {exc}") from None


def to_graph6(tree: Tree) -> str:
    n = tree.n
    if n < 63:
        head = [n + 63]
    elif n < 258048:
        head = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        head = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    adj = {(min(u, v), max(u, v)) for u, v in tree.edges}
    bits = [1 if (i, j) in adj else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = [63 + int("".join(map(str, bits[i:i + 6])), 2) for i in range(0, len(bits), 6)]
    return bytes(head + body).decode("ascii")


def read_graph6(path: PathLike) -> Iterator[Tree]:
    with open(path, "rb") as fh:
        for raw in fh:
            if raw.strip():
                yield parse_graph6(raw)
