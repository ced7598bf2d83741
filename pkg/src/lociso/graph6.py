"""graph6 text codec (single-byte order header, n <= 62)."""

from __future__ import annotations

import sys
from typing import IO, Iterable, Iterator

from .graph import Graph

MAX_GRAPH6_ORDER = 62


class Graph6Error(ValueError):
    """A graph6 line could not be parsed; ``offset`` is the 0-based byte position."""

    def __init__(self, message: str, offset: int, line_number: int | None = None):
        self.offset = offset
        self.line_number = line_number
        where = f"byte {offset}" if line_number is None else f"line {line_number}, byte {offset}"
        super().__init__(f"{message} ({where})")


def encode(g: Graph) -> str:
    if g.n > MAX_GRAPH6_ORDER:
        raise ValueError(f"graph6 encoding supports n <= {MAX_GRAPH6_ORDER}, got {g.n}")
    out = [chr(63 + g.n)]
    acc = 0
    nacc = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nacc += 1
            if nacc == 6:
                out.append(chr(63 + acc))
                acc = nacc = 0
    if nacc:
        out.append(chr(63 + (acc << (6 - nacc))))
    return "".join(out)


def decode(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("latin-1")
    line = text.rstrip("\r\n")
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
        base = len(">>graph6<<")
    else:
        base = 0
    if not line:
        raise Graph6Error("empty graph6 line", base)
    for k, ch in enumerate(line):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"invalid graph6 byte {ch!r}", base + k)
    n = ord(line[0]) - 63
    if n > MAX_GRAPH6_ORDER:
        raise Graph6Error("multi-byte order headers are not supported", base)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = line[1:]
    if len(body) < nbytes:
        raise Graph6Error(f"truncated: expected {nbytes} data bytes, got {len(body)}", base + len(line))
    if len(body) > nbytes:
        raise Graph6Error("trailing garbage after graph data", base + 1 + nbytes)
    rows = [0] * n
    i, j = 0, 1
    consumed = 0
    for k, ch in enumerate(body):
        val = ord(ch) - 63
        for shift in range(5, -1, -1):
            if consumed == nbits:
                if val & ((1 << (shift + 1)) - 1):
                    raise Graph6Error("non-zero padding bits", base + 1 + k)
                break
            if val >> shift & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            consumed += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, tuple(rows))


def iter_lines(stream: IO[str]) -> Iterator[tuple[int, str]]:
    """Yield (1-based line number, graph6 text), skipping blanks and '>' header lines."""
    for number, raw in enumerate(stream, start=1):
        line = raw.strip()
        if line.startswith(">>graph6<<"):
            line = line[len(">>graph6<<"):]
        elif line.startswith(">"):
            continue
        if not line:
            continue
        yield number, line


def read_graphs(stream: IO[str]) -> Iterator[Graph]:
    for number, line in iter_lines(stream):
        try:
            yield decode(line)
        except Graph6Error as exc:
            raise Graph6Error(str(exc).rsplit(" (", 1)[0], exc.offset, number) from None


def read_path(path: str) -> Iterator[Graph]:
    if path == "-":
        yield from read_graphs(sys.stdin)
        return
    with open(path, encoding="latin-1") as fh:
        yield from read_graphs(fh)


def write_graphs(graphs: Iterable[Graph], stream: IO[str]) -> int:
    count = 0
    for g in graphs:
        stream.write(encode(g) + "\n")
        count += 1
    return count
