"""Isomorphism-class streams of small connected graphs and cubic bipartite graphs."""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterator

from .graph import Graph, bits, popcount
from .iso import UnsupportedSizeError, canonical_certificate

MAX_STREAM_ORDER = 8
MAX_CUBIC_BIPARTITE_ORDER = 16


@lru_cache(maxsize=None)
def _connected_classes(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph(1, (0,)),)
    # every connected graph has a non-cut vertex, so each class on n vertices
    # arises from a connected class on n - 1 vertices plus one new vertex
    seen: set[bytes] = set()
    out: list[Graph] = []
    new_bit = 1 << (n - 1)
    for parent in _connected_classes(n - 1):
        for nbrs in range(1, 1 << (n - 1)):
            rows = [r | new_bit if nbrs >> v & 1 else r for v, r in enumerate(parent.adj)]
            rows.append(nbrs)
            g = Graph(n, tuple(rows))
            cert = canonical_certificate(g)
            if cert not in seen:
                seen.add(cert)
                out.append(g)
    return tuple(out)


class GraphStream:
    """Connected graphs on ``n`` vertices, one per isomorphism class, in a fixed order."""

    def __init__(self, n: int, filters: tuple[Callable[[Graph], bool], ...] = ()):
        if not 1 <= n <= MAX_STREAM_ORDER:
            raise UnsupportedSizeError(
                f"built-in enumeration supports 1 <= n <= {MAX_STREAM_ORDER}; "
                "read larger orders from a graph6 file"
            )
        self.n = n
        self.filters = filters

    def where(self, predicate: Callable[[Graph], bool]) -> "GraphStream":
        return GraphStream(self.n, self.filters + (predicate,))

    def __iter__(self) -> Iterator[Graph]:
        for g in _connected_classes(self.n):
            if all(f(g) for f in self.filters):
                yield g

    def count(self) -> int:
        return sum(1 for _ in self)


def connected_graph_stream(n: int) -> GraphStream:
    return GraphStream(n)


def _cubic_bipartite(p: int) -> Iterator[tuple[int, ...]]:
    """Biadjacency row masks (rows non-decreasing) of p x p 0/1 matrices with all line sums 3."""
    triples = [m for m in range(1 << p) if popcount(m) == 3]
    rows: list[int] = []
    col = [0] * p

    def rec(start: int) -> Iterator[tuple[int, ...]]:
        i = len(rows)
        if i == p:
            yield tuple(rows)
            return
        remaining = p - i
        for t in range(start, len(triples)):
            m = triples[t]
            if any(col[c] == 3 for c in bits(m)):
                continue
            for c in bits(m):
                col[c] += 1
            # every column still needs 3 - col[c] more entries from the remaining rows
            if all(3 - col[c] <= remaining - 1 for c in range(p)):
                rows.append(m)
                yield from rec(t)
                rows.pop()
            for c in bits(m):
                col[c] -= 1

    # column symmetry: the first row can always be relabelled to {0, 1, 2}
    if p >= 3:
        col[0] = col[1] = col[2] = 1
        rows.append(0b111)
        yield from rec(0)


def _columns_descending(biadj: tuple[int, ...], p: int) -> bool:
    # Every 0/1 matrix has a doubly lexical ordering, so keeping only matrices
    # whose columns (row 0 most significant) are non-increasing loses no class.
    prev = None
    for c in range(p):
        v = 0
        for m in biadj:
            v = (v << 1) | (m >> c & 1)
        if prev is not None and v > prev:
            return False
        prev = v
    return True


@lru_cache(maxsize=None)
def cubic_bipartite_graphs(n: int) -> tuple[Graph, ...]:
    """All 3-regular bipartite graphs of order ``n`` (connected or not), up to isomorphism.

    Vertices 0..p-1 form one side and p..2p-1 the other.
    """
    if n % 2 or n > MAX_CUBIC_BIPARTITE_ORDER:
        if n % 2:
            return ()
        raise UnsupportedSizeError(f"cubic bipartite enumeration supports n <= {MAX_CUBIC_BIPARTITE_ORDER}")
    p = n // 2
    if p < 3:
        return ()
    seen: set[bytes] = set()
    out: list[Graph] = []
    for biadj in _cubic_bipartite(p):
        if not _columns_descending(biadj, p):
            continue
        rows = [m << p for m in biadj]
        right = [0] * p
        for i, m in enumerate(biadj):
            for c in bits(m):
                right[c] |= 1 << i
        g = Graph(n, tuple(rows + right))
        cert = canonical_certificate(g, limit=n)
        if cert not in seen:
            seen.add(cert)
            out.append(g)
    return tuple(out)
