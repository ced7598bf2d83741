"""Canonical certificates and isomorphism tests for small graphs.

Individualisation-refinement: refine an ordered partition to an equitable one,
branch on the first smallest non-singleton cell, keep the lexicographically
largest adjacency code over all leaves. Vertices of a target cell that are
twins of each other (their transposition is an automorphism fixing the
partition) lead to identical subtrees, so one representative per twin class
is explored.
"""

from __future__ import annotations

from .graph import Graph, bits, popcount

MAX_CERT_ORDER = 12

Certificate = bytes


class UnsupportedSizeError(ValueError):
    """Raised when an input exceeds an operation's size budget."""


def _refine(adj: tuple[int, ...], cells: list[int]) -> list[int]:
    """Refine an ordered partition (list of cell bitmasks) until equitable."""
    while True:
        new_cells = []
        for cell in cells:
            if cell & (cell - 1) == 0:
                new_cells.append(cell)
                continue
            groups: dict[tuple[int, ...], int] = {}
            for v in bits(cell):
                row = adj[v]
                sig = tuple(popcount(row & c) for c in cells)
                groups[sig] = groups.get(sig, 0) | (1 << v)
            if len(groups) == 1:
                new_cells.append(cell)
            else:
                new_cells.extend(groups[k] for k in sorted(groups))
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _code(adj: tuple[int, ...], order: list[int]) -> int:
    n = len(order)
    code = 0
    for i in range(n):
        row = adj[order[i]]
        for j in range(i + 1, n):
            code = (code << 1) | (row >> order[j] & 1)
    return code


def _twin_representatives(adj: tuple[int, ...], cell: int) -> list[int]:
    reps: list[int] = []
    for v in bits(cell):
        for r in reps:
            bv, br = 1 << v, 1 << r
            if adj[v] & ~br == adj[r] & ~bv:
                break
        else:
            reps.append(v)
    return reps


def canonical_order(g: Graph) -> list[int]:
    """Vertex order (position -> original id) giving the canonical adjacency code."""
    if g.n == 0:
        return []
    adj = g.adj
    degree_groups: dict[int, int] = {}
    for v in range(g.n):
        d = popcount(adj[v])
        degree_groups[d] = degree_groups.get(d, 0) | (1 << v)
    start = _refine(adj, [degree_groups[d] for d in sorted(degree_groups)])

    best_code = -1
    best_order: list[int] = []
    stack = [start]
    while stack:
        cells = stack.pop()
        target = -1
        size = g.n + 1
        for idx, c in enumerate(cells):
            s = popcount(c)
            if 1 < s < size:
                target, size = idx, s
        if target < 0:
            order = [c.bit_length() - 1 for c in cells]
            code = _code(adj, order)
            if code > best_code:
                best_code, best_order = code, order
            continue
        cell = cells[target]
        # reversed so that the smallest representative is explored first
        for v in reversed(_twin_representatives(adj, cell)):
            split = cells[:target] + [1 << v, cell & ~(1 << v)] + cells[target + 1 :]
            stack.append(_refine(adj, split))
    return best_order


def canonical_certificate(g: Graph, limit: int = MAX_CERT_ORDER) -> Certificate:
    """Byte string: n, then the canonical upper-triangle bits (row-major), zero padded."""
    if g.n > limit:
        raise UnsupportedSizeError(f"canonical certificate supports n <= {limit}, got {g.n}")
    order = canonical_order(g)
    nbits = g.n * (g.n - 1) // 2
    code = _code(g.adj, order) if order else 0
    nbytes = (nbits + 7) // 8
    pad = nbytes * 8 - nbits
    return bytes([g.n]) + (code << pad).to_bytes(nbytes, "big")


def canonical_form(g: Graph) -> Graph:
    """Relabelled copy of ``g`` whose adjacency is the canonical one."""
    order = canonical_order(g)
    pos = {v: i for i, v in enumerate(order)}
    rows = [0] * g.n
    for v in range(g.n):
        r = 0
        for u in bits(g.adj[v]):
            r |= 1 << pos[u]
        rows[pos[v]] = r
    return Graph(g.n, tuple(rows))


def are_isomorphic(g: Graph, h: Graph, limit: int = MAX_CERT_ORDER) -> bool:
    if g.n != h.n:
        if max(g.n, h.n) > limit:
            raise UnsupportedSizeError(f"isomorphism testing supports n <= {limit}")
        return False
    if g.edge_count != h.edge_count:
        if g.n > limit:
            raise UnsupportedSizeError(f"isomorphism testing supports n <= {limit}")
        return False
    return canonical_certificate(g, limit) == canonical_certificate(h, limit)
