"""Immutable simple graphs on dense integer vertex ids, stored as adjacency bit rows."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

INFINITE = math.inf

MAX_ORDER = 64


class GraphError(ValueError):
    """Raised for malformed graph construction input."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    edge_count: int = field(compare=False, default=-1)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError("adjacency rows do not match vertex count")
        if self.edge_count < 0:
            object.__setattr__(self, "edge_count", sum(popcount(r) for r in self.adj) // 2)

    # -- queries -------------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def closed_mask(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.adj]

    @property
    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def neighborhood_of_set(self, mask: int) -> int:
        """Union of the open neighbourhoods of the vertices in ``mask``."""
        out = 0
        for v in bits(mask):
            out |= self.adj[v]
        return out

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        return component_mask(self, 0) == self.full_mask

    def components(self) -> list[int]:
        seen = 0
        comps = []
        for v in range(self.n):
            if not seen >> v & 1:
                comp = component_mask(self, v)
                comps.append(comp)
                seen |= comp
        return comps

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    if n > MAX_ORDER:
        raise GraphError(f"order {n} exceeds supported maximum {MAX_ORDER}")
    rows = [0] * n
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def from_rows(rows: Sequence[int]) -> Graph:
    """Build from adjacency bit rows, validating symmetry and irreflexivity."""
    n = len(rows)
    for u, r in enumerate(rows):
        if r >> u & 1:
            raise GraphError(f"self-loop at vertex {u}")
        if r >> n:
            raise GraphError(f"row {u} references a vertex >= {n}")
        for v in bits(r):
            if not rows[v] >> u & 1:
                raise GraphError(f"asymmetric adjacency between {u} and {v}")
    return Graph(n, tuple(rows))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def component_mask(g: Graph, v: int, within: int | None = None) -> int:
    """Vertices reachable from ``v`` using only vertices in ``within``."""
    allowed = g.full_mask if within is None else within
    seen = 1 << v
    frontier = seen
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= g.adj[u]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def induced_subgraph(g: Graph, vertices: Iterable[int] | int) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``vertices`` (an iterable of ids or a bitmask).

    Returns the subgraph and the list mapping each new id to its original id;
    new ids follow ascending original ids.
    """
    if isinstance(vertices, int):
        if vertices >> g.n:
            raise GraphError("vertex mask references vertices outside the graph")
        keep = list(bits(vertices))
    else:
        keep = sorted(set(vertices))
        for v in keep:
            if not 0 <= v < g.n:
                raise GraphError(f"vertex {v} outside 0..{g.n - 1}")
    index = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        r = 0
        for u in bits(g.adj[v]):
            i = index.get(u)
            if i is not None:
                r |= 1 << i
        rows.append(r)
    return Graph(len(keep), tuple(rows)), keep


def delete_vertex(g: Graph, v: int) -> tuple[Graph, list[int]]:
    return induced_subgraph(g, g.full_mask & ~(1 << v))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    rows = [0] * g.n
    for v in range(g.n):
        r = 0
        for u in bits(g.adj[v]):
            r |= 1 << perm[u]
        rows[perm[v]] = r
    return Graph(g.n, tuple(rows))


def eccentricities_within(g: Graph, mask: int) -> list[float]:
    """BFS eccentricity of each vertex of ``mask`` inside the induced subgraph."""
    out = []
    for v in bits(mask):
        seen = 1 << v
        frontier = seen
        depth = 0
        while True:
            nxt = 0
            for u in bits(frontier):
                nxt |= g.adj[u]
            nxt &= mask & ~seen
            if not nxt:
                break
            seen |= nxt
            frontier = nxt
            depth += 1
        out.append(depth if seen == mask else INFINITE)
    return out


def diameter(g: Graph) -> float:
    """Largest shortest-path distance; ``INFINITE`` when disconnected or empty."""
    if g.n == 0:
        return INFINITE
    return max(eccentricities_within(g, g.full_mask))


def mask_diameter(g: Graph, mask: int) -> float:
    """Diameter of the subgraph induced by ``mask`` without materialising it."""
    if not mask:
        return INFINITE
    return max(eccentricities_within(g, mask))


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union of ``g`` and ``h`` plus every edge between them; ``g`` keeps ids 0..n(g)-1."""
    ng = g.n
    g_mask = (1 << ng) - 1
    h_mask = ((1 << h.n) - 1) << ng
    rows = [r | h_mask for r in g.adj] + [(r << ng) | g_mask for r in h.adj]
    return Graph(ng + h.n, tuple(rows))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    return Graph(g.n + h.n, g.adj + tuple(r << g.n for r in h.adj))


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph(g.n, tuple(full & ~r & ~(1 << v) for v, r in enumerate(g.adj)))


def strong_product(g: Graph, h: Graph) -> Graph:
    """Strong product with id((u, v)) = u * n(h) + v."""
    nh = h.n
    rows = []
    for u in range(g.n):
        gu = g.closed_mask(u)
        for v in range(h.n):
            hv = h.closed_mask(v)
            r = 0
            for x in bits(gu):
                r |= hv << (x * nh)
            rows.append(r & ~(1 << (u * nh + v)))
    return Graph(g.n * nh, tuple(rows))


@dataclass(frozen=True)
class TwinReport:
    true_twin_pairs: list[tuple[int, int]]
    false_twin_pairs: list[tuple[int, int]]
    degree: dict[tuple[int, int], int]

    def true_twins_of_degree(self, d: int) -> list[tuple[int, int]]:
        return [p for p in self.true_twin_pairs if self.degree[p] == d]


def twin_pairs(g: Graph) -> TwinReport:
    true_pairs, false_pairs, degree = [], [], {}
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.adj[u] >> v & 1:
                if g.closed_mask(u) == g.closed_mask(v):
                    true_pairs.append((u, v))
                    degree[(u, v)] = g.degree(u)
            elif g.adj[u] == g.adj[v]:
                false_pairs.append((u, v))
                degree[(u, v)] = g.degree(u)
    return TwinReport(true_pairs, false_pairs, degree)


def has_true_twins_of_degree(g: Graph, d: int) -> bool:
    for u in range(g.n):
        if popcount(g.adj[u]) != d:
            continue
        cu = g.closed_mask(u)
        for v in bits(g.adj[u] >> (u + 1) << (u + 1)):
            if g.closed_mask(v) == cu:
                return True
    return False


@dataclass(frozen=True)
class DegreeProfile:
    min_degree: int
    max_degree: int
    sequence: list[int]
    degree_two: list[int]


def degree_profile(g: Graph) -> DegreeProfile:
    degs = g.degrees()
    return DegreeProfile(
        min_degree=min(degs, default=0),
        max_degree=max(degs, default=0),
        sequence=sorted(degs),
        degree_two=[v for v, d in enumerate(degs) if d == 2],
    )


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def bipartition(g: Graph) -> tuple[list[int], list[int]] | None:
    """Two-colouring with the smallest vertex of each component on the first side."""
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] != -1:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in bits(g.adj[u]):
                if colour[w] == -1:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return None
    return [v for v in range(g.n) if colour[v] == 0], [v for v in range(g.n) if colour[v] == 1]
