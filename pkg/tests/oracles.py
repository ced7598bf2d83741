"""Brute-force reference implementations used to cross-check the library.

Nothing here shares code with the package beyond the Graph container.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import numpy as np

from lociso.graph import Graph


def edge_list(g: Graph) -> list[tuple[int, int]]:
    return [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if g.adj[u] >> v & 1]


def graph_from_edges(n: int, edges) -> Graph:
    rows = [0] * n
    for u, v in edges:
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def brute_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or len(edge_list(g)) != len(edge_list(h)):
        return False
    eg = set(edge_list(g))
    eh = {frozenset(e) for e in edge_list(h)}
    for perm in itertools.permutations(range(g.n)):
        if all(frozenset((perm[u], perm[v])) in eh for u, v in eg):
            return True
    return False


def brute_hamiltonian(g: Graph, vertices) -> bool:
    """Does the subgraph induced on ``vertices`` (|vertices| >= 3) have a spanning cycle?"""
    vs = list(vertices)
    if len(vs) < 3:
        return False
    first, rest = vs[0], vs[1:]
    for perm in itertools.permutations(rest):
        seq = (first,) + perm
        if all(g.adj[seq[i]] >> seq[(i + 1) % len(seq)] & 1 for i in range(len(seq))):
            return True
    return False


def brute_cycle_sets(g: Graph) -> list[frozenset[int]]:
    """Vertex sets that carry at least one cycle (subset enumeration)."""
    out = []
    for k in range(3, g.n + 1):
        for s in itertools.combinations(range(g.n), k):
            if brute_hamiltonian(g, s):
                out.append(frozenset(s))
    return out


def brute_lengths(g: Graph) -> set[int]:
    return {len(s) for s in brute_cycle_sets(g)}


def brute_cycle_extendable(g: Graph) -> bool:
    sets = set(brute_cycle_sets(g))
    for s in sets:
        if len(s) == g.n:
            continue
        if not any(s | {v} in sets for v in range(g.n) if v not in s):
            return False
    return True


def brute_on_triangles(g: Graph) -> bool:
    return all(
        any(g.adj[u] >> w & 1 for u, w in itertools.combinations([x for x in range(g.n) if g.adj[v] >> x & 1], 2))
        for v in range(g.n)
    )


def bfs_diameter(g: Graph, vertices) -> float:
    vs = list(vertices)
    if not vs:
        return float("inf")
    inside = set(vs)
    worst = 0
    for s in vs:
        dist = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in inside:
                    if w not in dist and g.adj[u] >> w & 1:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        if len(dist) < len(vs):
            return float("inf")
        worst = max(worst, max(dist.values()))
    return worst


def brute_locally_isometric(g: Graph) -> bool:
    return all(bfs_diameter(g, [u for u in range(g.n) if g.adj[v] >> u & 1]) <= 2 for v in range(g.n))


def _connected_edges(n: int, mask: int, pairs) -> bool:
    adj = [[] for _ in range(n)]
    for e, (u, v) in enumerate(pairs):
        if mask >> e & 1:
            adj[u].append(v)
            adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


@lru_cache(maxsize=None)
def orbit_class_counts(n: int) -> tuple[int, int]:
    """(all classes, connected classes) by orbit marking over every edge subset."""
    pairs = list(itertools.combinations(range(n), 2))
    m = len(pairs)
    index = {p: i for i, p in enumerate(pairs)}
    perms = list(itertools.permutations(range(n)))
    # image of edge e under each permutation, as a bit weight
    weights = np.zeros((len(perms), m), dtype=np.int64)
    for pi, perm in enumerate(perms):
        for e, (u, v) in enumerate(pairs):
            a, b = perm[u], perm[v]
            weights[pi, e] = 1 << index[(min(a, b), max(a, b))]
    seen = np.zeros(1 << m, dtype=bool)
    total = connected = 0
    for mask in range(1 << m):
        if seen[mask]:
            continue
        cols = [e for e in range(m) if mask >> e & 1]
        images = weights[:, cols].sum(axis=1) if cols else np.zeros(1, dtype=np.int64)
        seen[images] = True
        total += 1
        if n == 1 or _connected_edges(n, mask, pairs):
            connected += 1
    return total, connected


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return graph_from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_connected_graph(rng: random.Random, lo: int, hi: int) -> Graph:
    while True:
        g = random_graph(rng, rng.randint(lo, hi), rng.uniform(0.25, 0.8))
        if g.is_connected():
            return g


def permuted(g: Graph, perm) -> Graph:
    return graph_from_edges(g.n, [(perm[u], perm[v]) for u, v in edge_list(g)])
