"""Hamiltonicity, cycle spectra and cycle extendability."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .graph import Graph, bits, component_mask, induced_subgraph, popcount
from .iso import UnsupportedSizeError

MAX_EXTENDABILITY_ORDER = 24


class CycleError(ValueError):
    """A vertex sequence is not a cycle of the host graph, or violates a precondition."""


def _canonical_rotation(seq: Sequence[int]) -> tuple[int, ...]:
    t = len(seq)
    k = min(range(t), key=seq.__getitem__)
    fwd = [seq[(k + i) % t] for i in range(t)]
    if seq[(k - 1) % t] < seq[(k + 1) % t]:
        fwd = [fwd[0]] + fwd[1:][::-1]
    return tuple(fwd)


@dataclass(frozen=True)
class Cycle:
    vertices: tuple[int, ...]
    host: Graph | None = field(default=None, compare=False, repr=False)

    @classmethod
    def of(cls, g: Graph, seq: Sequence[int]) -> "Cycle":
        t = len(seq)
        if t < 3:
            raise CycleError("a cycle needs at least 3 vertices")
        if len(set(seq)) != t:
            raise CycleError("cycle vertices must be distinct")
        for i in range(t):
            u, v = seq[i], seq[(i + 1) % t]
            if not (0 <= u < g.n and g.has_edge(u, v)):
                raise CycleError(f"{u}-{v} is not an edge of the host graph")
        return cls(_canonical_rotation(seq), g)

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= 1 << v
        return m

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i: int) -> int:
        return self.vertices[i % len(self.vertices)]

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)


# -- Hamiltonicity --------------------------------------------------------------


def _hamiltonian_path_cycle(adj: Sequence[int], allowed: int) -> list[int] | None:
    """Hamiltonian cycle of the subgraph induced by ``allowed``, as a vertex list.

    Backtracking from a minimum-degree vertex with ascending neighbour order.
    Pruning: every unvisited vertex needs two usable neighbours, the unvisited
    part must stay connected to the path end, and an unvisited vertex whose
    only usable neighbours are the path end and one other vertex forces the
    next step (this walks forced paths through degree-2 vertices at once).
    """
    verts = list(bits(allowed))
    if len(verts) < 3:
        return None
    deg = {v: popcount(adj[v] & allowed) for v in verts}
    if min(deg.values()) < 2:
        return None
    start = verts[0]
    if component_mask_raw(adj, start, allowed) != allowed:
        return None
    # static forced edges: both edges at a degree-2 vertex must be used
    forced = {v: 0 for v in verts}
    for v in verts:
        if deg[v] == 2:
            for u in bits(adj[v] & allowed):
                forced[u] |= 1 << v
            forced[v] |= adj[v] & allowed
    if any(popcount(m) > 2 for m in forced.values()):
        return None
    start = min(verts, key=lambda v: (deg[v], v))
    path = [start]

    def feasible(visited: int, cur: int) -> bool:
        unv = allowed & ~visited
        if not unv:
            return True
        ends = (1 << cur) | (1 << start)
        pool = unv | ends
        for w in bits(unv):
            if popcount(adj[w] & pool) < 2:
                return False
        if not adj[start] & unv:
            return False
        return component_mask_raw(adj, cur, unv | (1 << cur)) == unv | (1 << cur)

    def extend(visited: int, cur: int) -> bool:
        if visited == allowed:
            return bool(adj[cur] >> start & 1)
        unv = allowed & ~visited
        options = adj[cur] & unv
        must = forced[cur] & unv
        if len(path) > 1:
            prev = path[-2]
            # a forced edge back into the path (other than the incoming one) cannot be used
            if forced[cur] & visited & ~(1 << prev):
                return False
            pool = unv | (1 << cur) | (1 << start)
            for w in bits(options):
                if popcount(adj[w] & pool) == 2:
                    must |= 1 << w
            if must & (must - 1):
                return False
        else:
            # the start vertex may leave along either forced edge; the other closes the cycle
            must &= -must
        if must:
            options = must
        for w in bits(options):
            nv = visited | (1 << w)
            if not feasible(nv, w):
                continue
            path.append(w)
            if extend(nv, w):
                return True
            path.pop()
        return False

    if extend(1 << start, start):
        return path
    return None


def component_mask_raw(adj: Sequence[int], v: int, allowed: int) -> int:
    seen = 1 << v
    frontier = seen
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= adj[u]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def hamiltonian_cycle(g: Graph) -> Cycle | None:
    seq = _hamiltonian_path_cycle(g.adj, g.full_mask)
    return None if seq is None else Cycle.of(g, seq)


def is_hamiltonian_mask(g: Graph, mask: int) -> bool:
    return _hamiltonian_path_cycle(g.adj, mask) is not None


def hamiltonian_path(g: Graph, mask: int | None = None) -> list[int] | None:
    """A Hamiltonian path of the subgraph induced by ``mask`` (whole graph by default)."""
    allowed = g.full_mask if mask is None else mask
    verts = list(bits(allowed))
    if not verts:
        return None
    if len(verts) == 1:
        return verts
    if component_mask_raw(g.adj, verts[0], allowed) != allowed:
        return None
    adj = g.adj

    def rec(path: list[int], visited: int) -> bool:
        if visited == allowed:
            return True
        cur = path[-1]
        for w in bits(adj[cur] & allowed & ~visited):
            path.append(w)
            if rec(path, visited | (1 << w)):
                return True
            path.pop()
        return False

    for s in verts:
        path = [s]
        if rec(path, 1 << s):
            return path
    return None


# -- cycle lengths ----------------------------------------------------------------


def _cycle_of_length(adj: Sequence[int], n: int, length: int) -> list[int] | None:
    """Some cycle with exactly ``length`` vertices, or None."""
    for s in range(n):
        above = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)
        if popcount(adj[s] & above) < 2:
            continue
        path = [s]

        def rec(cur: int, visited: int) -> bool:
            k = len(path)
            if k == length:
                return bool(adj[cur] >> s & 1)
            allowed = above & ~visited
            # the remaining vertices must include a neighbour of s to close the cycle
            if not adj[s] & allowed:
                return False
            for w in bits(adj[cur] & allowed):
                path.append(w)
                if rec(w, visited | (1 << w)):
                    return True
                path.pop()
            return False

        if rec(s, 1 << s):
            return path
    return None


def cycle_of_length(g: Graph, length: int) -> Cycle | None:
    if length < 3 or length > g.n:
        return None
    if length == g.n:
        return hamiltonian_cycle(g)
    seq = _cycle_of_length(g.adj, g.n, length)
    return None if seq is None else Cycle.of(g, seq)


@dataclass(frozen=True)
class CycleSpectrum:
    girth: int | None
    circumference: int | None
    achieved_lengths: frozenset[int]
    weakly_pancyclic: bool
    pancyclic: bool


def spectrum_from_lengths(n: int, lengths: set[int] | frozenset[int]) -> CycleSpectrum:
    lengths = frozenset(lengths)
    if not lengths:
        # an acyclic graph has no lengths to miss
        return CycleSpectrum(None, None, lengths, True, False)
    g_, c_ = min(lengths), max(lengths)
    return CycleSpectrum(
        girth=g_,
        circumference=c_,
        achieved_lengths=lengths,
        weakly_pancyclic=lengths == frozenset(range(g_, c_ + 1)),
        pancyclic=lengths == frozenset(range(3, n + 1)),
    )


def cycle_spectrum(g: Graph) -> CycleSpectrum:
    lengths = set()
    for L in range(3, g.n + 1):
        if L == g.n:
            if _hamiltonian_path_cycle(g.adj, g.full_mask) is not None:
                lengths.add(L)
        elif _cycle_of_length(g.adj, g.n, L) is not None:
            lengths.add(L)
    return spectrum_from_lengths(g.n, lengths)


def circumference(g: Graph) -> int | None:
    """Longest cycle length, searching from n downwards."""
    for L in range(g.n, 2, -1):
        if L == g.n:
            if _hamiltonian_path_cycle(g.adj, g.full_mask) is not None:
                return L
        elif _cycle_of_length(g.adj, g.n, L) is not None:
            return L
    return None


# -- extendability ----------------------------------------------------------------


def _cycle_vertex_sets(g: Graph) -> dict[int, tuple[int, ...]]:
    """Map each vertex set spanning some cycle to the first such cycle found.

    Cycles are enumerated from their minimum vertex, through larger vertices only.
    """
    adj = g.adj
    n = g.n
    found: dict[int, tuple[int, ...]] = {}
    for s in range(n):
        above = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)
        if popcount(adj[s] & above) < 2:
            continue
        closers = adj[s] & above
        path = [s]

        def rec(cur: int, visited: int) -> None:
            if len(path) >= 3 and closers >> cur & 1 and path[1] < cur:
                if visited not in found:
                    found[visited] = tuple(path)
            for w in bits(adj[cur] & above & ~visited):
                path.append(w)
                rec(w, visited | (1 << w))
                path.pop()

        rec(s, 1 << s)
    return found


def _iter_cycles(g: Graph) -> Iterator[tuple[int, ...]]:
    """Every cycle once, in canonical rotation."""
    adj = g.adj
    n = g.n
    for s in range(n):
        above = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)
        closers = adj[s] & above
        if popcount(closers) < 2:
            continue
        path = [s]

        def rec(cur: int, visited: int) -> Iterator[tuple[int, ...]]:
            if len(path) >= 3 and closers >> cur & 1 and path[1] < cur:
                yield tuple(path)
            for w in bits(adj[cur] & above & ~visited):
                path.append(w)
                yield from rec(w, visited | (1 << w))
                path.pop()

        yield from rec(s, 1 << s)


def iter_cycles(g: Graph) -> Iterator[Cycle]:
    for seq in _iter_cycles(g):
        yield Cycle(seq, g)


def is_extendable(g: Graph, c: Cycle) -> bool:
    """True iff some off-cycle vertex v makes V(C) + v span a cycle (any order)."""
    Cycle.of(g, c.vertices)
    if c.length >= g.n:
        raise CycleError("a Hamiltonian cycle has no extension to test")
    mask = c.mask
    for v in range(g.n):
        if mask >> v & 1:
            continue
        if not g.adj[v] & mask or popcount(g.adj[v] & mask) < 2:
            continue
        if _hamiltonian_path_cycle(g.adj, mask | (1 << v)) is not None:
            return True
    return False


def extension_of(g: Graph, c: Cycle) -> Cycle | None:
    """A cycle on V(C) plus one vertex, if any."""
    mask = c.mask
    for v in range(g.n):
        if mask >> v & 1 or popcount(g.adj[v] & mask) < 2:
            continue
        seq = _hamiltonian_path_cycle(g.adj, mask | (1 << v))
        if seq is not None:
            return Cycle.of(g, seq)
    return None


@dataclass(frozen=True)
class ExtendabilityReport:
    cycle_extendable: bool
    fully_cycle_extendable: bool
    every_vertex_on_triangle: bool
    witness_nonextendable_cycle: Cycle | None
    acyclic: bool = False


def every_vertex_on_triangle(g: Graph) -> bool:
    for v in range(g.n):
        nb = g.adj[v]
        if not any(g.adj[u] & nb for u in bits(nb)):
            return False
    return True


def _nonextendable_masks(g: Graph, found: dict[int, tuple[int, ...]]) -> Iterator[int]:
    full = g.full_mask
    for mask in sorted(found, key=lambda m: (popcount(m), m)):
        if mask == full:
            continue
        rest = full & ~mask
        if not any((mask | (1 << v)) in found for v in bits(rest)):
            yield mask


def extendability_report(g: Graph) -> ExtendabilityReport:
    if g.n > MAX_EXTENDABILITY_ORDER:
        raise UnsupportedSizeError(f"extendability checks support n <= {MAX_EXTENDABILITY_ORDER}")
    triangles = every_vertex_on_triangle(g)
    found = _cycle_vertex_sets(g)
    if not found:
        return ExtendabilityReport(True, triangles, triangles, None, acyclic=True)
    witness = next(_nonextendable_masks(g, found), None)
    if witness is None:
        return ExtendabilityReport(True, triangles, triangles, None)
    return ExtendabilityReport(False, False, triangles, Cycle.of(g, found[witness]))


def is_fully_cycle_extendable(g: Graph) -> bool:
    if not every_vertex_on_triangle(g):
        return False
    return extendability_report(g).cycle_extendable


def nonextendable_cycles(g: Graph) -> Iterator[Cycle]:
    """Every non-extendable, non-Hamiltonian cycle of ``g`` in canonical rotation."""
    found = _cycle_vertex_sets(g)
    bad = set(_nonextendable_masks(g, found))
    if not bad:
        return
    for seq in _iter_cycles(g):
        m = 0
        for v in seq:
            m |= 1 << v
        if m in bad:
            yield Cycle(seq, g)


def induced_is_hamiltonian(g: Graph, vertices: Sequence[int]) -> bool:
    sub, _ = induced_subgraph(g, vertices)
    return hamiltonian_cycle(sub) is not None


__all__ = [
    "Cycle",
    "CycleError",
    "CycleSpectrum",
    "ExtendabilityReport",
    "circumference",
    "component_mask",
    "cycle_of_length",
    "cycle_spectrum",
    "extendability_report",
    "extension_of",
    "hamiltonian_cycle",
    "hamiltonian_path",
    "is_extendable",
    "is_fully_cycle_extendable",
    "iter_cycles",
    "nonextendable_cycles",
]
