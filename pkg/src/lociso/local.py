"""Neighbourhood ("locally P") predicates."""

from __future__ import annotations

from dataclasses import dataclass

from .cycles import _hamiltonian_path_cycle, hamiltonian_path
from .graph import INFINITE, Graph, GraphError, induced_subgraph, mask_diameter


def local_subgraph(g: Graph, v: int) -> Graph:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} outside 0..{g.n - 1}")
    return induced_subgraph(g, g.adj[v])[0]


def neighbourhood_diameter(g: Graph, v: int) -> float:
    """Diameter of <N(v)>; an isolated vertex has an empty neighbourhood of infinite diameter."""
    return mask_diameter(g, g.adj[v])


@dataclass(frozen=True)
class LocalProfile:
    diameters: tuple[float, ...]
    min_k: float
    locally_connected: bool
    locally_traceable: bool
    locally_hamiltonian: bool
    locally_isometric: bool

    def is_locally_bounded(self, k: int) -> bool:
        return self.min_k <= k


def local_profile(g: Graph) -> LocalProfile:
    diams = tuple(neighbourhood_diameter(g, v) for v in range(g.n))
    min_k = max(diams, default=0)
    connected = min_k != INFINITE
    traceable = connected and all(hamiltonian_path(g, g.adj[v]) is not None for v in range(g.n))
    hamiltonian = traceable and all(
        _hamiltonian_path_cycle(g.adj, g.adj[v]) is not None for v in range(g.n)
    )
    return LocalProfile(
        diameters=diams,
        min_k=min_k,
        locally_connected=connected,
        locally_traceable=traceable,
        locally_hamiltonian=hamiltonian,
        locally_isometric=min_k <= 2,
    )


def local_k_bound(g: Graph) -> float:
    """Smallest k with diam<N(v)> <= k for every v (``INFINITE`` if none)."""
    return max((neighbourhood_diameter(g, v) for v in range(g.n)), default=0)


def is_locally_bounded(g: Graph, k: int) -> bool:
    return all(neighbourhood_diameter(g, v) <= k for v in range(g.n))


def is_locally_isometric(g: Graph) -> bool:
    # same as is_locally_bounded(g, 2), with a direct two-step check per pair
    adj = g.adj
    for v in range(g.n):
        nb = adj[v]
        if not nb:
            return False
        rest = nb
        while rest:
            low = rest & -rest
            rest ^= low
            u = low.bit_length() - 1
            near = adj[u] & nb
            reach = near | low
            two = 0
            m = near
            while m:
                lw = m & -m
                m ^= lw
                two |= adj[lw.bit_length() - 1]
            if (reach | two) & nb != nb:
                return False
    return True
