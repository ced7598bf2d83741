"""Generators and recognisers for the named graph families.

Labelling conventions (fixed, so generated graphs are reproducible):

* ``P_2 x P_k`` strong grid: ``a_i`` (row 0) has id ``i - 1`` and ``b_i`` (row 1)
  has id ``k + i - 1``; the pair ``{a_i, b_i}`` is twin pair ``i - 1``.
* highrise apexes follow the grid: the apex on pair 0 first, then (even
  order) the apex on pair ``k - 1``.
* shutters follow the apexes, in insertion order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import (
    Graph,
    build_graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    empty_graph,
    join,
    path_graph,
    strong_product,
)
from .iso import MAX_CERT_ORDER, UnsupportedSizeError, canonical_certificate


class FamilyError(ValueError):
    """Invalid family parameters or an infeasible construction."""


@dataclass(frozen=True)
class FamilyParams:
    m: int
    r: int
    max_degree: int

    def validate(self) -> None:
        m, r, d = self.m, self.r, self.max_degree
        if d < 5:
            raise FamilyError(f"maximum degree must be at least 5, got {d}")
        if r < d - 4:
            raise FamilyError(f"need r >= max_degree - 4 = {d - 4}, got r={r}")
        if m < r + 5:
            raise FamilyError(f"need m >= r + 5 = {r + 5}, got m={m}")
        base = m - r
        if base % 2 == 0:
            if (base - 2) // 2 * (d - 5) < r - 2:
                raise FamilyError(f"H({m},{r},{d}): the twin pairs of H_{base} cannot absorb {r} shutters")
        elif (base - 3) // 2 * (d - 5) < r - 1:
            raise FamilyError(f"H({m},{r},{d}): the twin pairs of H_{base} cannot absorb {r} shutters")


def strong_grid(k: int) -> Graph:
    """``P_2 x P_k``."""
    return strong_product(path_graph(2), path_graph(k))


def grid_pair(k: int, i: int) -> tuple[int, int]:
    """Ids of twin pair ``i`` (0-based) of the ``P_2 x P_k`` grid."""
    return i, k + i


def _add_vertex(rows: list[int], attach: Sequence[int]) -> None:
    new = len(rows)
    mask = 0
    for v in attach:
        rows[v] |= 1 << new
        mask |= 1 << v
    rows.append(mask)


def highrise(m: int) -> Graph:
    if m < 5:
        raise FamilyError(f"highrise order must be at least 5, got {m}")
    k = (m - 1) // 2 if m % 2 else (m - 2) // 2
    rows = list(strong_grid(k).adj)
    _add_vertex(rows, grid_pair(k, 0))
    if m % 2 == 0:
        _add_vertex(rows, grid_pair(k, k - 1))
    return Graph(m, tuple(rows))


def highrise_pairs(m: int) -> list[tuple[int, int]]:
    """Twin pairs of the grid inside ``highrise(m)``, in canonical index order."""
    k = (m - 1) // 2 if m % 2 else (m - 2) // 2
    return [grid_pair(k, i) for i in range(k)]


def shuttered_highrise(params: FamilyParams, assignment: Sequence[int] | None = None) -> Graph:
    """A member of the r-shuttered highrise family H(m, r, max_degree).

    Without ``assignment`` each shutter goes to the lowest-index grid twin pair
    of degree >= 4 in the base highrise whose current degree is at most
    ``max_degree - 1``. ``assignment`` lists a pair index per shutter instead.
    """
    params.validate()
    base_order = params.m - params.r
    base = highrise(base_order)
    pairs = highrise_pairs(base_order)
    rows = list(base.adj)
    eligible = [i for i, (a, _) in enumerate(pairs) if base.degree(a) >= 4]
    if assignment is not None and len(assignment) != params.r:
        raise FamilyError(f"assignment lists {len(assignment)} pairs for {params.r} shutters")
    for s in range(params.r):
        if assignment is None:
            for i in eligible:
                if bin(rows[pairs[i][0]]).count("1") <= params.max_degree - 1:
                    choice = i
                    break
            else:
                raise FamilyError(f"no twin pair can take shutter {s + 1} within max degree {params.max_degree}")
        else:
            choice = assignment[s]
            if choice not in eligible:
                raise FamilyError(f"pair {choice} is not a twin pair of degree >= 4")
            if bin(rows[pairs[choice][0]]).count("1") > params.max_degree - 1:
                raise FamilyError(f"pair {choice} is saturated at max degree {params.max_degree}")
        _add_vertex(rows, pairs[choice])
    g = Graph(params.m, tuple(rows))
    if g.max_degree != params.max_degree:
        raise FamilyError(
            f"construction reached max degree {g.max_degree}, not {params.max_degree}"
        )
    return g


def singly_shuttered(n: int) -> Graph:
    if n < 5:
        raise FamilyError(f"singly shuttered highrises have order >= 5, got {n}")
    if n == 5:
        return join(complete_graph(2), empty_graph(3))
    return shuttered_highrise(FamilyParams(n, 1, 5))


def doubly_shuttered(n: int) -> Graph:
    if n == 6:
        return join(complete_graph(2), empty_graph(4))
    if n < 8 or n % 2:
        raise FamilyError(f"doubly shuttered highrises have order 6 or even order >= 8, got {n}")
    return shuttered_highrise(FamilyParams(n, 2, 5))


def doubly_shuttered_defined(n: int) -> bool:
    return n == 6 or (n >= 8 and n % 2 == 0)


def cube() -> Graph:
    return build_graph(8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)])


def heawood() -> Graph:
    edges = [(i, (i + 1) % 14) for i in range(14)]
    edges += [(i, (i + 5) % 14) for i in range(0, 14, 2)]
    return build_graph(14, edges)


def petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, edges)


CATALOG = {
    "k24_plus_k1": lambda: join(complete_graph(1), complete_bipartite(2, 4)),
    "k2_join_k3bar": lambda: join(complete_graph(2), empty_graph(3)),
    "k2_join_k4bar": lambda: join(complete_graph(2), empty_graph(4)),
    "cube_q3": cube,
    "k33": lambda: complete_bipartite(3, 3),
    "heawood": heawood,
    "petersen": petersen,
}


def named(name: str) -> Graph:
    try:
        return CATALOG[name]()
    except KeyError:
        raise FamilyError(f"unknown graph name {name!r}; known: {', '.join(sorted(CATALOG))}") from None


FAMILIES = ("highrise", "singly_shuttered", "doubly_shuttered", "cycle", "complete", "path")


def family_graph(family: str, order: int) -> Graph:
    if family == "highrise":
        return highrise(order)
    if family == "singly_shuttered":
        return singly_shuttered(order)
    if family == "doubly_shuttered":
        return doubly_shuttered(order)
    if family == "cycle":
        return cycle_graph(order)
    if family == "complete":
        return complete_graph(order)
    if family == "path":
        return path_graph(order)
    raise FamilyError(f"unknown family {family!r}; known: {', '.join(FAMILIES)}")


@dataclass(frozen=True)
class ExceptionClass:
    tag: str
    order: int | None = None

    def __str__(self) -> str:
        return self.tag if self.order is None else f"{self.tag}({self.order})"

    @property
    def is_exceptional(self) -> bool:
        return self.tag != "NotExceptional"


NOT_EXCEPTIONAL = ExceptionClass("NotExceptional")


def recognize_exception(g: Graph) -> ExceptionClass:
    n = g.n
    if n > MAX_CERT_ORDER:
        raise UnsupportedSizeError(f"exception recognition supports n <= {MAX_CERT_ORDER}")
    cert = canonical_certificate(g)
    # S_5 is K_2 + 3K_1; report it under that name
    if n == 5 and cert == canonical_certificate(named("k2_join_k3bar")):
        return ExceptionClass("K2JoinK3bar")
    if n >= 6 and cert == canonical_certificate(singly_shuttered(n)):
        return ExceptionClass("SinglyShuttered", n)
    if doubly_shuttered_defined(n) and cert == canonical_certificate(doubly_shuttered(n)):
        return ExceptionClass("DoublyShuttered", n)
    if n == 7 and cert == canonical_certificate(named("k24_plus_k1")):
        return ExceptionClass("K24PlusK1")
    return NOT_EXCEPTIONAL
