"""Vertex-to-triangle gadget transforms of cubic bipartite graphs and Hamilton-cycle lifting.

Every source vertex becomes a triangle on layers 1, 2, 3. With ``u_i``'s edges
to ``v_j``, ``v_k``, ``v_l`` lying in 1-factors F1, F2, F3 respectively:

* variant G1 joins ``u_i^1`` to ``v_j^1 v_k^1 v_l^1 v_j^2 v_l^2`` and ``u_i^2`` to
  ``v_j^2 v_k^2 v_l^2 v_k^1 v_l^1`` (maximum degree 7, neighbourhood diameter <= 3);
* variant G2 joins both ``u_i^1`` and ``u_i^2`` to all six layer-1/2 vertices of
  ``v_j``, ``v_k``, ``v_l`` (maximum degree 8, locally isometric).

Layer-3 vertices keep degree 2, so every Hamilton cycle of the output walks each
triangle as ``x^1 x^3 x^2`` and the layer-3 order recovers a Hamilton cycle of
the source. Planarity of the source is irrelevant here and is not checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .cycles import Cycle, CycleError, hamiltonian_cycle
from .graph import Graph, bipartition, bits, build_graph, popcount
from .iso import UnsupportedSizeError
from .local import local_k_bound

MAX_HAM_CHECK_ORDER = 48


class ReductionError(ValueError):
    """Input is not a cubic bipartite graph with the stated parts."""


class InvariantError(RuntimeError):
    """An internal consistency check failed (wiring bug or a broken argument)."""


class Variant(str, Enum):
    G1 = "G1"
    G2 = "G2"

    @classmethod
    def parse(cls, text: str) -> "Variant":
        return cls(text.upper())


@dataclass(frozen=True)
class GadgetLabel:
    side: str  # "U" or "V"
    index: int  # 1-based
    layer: int  # 1, 2, 3

    def __str__(self) -> str:
        return f"{self.side} {self.index} {self.layer}"


@dataclass(frozen=True)
class OneFactorization:
    factors: tuple[frozenset[tuple[int, int]], ...]

    def factor_of(self, u: int, v: int) -> int:
        e = (min(u, v), max(u, v))
        for i, f in enumerate(self.factors):
            if e in f:
                return i
        raise KeyError(e)


@dataclass(frozen=True)
class ReducedInstance:
    variant: Variant
    graph: Graph
    labels: tuple[GadgetLabel, ...]
    factorization: OneFactorization
    source: Graph = field(repr=False)
    parts: tuple[tuple[int, ...], tuple[int, ...]] = field(repr=False)

    def vertex(self, side: str, index: int, layer: int) -> int:
        base = 0 if side == "U" else 3 * len(self.parts[0])
        return base + 3 * (index - 1) + (layer - 1)

    def gadget_vertex(self, source_vertex: int, layer: int) -> int:
        """Id of ``layer`` in the triangle replacing ``source_vertex``."""
        u_side, v_side = self.parts
        if source_vertex in u_side:
            return self.vertex("U", u_side.index(source_vertex) + 1, layer)
        return self.vertex("V", v_side.index(source_vertex) + 1, layer)

    def source_vertex(self, vertex: int) -> int:
        lab = self.labels[vertex]
        side = self.parts[0] if lab.side == "U" else self.parts[1]
        return side[lab.index - 1]

    def label_map_lines(self) -> list[str]:
        return [f"{lab} {vid}" for vid, lab in enumerate(self.labels)]


def _check_cubic_bipartite(g: Graph, parts: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if len(parts) != 2:
        raise ReductionError("expected exactly two parts")
    left, right = tuple(sorted(parts[0])), tuple(sorted(parts[1]))
    if len(left) != len(right):
        raise ReductionError(f"parts have different sizes {len(left)} and {len(right)}")
    if set(left) & set(right) or set(left) | set(right) != set(range(g.n)):
        raise ReductionError("parts must partition the vertex set")
    lmask = sum(1 << v for v in left)
    rmask = sum(1 << v for v in right)
    for v in range(g.n):
        if g.degree(v) != 3:
            raise ReductionError(f"vertex {v} has degree {g.degree(v)}; the graph must be 3-regular")
        own = lmask if v in left else rmask
        if g.adj[v] & own:
            raise ReductionError(f"vertex {v} has a neighbour in its own part")
    return left, right


def default_parts(g: Graph) -> tuple[list[int], list[int]]:
    parts = bipartition(g)
    if parts is None:
        raise ReductionError("graph is not bipartite")
    return parts


def _perfect_matching(left: Sequence[int], right_adj: dict[int, list[int]], avail: dict[int, list[int]]) -> dict[int, int]:
    """Augmenting-path matching of ``left`` into the right side over ``avail`` edges."""
    match_right: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for w in avail[u]:
            if w in seen:
                continue
            seen.add(w)
            if w not in match_right or augment(match_right[w], seen):
                match_right[w] = u
                return True
        return False

    for u in left:
        if not augment(u, set()):
            raise InvariantError("regular bipartite graph without a perfect matching")
    return {u: w for w, u in match_right.items()}


def one_factorization(g: Graph, parts: Sequence[Sequence[int]] | None = None) -> OneFactorization:
    left, right = _check_cubic_bipartite(g, parts if parts is not None else default_parts(g))
    avail = {u: sorted(g.neighbors(u)) for u in left}
    factors = []
    for _ in range(3):
        m = _perfect_matching(left, {}, avail)
        factors.append(frozenset((min(u, w), max(u, w)) for u, w in m.items()))
        for u, w in m.items():
            avail[u].remove(w)
    fac = OneFactorization(tuple(factors))
    _validate_factorization(g, fac)
    return fac


def _validate_factorization(g: Graph, fac: OneFactorization) -> None:
    union: set[tuple[int, int]] = set()
    for f in fac.factors:
        touched = [v for e in f for v in e]
        if len(touched) != g.n or len(set(touched)) != g.n:
            raise InvariantError("factor is not a perfect matching")
        if union & f:
            raise InvariantError("factors overlap")
        union |= f
    if union != set(g.edges()):
        raise InvariantError("factors do not cover the edge set")


def gadget_transform(
    g: Graph, parts: Sequence[Sequence[int]] | None = None, variant: Variant | str = Variant.G2
) -> ReducedInstance:
    variant = Variant.parse(variant) if isinstance(variant, str) else variant
    left, right = _check_cubic_bipartite(g, parts if parts is not None else default_parts(g))
    fac = one_factorization(g, (left, right))
    p = len(left)
    labels = [GadgetLabel("U", i + 1, layer) for i in range(p) for layer in (1, 2, 3)]
    labels += [GadgetLabel("V", i + 1, layer) for i in range(p) for layer in (1, 2, 3)]
    r_index = {v: i for i, v in enumerate(right)}

    def uid(i: int, layer: int) -> int:
        return 3 * i + layer - 1

    def vid(i: int, layer: int) -> int:
        return 3 * p + 3 * i + layer - 1

    edges: list[tuple[int, int]] = []
    for i in range(p):
        for base in (uid, vid):
            edges += [(base(i, 1), base(i, 2)), (base(i, 1), base(i, 3)), (base(i, 2), base(i, 3))]
    for i, u in enumerate(left):
        role = {fac.factor_of(u, w): r_index[w] for w in g.neighbors(u)}
        j, k, l_ = role[0], role[1], role[2]
        if variant is Variant.G1:
            edges += [(uid(i, 1), vid(x, 1)) for x in (j, k, l_)]
            edges += [(uid(i, 1), vid(j, 2)), (uid(i, 1), vid(l_, 2))]
            edges += [(uid(i, 2), vid(x, 2)) for x in (j, k, l_)]
            edges += [(uid(i, 2), vid(k, 1)), (uid(i, 2), vid(l_, 1))]
        else:
            for a in (1, 2):
                for x in (j, k, l_):
                    for b in (1, 2):
                        edges.append((uid(i, a), vid(x, b)))
    out = build_graph(6 * p, edges)
    inst = ReducedInstance(variant, out, tuple(labels), fac, g, (left, right))
    _check_instance(inst)
    return inst


def _check_instance(inst: ReducedInstance) -> None:
    g, src = inst.graph, inst.source
    p = src.n // 2
    expected_edges = 6 * p + (10 * p if inst.variant is Variant.G1 else 12 * p)
    if g.n != 3 * src.n or g.edge_count != expected_edges:
        raise InvariantError("reduced instance has the wrong size")
    for v, lab in enumerate(inst.labels):
        if lab.layer == 3 and g.degree(v) != 2:
            raise InvariantError(f"layer-3 vertex {v} has degree {g.degree(v)}")


def expected_max_degree(variant: Variant) -> int:
    return 7 if variant is Variant.G1 else 8


def expected_local_bound(variant: Variant) -> int:
    return 3 if variant is Variant.G1 else 2


def _is_spanning_subdivided_star(g: Graph, nb: int) -> bool:
    """<nb> has a spanning K_{1,s} with exactly one edge subdivided."""
    for c in bits(nb):
        others = nb & ~(1 << c)
        missing = others & ~g.adj[c]
        if popcount(missing) > 1:
            continue
        candidates = [missing] if missing else [1 << b for b in bits(others)]
        for bmask in candidates:
            b = bmask.bit_length() - 1
            if g.adj[b] & g.adj[c] & others & ~bmask:
                return True
    return False


def _has_spanning_star(g: Graph, nb: int) -> bool:
    return any(nb & ~(1 << c) & ~g.adj[c] == 0 for c in bits(nb))


def neighbourhood_structure_ok(inst: ReducedInstance) -> bool:
    """Layer-1/2 neighbourhoods contain the spanning subdivided 5-star (G1) or 7-star (G2)."""
    g = inst.graph
    for v, lab in enumerate(inst.labels):
        nb = g.adj[v]
        if lab.layer == 3:
            if popcount(nb) != 2 or not g.adj[(nb & -nb).bit_length() - 1] & nb:
                return False
            continue
        if inst.variant is Variant.G1:
            if popcount(nb) != 7 or not _is_spanning_subdivided_star(g, nb):
                return False
        elif popcount(nb) != 8 or not _has_spanning_star(g, nb):
            return False
    return True


def _alternating_start(src_cycle: Sequence[int], left: Sequence[int]) -> list[int]:
    seq = list(src_cycle)
    k = next(i for i, v in enumerate(seq) if v in left)
    return seq[k:] + seq[:k]


def lift_cycle(cycle: Cycle | Sequence[int], inst: ReducedInstance) -> Cycle:
    """Hamilton cycle of the source -> Hamilton cycle of the reduced graph.

    The source cycle alternates U/V; each ``u`` becomes ``u^2 u^3 u^1`` and
    each ``v`` becomes ``v^1 v^3 v^2``.
    """
    seq = _alternating_start(cycle, inst.parts[0])
    if len(seq) != inst.source.n:
        raise CycleError("lift_cycle needs a Hamilton cycle of the source graph")
    Cycle.of(inst.source, seq)
    out: list[int] = []
    for v in seq:
        layers = (2, 3, 1) if v in inst.parts[0] else (1, 3, 2)
        out += [inst.gadget_vertex(v, layer) for layer in layers]
    try:
        return Cycle.of(inst.graph, out)
    except CycleError as exc:
        raise InvariantError(f"lifted sequence is not a cycle of the reduced graph: {exc}") from None


def project_cycle(cycle: Cycle | Sequence[int], inst: ReducedInstance) -> Cycle:
    """Hamilton cycle of the reduced graph -> Hamilton cycle of the source (layer-3 order)."""
    seq = list(cycle)
    if len(seq) != inst.graph.n:
        raise CycleError("project_cycle needs a Hamilton cycle of the reduced graph")
    Cycle.of(inst.graph, seq)
    order = [inst.source_vertex(v) for v in seq if inst.labels[v].layer == 3]
    left = set(inst.parts[0])
    for a, b in zip(order, order[1:] + order[:1]):
        if (a in left) == (b in left):
            raise InvariantError("layer-3 order does not alternate between the parts")
    try:
        return Cycle.of(inst.source, order)
    except CycleError as exc:
        raise InvariantError(f"projected sequence is not a cycle of the source: {exc}") from None


@dataclass(frozen=True)
class VariantCheck:
    variant: Variant
    order: int
    max_degree: int
    local_bound: float
    degree_ok: bool
    local_bound_ok: bool
    structure_ok: bool
    ham_source: bool | None
    ham_reduced: bool | None
    equivalence_ok: bool | None
    lift_ok: bool | None
    project_ok: bool | None
    skipped: str | None = None

    @property
    def ok(self) -> bool:
        core = self.degree_ok and self.local_bound_ok and self.structure_ok
        return core and self.equivalence_ok is not False and self.lift_ok is not False and self.project_ok is not False


def check_variant(g: Graph, parts: Sequence[Sequence[int]] | None, variant: Variant) -> VariantCheck:
    inst = gadget_transform(g, parts, variant)
    out = inst.graph
    bound = local_k_bound(out)
    max_deg = out.max_degree
    degree_ok = max_deg == expected_max_degree(variant)
    if variant is Variant.G1:
        local_ok = bound <= 3
    else:
        local_ok = bound == 2
    structure_ok = neighbourhood_structure_ok(inst)
    if out.n > MAX_HAM_CHECK_ORDER:
        return VariantCheck(
            variant, out.n, max_deg, bound, degree_ok, local_ok, structure_ok,
            None, None, None, None, None,
            skipped=f"reduced order {out.n} exceeds the Hamiltonicity budget {MAX_HAM_CHECK_ORDER}",
        )
    src_cycle = hamiltonian_cycle(g)
    red_cycle = hamiltonian_cycle(out)
    lift_ok = project_ok = None
    if src_cycle is not None:
        lifted = lift_cycle(src_cycle, inst)
        lift_ok = lifted.length == out.n
    if red_cycle is not None:
        projected = project_cycle(red_cycle, inst)
        project_ok = projected.length == g.n
    ham_src, ham_red = src_cycle is not None, red_cycle is not None
    return VariantCheck(
        variant, out.n, max_deg, bound, degree_ok, local_ok, structure_ok,
        ham_src, ham_red, ham_src == ham_red, lift_ok, project_ok,
    )


def verify_reduction_instance(
    g: Graph, parts: Sequence[Sequence[int]] | None = None, variants: Sequence[Variant] = (Variant.G1, Variant.G2)
) -> dict[Variant, VariantCheck]:
    return {v: check_variant(g, parts, v) for v in variants}


def require_ham_budget(order: int) -> None:
    if order > MAX_HAM_CHECK_ORDER:
        raise UnsupportedSizeError(f"Hamiltonicity checks on reduced graphs support n <= {MAX_HAM_CHECK_ORDER}")
