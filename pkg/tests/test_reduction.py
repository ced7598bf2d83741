import io

import pytest

from oracles import brute_hamiltonian
from lociso.cycles import CycleError, hamiltonian_cycle
from lociso.enumeration import cubic_bipartite_graphs
from lociso.families import named
from lociso.graph import build_graph, complete_bipartite, cycle_graph, disjoint_union
from lociso.graph6 import decode, encode
from lociso.local import local_profile
from lociso.reduction import (
    MAX_HAM_CHECK_ORDER,
    ReductionError,
    Variant,
    check_variant,
    gadget_transform,
    lift_cycle,
    neighbourhood_structure_ok,
    one_factorization,
    project_cycle,
    verify_reduction_instance,
)


@pytest.mark.parametrize("name, size", [("k33", 3), ("cube_q3", 4), ("heawood", 7)])
def test_one_factorization(name, size):
    g = named(name)
    fac = one_factorization(g)
    assert len(fac.factors) == 3
    covered = set()
    for f in fac.factors:
        assert len(f) == size
        ends = [v for e in f for v in e]
        assert sorted(ends) == list(range(g.n))
        assert not covered & f
        covered |= f
    assert covered == set(g.edges())
    assert one_factorization(g) == fac


@pytest.mark.parametrize(
    "g",
    [cycle_graph(6), named("petersen"), build_graph(6, [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (0, 1)])],
)
def test_factorization_rejects_non_cubic_bipartite(g):
    with pytest.raises(ReductionError):
        one_factorization(g)


def test_factorization_rejects_bad_parts():
    g = complete_bipartite(3, 3)
    with pytest.raises(ReductionError):
        one_factorization(g, ([0, 1, 3], [2, 4, 5]))
    with pytest.raises(ReductionError):
        one_factorization(g, ([0, 1], [3, 4, 5]))


@pytest.mark.parametrize(
    "name, variant, n, m, delta",
    [
        ("cube_q3", "G1", 24, 64, 7),
        ("cube_q3", "G2", 24, 72, 8),
        ("k33", "G2", 18, 54, 8),
        ("k33", "G1", 18, 48, 7),
        ("heawood", "G1", 42, 112, 7),
        ("heawood", "G2", 42, 126, 8),
    ],
)
def test_gadget_sizes(name, variant, n, m, delta):
    inst = gadget_transform(named(name), None, variant)
    g = inst.graph
    assert (g.n, g.edge_count, g.max_degree) == (n, m, delta)
    k = local_profile(g).min_k
    assert k <= 3 if variant == "G1" else k == 2
    assert neighbourhood_structure_ok(inst)


def test_g1_wiring_literal():
    inst = gadget_transform(named("k33"), None, "G1")
    fac = inst.factorization
    left, right = inst.parts
    for i, u in enumerate(left):
        role = {fac.factor_of(u, w): right.index(w) + 1 for w in named("k33").neighbors(u)}
        j, k, l = role[0], role[1], role[2]
        u1, u2 = inst.vertex("U", i + 1, 1), inst.vertex("U", i + 1, 2)
        want1 = {inst.vertex("V", j, 1), inst.vertex("V", k, 1), inst.vertex("V", l, 1),
                 inst.vertex("V", j, 2), inst.vertex("V", l, 2)}
        want2 = {inst.vertex("V", j, 2), inst.vertex("V", k, 2), inst.vertex("V", l, 2),
                 inst.vertex("V", k, 1), inst.vertex("V", l, 1)}
        vside = {v for v in range(inst.graph.n) if inst.labels[v].side == "V"}
        assert set(inst.graph.neighbors(u1)) & vside == want1
        assert set(inst.graph.neighbors(u2)) & vside == want2


def test_labels_biject_and_layer_three_degree():
    inst = gadget_transform(named("cube_q3"), None, "G2")
    assert len(set(inst.labels)) == inst.graph.n
    for v, lab in enumerate(inst.labels):
        assert inst.vertex(lab.side, lab.index, lab.layer) == v
        if lab.layer == 3:
            assert inst.graph.degree(v) == 2
    lines = inst.label_map_lines()
    assert lines[0] == "U 1 1 0" and len(lines) == 24


@pytest.mark.parametrize("variant", ["G1", "G2"])
@pytest.mark.parametrize("name", ["cube_q3", "k33", "heawood"])
def test_lift_project_round_trip(name, variant):
    src = named(name)
    inst = gadget_transform(src, None, variant)
    c = hamiltonian_cycle(src)
    lifted = lift_cycle(c, inst)
    assert lifted.length == 3 * src.n
    back = project_cycle(lifted, inst)
    assert back == c
    found = hamiltonian_cycle(inst.graph)
    assert found is not None
    assert project_cycle(found, inst).length == src.n


def test_lift_rejects_non_hamiltonian_input():
    src = named("cube_q3")
    inst = gadget_transform(src, None, "G1")
    with pytest.raises(CycleError):
        lift_cycle([0, 1, 3, 2], inst)


def test_project_detects_broken_cycle():
    inst = gadget_transform(named("k33"), None, "G2")
    with pytest.raises(CycleError):
        project_cycle(list(range(18)), inst)


@pytest.mark.parametrize("name", ["cube_q3", "heawood", "k33"])
def test_verify_instance_all_true(name):
    out = verify_reduction_instance(named(name))
    for variant, c in out.items():
        assert c.degree_ok and c.local_bound_ok and c.structure_ok
        assert c.ham_source and c.ham_reduced and c.equivalence_ok
        assert c.ok


def test_non_hamiltonian_source():
    g = disjoint_union(complete_bipartite(3, 3), complete_bipartite(3, 3))
    for variant in Variant:
        c = check_variant(g, None, variant)
        assert c.ham_source is False and c.ham_reduced is False and c.equivalence_ok
        assert c.lift_ok is None and c.project_ok is None


def test_budget_skips_hamiltonicity():
    k33 = complete_bipartite(3, 3)
    g = disjoint_union(disjoint_union(k33, k33), k33)
    c = check_variant(g, None, Variant.G2)
    assert c.order > MAX_HAM_CHECK_ORDER
    assert c.ham_source is None and c.equivalence_ok is None and c.skipped
    assert c.degree_ok and c.local_bound_ok


@pytest.mark.parametrize("n", [6, 8, 10, 12, 14])
def test_every_small_cubic_bipartite_graph(n):
    for g in cubic_bipartite_graphs(n):
        src_ham = brute_hamiltonian(g, range(g.n)) if n <= 10 else hamiltonian_cycle(g) is not None
        for variant in Variant:
            c = check_variant(g, None, variant)
            assert c.order == 3 * n
            assert c.max_degree == (7 if variant is Variant.G1 else 8)
            assert c.local_bound <= 3 if variant is Variant.G1 else c.local_bound == 2
            assert c.ham_source == src_ham
            assert c.equivalence_ok and c.ok


def test_serialization_round_trip(tmp_path):
    inst = gadget_transform(named("k33"), None, "G1")
    line = encode(inst.graph)
    assert decode(line) == inst.graph
    sidecar = io.StringIO("\n".join(inst.label_map_lines()))
    rows = [ln.split() for ln in sidecar.getvalue().splitlines()]
    assert [int(r[3]) for r in rows] == list(range(18))
    assert all(r[0] in "UV" and 1 <= int(r[1]) <= 3 and 1 <= int(r[2]) <= 3 for r in rows)


def test_wiring_bug_surfaces_as_invariant_error():
    import dataclasses

    from lociso.graph import Graph
    from lociso.reduction import InvariantError

    inst = gadget_transform(named("cube_q3"), None, "G1")
    c = hamiltonian_cycle(named("cube_q3"))
    lifted = lift_cycle(c, inst)
    # drop one edge the lift relies on
    a, b = lifted.vertices[0], lifted.vertices[-1]
    rows = list(inst.graph.adj)
    rows[a] &= ~(1 << b)
    rows[b] &= ~(1 << a)
    broken = dataclasses.replace(inst, graph=Graph(inst.graph.n, tuple(rows)))
    with pytest.raises(InvariantError):
        lift_cycle(c, broken)
