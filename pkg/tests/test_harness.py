import pytest

from lociso.cycles import extendability_report
from lociso.families import doubly_shuttered, named, singly_shuttered
from lociso.graph import cycle_graph
from lociso.harness import (
    THEOREMS,
    CampaignError,
    CampaignOptions,
    family_checks,
    run_campaign,
)
from lociso.iso import canonical_certificate
from lociso.local import is_locally_isometric


def _classes(rep):
    return sorted(e["class"] for e in rep.exceptions)


def _accounted(rep):
    return rep.filtered == rep.conforming + len(rep.exceptions) + len(rep.violations)


def test_delta4_small_sweep():
    rep = run_campaign("delta4", (5, 7))
    assert rep.violations == [] and _accounted(rep)
    assert _classes(rep) == ["K2JoinK3bar"]
    assert rep.exceptions[0]["key"] == canonical_certificate(named("k2_join_k3bar")).hex()


def test_thm3_1_sweep_classes():
    rep = run_campaign("thm3_1", (6, 8))
    assert rep.violations == [] and _accounted(rep)
    found = set(_classes(rep))
    assert {"SinglyShuttered(6)", "SinglyShuttered(7)", "SinglyShuttered(8)", "DoublyShuttered(8)"} <= found
    # K_2 + 4K_1 also satisfies every hypothesis at n = 6
    d6 = doubly_shuttered(6)
    assert d6.is_connected() and d6.max_degree == 5 and is_locally_isometric(d6)
    assert not extendability_report(d6).fully_cycle_extendable
    assert found - {"SinglyShuttered(6)", "SinglyShuttered(7)", "SinglyShuttered(8)", "DoublyShuttered(8)"} == {
        "DoublyShuttered(6)"
    }


def test_thm4_1_sweep():
    rep = run_campaign("thm4_1", (7, 8))
    assert rep.violations == [] and _accounted(rep)
    assert [(e["n"], e["class"]) for e in rep.exceptions] == [(7, "K24PlusK1")]


def test_filtered_out_accounting():
    rep = run_campaign("thm4_1", (7, 7))
    assert rep.scanned == rep.filtered + sum(rep.filtered_out.values())
    assert "true_twins" in rep.filtered_out


def test_corpus_input_and_range():
    corpus = [singly_shuttered(n) for n in range(6, 13)] + [doubly_shuttered(n) for n in (8, 10, 12)]
    rep = run_campaign("thm3_1", (9, 12), corpus=corpus)
    assert rep.scanned == 6 and rep.violations == []
    assert _classes(rep) == sorted(
        ["SinglyShuttered(9)", "SinglyShuttered(10)", "SinglyShuttered(11)", "SinglyShuttered(12)",
         "DoublyShuttered(10)", "DoublyShuttered(12)"]
    )


def test_violation_is_reported():
    # C_6 is not locally isometric, so it is filtered; feed a graph that breaks the delta4 claim instead
    corpus = [named("k24_plus_k1")]
    rep = run_campaign("thm3_1", (7, 7), corpus=corpus)
    assert rep.filtered == 0 and rep.filtered_out == {"max_degree": 1}
    rep = run_campaign("thm4_1", (7, 7), corpus=[singly_shuttered(7)])
    assert rep.filtered == 0


def test_weak_pancyclicity_campaigns():
    for theorem, rng in [("thm4_5", (1, 7)), ("cor3_2", (1, 7)), ("lem4_3", (7, 7))]:
        rep = run_campaign(theorem, rng)
        assert rep.violations == [] and rep.filtered > 0 and _accounted(rep)


def test_cor4_2_sweep():
    rep = run_campaign("cor4_2", (8, 8))
    assert rep.violations == [] and rep.filtered > 0


def test_lemma_options_attach_checks():
    rep = run_campaign("thm3_1", (6, 7), options=CampaignOptions(lemmas=True, degree2=True))
    assert rep.lemma_violations == [] and rep.lemma_checks["2.1.1"] > 0 and rep.lemma_checks["4.4"] > 0
    assert rep.nonextendable_cycles > 0


def test_sharded_equals_sequential():
    seq = run_campaign("thm3_1", (6, 7), options=CampaignOptions(lemmas=True))
    par = run_campaign("thm3_1", (6, 7), threads=3, options=CampaignOptions(lemmas=True))
    assert seq.as_dict(timing=False) == par.as_dict(timing=False)


def test_reports_deterministic():
    a = run_campaign("delta4", (5, 7)).as_dict(timing=False)
    b = run_campaign("delta4", (5, 7)).as_dict(timing=False)
    assert a == b


def test_errors():
    with pytest.raises(CampaignError):
        run_campaign("thm9_9", (6, 8))
    with pytest.raises(CampaignError):
        run_campaign("thm3_1", (6, 9))
    assert set(THEOREMS) == {"delta4", "thm3_1", "thm4_1", "cor4_2", "thm4_5", "cor3_2", "lem4_3"}


def test_family_checks():
    rows = family_checks(range(6, 13))
    assert all(r["ok"] and r["locally_isometric"] for r in rows)
    assert len(rows) == 7 + 4


def test_non_connected_corpus_graph_for_pancyclicity():
    from lociso.graph import complete_graph, disjoint_union

    g = disjoint_union(complete_graph(4), complete_graph(4))
    rep = run_campaign("thm4_5", (8, 8), corpus=[g, cycle_graph(8)])
    assert rep.filtered == 1 and rep.conforming == 1
