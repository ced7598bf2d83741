"""Locally isometric graphs: local diameter checks, cycle extendability,
the shuttered highrise families, exhaustive theorem sweeps and the
vertex-to-triangle Hamiltonicity reductions."""

__version__ = "0.1.0"

from .graph import (
    INFINITE,
    Graph,
    GraphError,
    build_graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    degree_profile,
    empty_graph,
    induced_subgraph,
    join,
    path_graph,
    strong_product,
    twin_pairs,
)
from .iso import UnsupportedSizeError, are_isomorphic, canonical_certificate, canonical_form
from .graph6 import Graph6Error, decode, encode
from .cycles import (
    Cycle,
    CycleError,
    cycle_spectrum,
    extendability_report,
    hamiltonian_cycle,
    is_extendable,
    is_fully_cycle_extendable,
)
from .local import is_locally_bounded, is_locally_isometric, local_profile
from .families import (
    FamilyParams,
    doubly_shuttered,
    highrise,
    named,
    recognize_exception,
    shuttered_highrise,
    singly_shuttered,
)
from .enumeration import connected_graph_stream, cubic_bipartite_graphs
from .reduction import gadget_transform, lift_cycle, one_factorization, project_cycle, verify_reduction_instance
from .lemmas import LemmaViolation, degree2_deletion_check, lemma_suite
from .harness import CampaignReport, run_campaign
