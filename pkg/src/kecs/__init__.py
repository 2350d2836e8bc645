"""Exact solvers for maximum k-edge-colorable subgraphs.

Polynomial solvers for bipartite graphs (:mod:`kecs.flow`) and forests
(:mod:`kecs.forest`), exhaustive reference solvers (:mod:`kecs.oracle`),
gadget reductions from 2-SAT (:mod:`kecs.reduction`) and verifiers for the
identities those reductions rely on (:mod:`kecs.verify`).
"""

from __future__ import annotations

from .errors import (
    BudgetError,
    CertificateError,
    ConstructionError,
    FormatError,
    InputError,
    KecsError,
    ParameterError,
    PreconditionError,
)
from .flow import (
    build_network,
    konig_edge_color,
    max_flow_integral,
    solve_nuk_bipartite,
    solve_weighted_degree_constrained,
)
from .forest import is_forest, solve_forest
from .graph import (
    Bipartition,
    Graph,
    KEdgeColoring,
    bipartition,
    degree_profile,
    delete_edges,
    validate_coloring,
)
from .oracle import (
    MatchingSpectrum,
    SearchBudget,
    brute_nuk,
    cubic_three_colorability,
    enumerate_maximum_matchings,
    matching_spectrum,
    max_matching,
)
from .reduction import (
    DeletionSet,
    ReductionInstance,
    annotate_color_constraints,
    assignment_to_deletion_set,
    build_max2sat_instance,
    build_min2sat_instance,
    deletion_set_to_assignment,
    lemma2_lower_bound_witness,
)
from .sat import TwoCnf, count_satisfied, parse_dimacs_2cnf, sat_extrema
from .verify import Report, verify_lemma2, verify_theorem1, verify_theorem3

__version__ = "0.1.0"
