"""Random biregular bipartite graphs: sampling, matchings, commutativity."""

from ._bireg import (
    BiregError,
    a_plus_bounds,
    commutative_d_bounds,
    enumerate_family,
    er_baseline_sweep,
    er_matching_prob,
    find_problematic_pair,
    has_perfect_matching,
    is_biregular,
    is_commutative,
    magnification,
    no_edge_exact,
    random_layered,
    read_brg1,
    run_cli,
    sample,
    sweep_matching,
    threshold_c,
    wilson_interval,
)

__all__ = [
    "BiregError",
    "a_plus_bounds",
    "commutative_d_bounds",
    "enumerate_family",
    "er_baseline_sweep",
    "er_matching_prob",
    "find_problematic_pair",
    "has_perfect_matching",
    "is_biregular",
    "is_commutative",
    "magnification",
    "no_edge_exact",
    "random_layered",
    "read_brg1",
    "run_cli",
    "sample",
    "sweep_matching",
    "threshold_c",
    "wilson_interval",
]
