"""Exact solvers for max-weight c-colorable subgraph and (colorful)
independent set on chordal and cluster+chordal graphs, graph-class
recognition with witnesses, and hardness-gadget instance generators."""

from .graph import (
    CliqueCountExceeded,
    Graph,
    MulticoloredCliqueInstance,
    SizeCapError,
    Solution,
    ValidationError,
    WeightedInstance,
    independence_bounded,
    induced_subgraph,
    is_c_colorable,
    is_independent,
    maximal_cliques_containing,
    neighborhood,
)
from .recognition import (
    ClusterChordalDecomposition,
    brute_force_cluster_chordal,
    find_inductive_k_independent_ordering,
    hamiltonicity_via_decomposition,
    is_chordal,
    is_cluster,
    is_k1k_free,
    is_k_mino,
    maximum_cardinality_search,
    two_simplicial_ordering,
    verify_inductive_k_independent,
    verify_peo,
)
from .treedecomp import (
    TreeDecomposition,
    bag_alpha,
    clique_tree_from_peo,
    normalize_binary,
    verify_tree_decomposition,
)
from .dp import max_weight_colorful_is, max_weight_is_chordal
from .colorcoding import (
    ColoringFamilySpec,
    Mode,
    enumerate_size_partitions,
    mwccs_cluster_chordal,
    mwccs_from_mwis,
    mwis_cluster_chordal,
)
from .gadgets import (
    GadgetIndex,
    clique_cover_certificate,
    construct_mis_instance,
    gen_indkind_hardness,
    gen_k1kfree_hardness,
    verify_construction,
)
from .fileformat import (
    ParseError,
    parse_instance,
    write_instance,
    write_solution,
)

__version__ = "0.1.0"
