"""boxlab: machine-verified box representations and poset realizers.

The package builds box representations of graphs (witnessing boxicity upper
bounds) and realizers of posets (witnessing dimension upper bounds), always
re-checking its own output, plus exact brute-force baselines for small
instances.
"""

from .core import (
    NEG_INF,
    POS_INF,
    Box,
    BoxRepresentation,
    ExtInt,
    Graph,
    Interval,
    Poset,
    Realizer,
    VerifyReport,
    bipartite_supergraph,
    comparability_graph,
    complete_graph,
    extend_full,
    intersection_graph,
    local_supergraph,
    product_compose,
    verify_box_rep,
    verify_fk_realizer,
    verify_realizer,
)
from .errors import (
    BoxlabError,
    ParameterError,
    ParseError,
    RandomizedFailureError,
    StructuralError,
    VerificationError,
)
from .exact import exact_boxicity, exact_dimension, is_interval_graph
from .suitable import (
    PermutationFamily,
    ScramblingFamily,
    build_scrambling,
    build_suitable,
    verify_scrambling,
    verify_suitable,
)
from .resampling import (
    ColouringFamily,
    Partition,
    family_colourings,
    partition_bounded_mono,
    verify_colouring_family,
    verify_partition,
)
from .builders import (
    SpanGadgetSpec,
    TreeDecomposition,
    bipartite_suitable_rep,
    caught_permutation_rep,
    degenerate_rep,
    min_degree_decomposition,
    pair_elimination_rep,
    span_gadget,
    treewidth_rep,
    validate_tree_decomposition,
    vertex_deletion_lift,
)
from .pipelines import (
    Certificate,
    Layering,
    bfs_layering,
    bound_formula,
    bounded_degree_rep,
    check_certificate,
    genus_rep,
    layered_tw_rep,
    validate_layering,
)
from .reductions import (
    DimensionResult,
    boxes_from_realizer,
    dimension_pipeline,
    extensions_from_fk,
    graph_to_doubled_poset,
    realizer_from_boxes,
)
from .generators import (
    bipartite_graph,
    comatching_graph,
    crown_poset,
    gnp_graph,
    grid_graph,
    height2_poset,
)
from .seeds import derive_seed, fresh_seed, rng_for

__version__ = "0.1.0"
