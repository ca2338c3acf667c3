"""Finite-scale tree machinery for Ramsey theory on the rationals, the Rado graph and Henson graphs."""

from .cliques import PreClique, WitnessReport, check_witnessing, find_precliques
from .coding import (
    CodingTree,
    FBCReport,
    FiniteGraph,
    build_Sk,
    build_TR,
    build_Tk,
    check_kfbc,
    decode_graph,
    forbidden_one_extension,
    graph_to_antichains,
)
from .errors import (
    BudgetExceeded,
    EqualInput,
    LengthError,
    LevelMismatch,
    PreconditionError,
    RCTError,
    UnknownUniverse,
)
from .ramseylab import (
    color_experiment,
    finite_ramsey_check,
    sierpinski_color,
    verify_sierpinski_persistence,
)
from .seqtree import (
    LevelTree,
    Ordering,
    StrongSubtree,
    enumerate_strong_subtrees,
    full_binary_tree,
    hl_search,
    is_strong_subtree,
    lex_cmp,
    meet,
    meet_closure,
    milliken_search,
    passing_number,
)
from .similarity import (
    SimilarityType,
    canonical_type,
    devlin_pair_types,
    enumerate_types,
    strong_similarity_map,
    triangle_order_cmp,
)

__version__ = "0.1.0"
