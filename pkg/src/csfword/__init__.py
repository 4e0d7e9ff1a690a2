"""csfword: complete-square-free word representations of graphs.

Detect squares in subset restrictions of words, search exhaustively for
uniform word representations of small graphs, compute representation and
complete-square-free uniform representation numbers, and run the
constructive expansions that produce new representable graphs.
"""

from ._kernels import BACKEND, NUMBA_ENABLED
from .csf import (
    CsfResult,
    SquareVertexReport,
    apex_removal_check,
    csf_uniform_rep_number,
    csf_witnesses,
    is_p_csf_uniform_representation,
    k2_expand,
    p_square_vertex_report,
    twin_expand,
)
from .errors import BoundsExceededError, ParseError, ValidationError
from .graphs import (
    SimpleGraph,
    are_isomorphic,
    canonical_form,
    clique_number,
    complete,
    components,
    crown,
    cycle,
    disjoint_union,
    empty,
    from_edge_list,
    graph_classes,
    has_clique,
    induced_subgraph,
    is_connected,
    path,
    substitute_module,
    universal_vertices,
)
from .represent import (
    EnumerationResult,
    RepNumberResult,
    RepSearchResult,
    SearchBounds,
    border_free_representation,
    candidate_neighbors,
    enumerate_k_uniform_words,
    extend_by_initial_permutation,
    find_k_uniform_word,
    graph_of_word,
    permutational_representation,
    representation_number,
    represents,
    square_free_representation,
    tm3_join,
)
from .words import (
    EMPTY_WORD,
    Letter,
    SquareWitness,
    Word,
    alternates,
    csf_index,
    final_permutation,
    find_border,
    find_p_complete_square,
    find_p_complete_square_naive,
    find_square_factor,
    initial_permutation,
    is_p_complete_square_free,
    multiplicity_profile,
    occurrence_based_map,
    occurrence_permutation,
    restrict,
    rotate,
    uniformity,
)

__version__ = "0.1.0"
