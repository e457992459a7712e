"""Exact computation in finitely generated free groups via Stallings graphs."""

from ._backend import BACKEND
from .abelian import (
    IntMatrix,
    abelianize,
    canonical_surjection,
    hom_matrix,
    integer_rank,
    is_surjective_onto_Zn,
    quotient_exists,
    smith_divisors,
)
from .errors import AlphabetMismatch, CapExceeded, FreeGroupError, InvariantError, ParseError
from .graph import (
    INFINITE,
    LabeledGraph,
    bouquet,
    canonical_form,
    core_trim,
    euler_characteristic,
    fold,
    free_basis,
    index,
    is_complete,
    isomorphic_as_covers,
    membership,
    rank,
    rebase,
    spanning_tree,
)
from .subgroups import (
    PermTuple,
    Subgroup,
    conjugacy_classes,
    conjugate_subgroup,
    count_index,
    cyclic_cover,
    embed_in_F2,
    enumerate_index,
    graph_from_perms,
    infinite_index_example,
    is_normal,
    nielsen_schreier_rank,
    normal_subgroup_exists,
    subgroup_exists,
    subgroup_from_generators,
)
from .words import (
    Alphabet,
    Letter,
    Word,
    apply_hom,
    concat,
    cyclically_reduce,
    invert,
    parse_word,
    random_word,
    reduce,
)

__version__ = "0.1.0"
