"""rellat: a finite-lattice laboratory for relational lattices.

Build the lattice of relations over a small schema three independent ways
(tables, an ultrametric semidirect product, a closure system), extract and
reconstruct join-irreducible duality data, check lattice inclusions by
exhaustive or sampled valuation sweeps, test the matching cover-combinatorial
properties, and connect the frame side (n commuting equivalences) to lattice
embeddings at desk scale.
"""
from .errors import (
    BadFrame,
    BadODGraph,
    BudgetExceeded,
    Caps,
    CoverEnumerationCapExceeded,
    DEFAULT_CAPS,
    EnumerationCapExceeded,
    NotALattice,
    NotAPartialOrder,
    NotAnUltraSpace,
    NotDistributivelyEqual,
    NotIntersectionClosed,
    NotSurjective,
    ParseError,
    PartitionEnumerationCapExceeded,
    RellatError,
    SchemaMismatch,
    SearchBudgetExceeded,
    SizeCapExceeded,
    UnboundVariable,
    UnknownEquation,
    UnknownProperty,
)
from .lattice import (
    ClosedFamily,
    FiniteLattice,
    build_from_closed_family,
    build_from_leq,
    find_embedding,
    find_isomorphism,
    lattice_from_json,
    lattice_to_json,
    make_closed_family,
    set_label,
    structure_query,
    sublattice_closure,
)
from .terms import (
    Inclusion,
    Join,
    Meet,
    Term,
    Var,
    distributive_equal,
    dnf,
    mk_join,
    mk_meet,
    parse,
    parse_term,
    pretty,
    pretty_inclusion,
    substitute,
    variables,
)
from .equations import (
    CATALOG,
    CheckResult,
    catalog_inclusion,
    check_inclusion,
    eval_term,
    gen_unjp_family,
    lcd,
    ld,
    rcd,
    rd,
    verify_witness,
)
from .relational import (
    BCWitness,
    PCWitness,
    RLattice,
    Schema,
    SdLattice,
    Table,
    TypedMap,
    UltraSpace,
    act,
    bc_identity_check,
    build_R,
    closure_of,
    closure_system_R,
    cylindrify,
    hamming_space,
    inner_union,
    is_pairwise_complete,
    make_space,
    make_table,
    natural_join,
    r_size,
    rel_to_semidirect_map,
    restrict,
    sections_space,
    semidirect,
    semidirect_core,
    space_from_json,
    space_to_json,
    subspace,
    table_from_json,
    table_label,
    table_leq,
    table_to_json,
    typed_R,
    typed_map_from_fibers,
)
from .odgraph import (
    CoverWitness,
    IllDefined,
    NotAtomistic,
    ODGraph,
    PROPERTY_IDS,
    build_countermodel,
    check_property,
    closed_mask,
    dstep,
    extract_od_graph,
    make_od_graph,
    minimal_join_covers,
    od_graph_from_json,
    od_graph_to_json,
    reconstruct,
    refines,
    ultrametric_representability,
)
from .frames import (
    Frame,
    S5Witness,
    all_partitions,
    enumerate_frames,
    frame_from_edges,
    frame_from_json,
    frame_to_json,
    frame_queries,
    is_s5n_frame,
    l_of_frame,
    make_frame,
    p_morphism_search,
    universal_product,
)
from .lattgen import all_lattices_upto, lattices_of_order, random_lattice

__version__ = "0.1.0"
