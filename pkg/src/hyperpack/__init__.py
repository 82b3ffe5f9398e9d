"""Packing of k-uniform hypergraphs: sufficient conditions, a switching solver,
designs, and extremal non-packing constructions."""
from .conditions import (
    ConditionId,
    ConditionReport,
    check_all,
    check_beta,
    check_beta_any,
    check_naroski,
    check_rrt,
    check_ss_degree,
    check_ss_product,
    check_ss_size,
    lower_bound_m,
    m_graph,
    packing_threshold,
)
from .designs import (
    BudgetExceeded,
    Design,
    DesignNotFound,
    DesignSpec,
    construct_design,
    construct_sts,
    divisibility_check,
    verify_design,
)
from .extremal import (
    ExtremalPair,
    PairKind,
    build_even_pair,
    build_even_pair_padded,
    build_odd_pair,
    verify_nonpacking,
)
from .hypergraph import Bijection, Hypergraph, HypergraphError, conflicts
from .io import FormatError, parse_hypergraph, read_hypergraph, write_hypergraph
from .solver import (
    Outcome,
    PackResult,
    brute_force_pack,
    switching_pack,
    switching_pack_auto,
    validate_packing,
)

__version__ = "0.1.0"
