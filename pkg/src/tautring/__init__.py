"""Exact computations in the tautological ring of M̄_g,n."""
from .graphs import (
    GraphError, ModuliType, StableGraph, automorphism_count, canonical_form,
    contract_edge, contract_edges, enumerate_stable_graphs, is_isomorphic,
    list_strata, moduli_allows, stabilize, trivial_graph,
)
from .intnum import kappa_psi_integral, psi_integral
from .decor import (
    AmbientMismatchError, DecoratedStratum, TautClass, decorated_class, fundclass,
    graph_to_class, irrbdiv, kappaclass, list_tautgens, psiclass, sepbdiv, tautgens,
)
from .calculus import (
    ProdTautClass, boundary_pullback, boundary_pushforward, evaluate,
    forgetful_pullback, forgetful_pushforward, multiply,
)
from .hodge import hodge_chern_character, lambdaclass
from .dr import DR_cycle, RPolyTautClass, enumerate_weightings
from .relations import (
    generating_indices, is_zero, load_cache, pairing_matrix, save_cache, set_threads,
    to_basis, tautvect_to_basis,
)
from .parser import ParseError, parse, parse_class, to_text
from .kernels import BACKEND

__version__ = "0.1.0"
