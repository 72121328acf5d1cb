"""Completeness reasoning for RDF graphs.

Store an RDF graph together with completeness statements, evaluate
conjunctive queries, and decide whether their answers are complete over
every world state the statements allow.
"""

from .engine import (
    EntailmentConfig,
    EntailmentVerdict,
    FailureWitness,
    PartiallyMappedBGP,
    crucial_part,
    entails,
    entails_query,
    epg,
    equivalent_under,
    is_saturated,
    saturate,
)
from .errors import (
    BudgetExceededError,
    FragmentViolationError,
    FreezeCollisionError,
    GenerationError,
    ParseError,
    RdfCompleteError,
    RemoteFetchError,
    ResourceBoundError,
    StatementNotFoundError,
)
from .graph import Graph, eval_bgp, freeze, unfreeze
from .oracle import OracleBound, SizeProfile, brute_force_entails, random_instance
from .parser import (
    parse_graph,
    parse_query,
    parse_statements,
    serialize_graph,
    serialize_query,
    serialize_statements,
)
from .spindex import SPIndex, SPStatement, build_index, classify, crucial_part_sp
from .statements import (
    CompletenessStatement,
    ExtensionPair,
    Provenance,
    StatementSet,
    construct_query,
    is_query_complete_over,
    is_valid_extension,
    transfer,
)
from .store import Store, StoreState
from .terms import (
    BGP,
    EMPTY_MAPPING,
    FreezeMapping,
    Iri,
    Literal,
    Mapping,
    Query,
    Term,
    Triple,
    TriplePattern,
    Var,
    apply_mapping,
    bgp,
    bgp_variables,
)

__version__ = "0.1.0"
