"""Exact satisfaction, power indices and expansion counts for influence-game decision models."""

from .errors import (
    CapExceededError,
    EngineInapplicableError,
    InfluenceError,
    InputError,
    ModelValidityError,
    NotHierarchicalError,
    NotStarError,
    NotTwoLayeredError,
)
from .graph import (
    ActorPartition,
    InfluenceGraph,
    classify_actors,
    directly_dependent_followers,
    is_two_layered,
    predecessors,
    spread_of_influence,
    spread_rounds,
)
from .hierarchical import (
    decompose,
    expansion_count,
    expansion_table,
    reduce_graph_R,
    reduce_graph_R2,
    sat_nonoblivious_hierarchical,
    sat_oblivious_hierarchical,
)
from .kernels import BACKEND
from .models import (
    GolfModel,
    InfluenceGame,
    NonObliviousModel,
    ObliviousModel,
    collective_decision,
    golf_to_influence_game,
    is_odd_olf,
    nonoblivious_decision,
    oblivious_decision,
)
from .oracle import (
    banzhaf_value,
    expansion_bruteforce,
    rae_index,
    satisfaction_bruteforce,
    winning_losing_counts,
)
from .reductions import VCInstance, count_vertex_covers, expansion_to_satisfaction, vc_gadget
from .star import (
    ExtendedStarGame,
    StarGame,
    extended_star_expansion_count,
    normalize_star,
    recognize_star,
    sat_nonoblivious_star,
    sat_oblivious_star,
    star_expansion_count,
    star_winning_losing,
)

__version__ = "0.1.0"
