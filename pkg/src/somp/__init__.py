"""Finite set-representable orthomodular posets: quotients, two-valued states, Stone representations."""

from .core import (
    Event,
    Somp,
    ValidationReport,
    Violation,
    closure,
    event,
    from_events,
    is_boolean,
    is_delta_closed,
    is_lattice,
    is_point_distinguishing,
    make_bigsets,
    make_even,
    make_powerset,
    make_product,
    members,
    validate,
)
from .errors import SompError
from .morphism import MorphismTable, find_isomorphism, is_somp_isomorphism, is_somp_morphism
from .quotient import (
    Partition,
    QuotientResult,
    copy_on_transversal,
    indistinguishability_partition,
    induced_morphism,
    natural_pd_representation,
    partition_boolean,
)
from .states import (
    StateSet,
    dirac_state,
    enumerate_delta_states,
    enumerate_states,
    is_delta_state,
    is_dirac,
    is_separating,
    is_state,
)
from .stone import StoneResult, all_states_dirac, delta_stone, stone_representation

__version__ = "0.1.0"
