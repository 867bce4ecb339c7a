"""Stone-type representations on a separating set of two-valued states.

Each state becomes a point, and an event ``Q`` becomes the set of states that
are 1 at ``Q``. Point ``j`` of the representation is the ``j``-th state of the
(lexicographically ordered) state set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import Somp, _canonical, is_delta_closed, iter_bits
from .errors import NotDeltaClosed, NotSeparating, SompError
from .morphism import MorphismTable, is_somp_isomorphism
from .quotient import QuotientResult
from .states import (
    StateSet,
    enumerate_delta_states,
    enumerate_states,
    is_dirac,
    is_separating,
)


@dataclass(frozen=True)
class StoneResult:
    base: Somp
    states: StateSet
    rep: Somp
    map_e: tuple[int, ...]

    def as_morphism(self) -> MorphismTable:
        return MorphismTable(self.base, self.rep, self.map_e)


@dataclass(frozen=True)
class DeltaReport:
    delta_states: int
    rep_delta_closed: bool
    rep_delta_states: Optional[int]
    rep_delta_states_all_dirac: Optional[bool]


def stone_representation(s: Somp, ss: StateSet) -> StoneResult:
    """Refuses non-separating state sets with :class:`NotSeparating`."""
    if ss.somp != s:
        raise ValueError("state set belongs to a different family")
    ok, witness = is_separating(s, ss)
    if not ok:
        raise NotSeparating(witness)
    images = []
    for i in range(len(s.events)):
        img = 0
        for j, v in enumerate(ss.states):
            if v[i]:
                img |= 1 << j
        images.append(img)
    rep = _canonical(len(ss.states), images)
    result = StoneResult(s, ss, rep, tuple(rep.index[e] for e in images))
    if len(rep.events) != len(s.events) or not is_somp_isomorphism(result.as_morphism()):
        raise SompError("Stone map failed verification")
    return result


def all_states_dirac(s: Somp, limit: Optional[int] = None) -> tuple[bool, tuple[int, int]]:
    """Whether every two-valued state is Dirac, with counts ``(total, dirac)``."""
    states = enumerate_states(s, limit)
    dirac = sum(1 for v in states if is_dirac(s, v))
    return dirac == len(states), (len(states), dirac)


def delta_stone(s: Somp, limit: Optional[int] = None) -> tuple[StoneResult, DeltaReport]:
    """Stone representation on the delta-states, plus observed facts about it."""
    if not is_delta_closed(s)[0]:
        raise NotDeltaClosed("family is not closed under symmetric difference")
    ds = enumerate_delta_states(s, limit)
    ok, witness = is_separating(s, ds)
    if not ok:
        raise NotSeparating(witness, f"delta-states fail to separate {witness}; this is a bug")
    result = stone_representation(s, ds)
    rep_closed = is_delta_closed(result.rep)[0]
    n_delta = all_dirac = None
    if rep_closed:
        rep_ds = enumerate_delta_states(result.rep, limit)
        n_delta = len(rep_ds)
        all_dirac = all(is_dirac(result.rep, v) for v in rep_ds)
    return result, DeltaReport(len(ds), rep_closed, n_delta, all_dirac)


def dirac_stone_to_quotient(st: StoneResult, q: QuotientResult) -> MorphismTable:
    """Constructive isomorphism from a Dirac-state Stone representation to the quotient.

    Each Dirac state is the state of one indistinguishability block; sending
    stone point ``j`` to that block relabels the representation onto the quotient.
    """
    s = st.base
    block_of_state = {}
    for j, b in enumerate(q.partition.blocks):
        p = (b & -b).bit_length() - 1
        block_of_state[tuple(e >> p & 1 for e in s.events)] = j
    try:
        relabel = [block_of_state[v] for v in st.states.states]
    except KeyError:
        raise ValueError("Stone representation is not built on Dirac states") from None
    table = []
    for e in st.rep.events:
        img = 0
        for j in iter_bits(e):
            img |= 1 << relabel[j]
        table.append(q.quotient.index[img])
    return MorphismTable(st.rep, q.quotient, tuple(table))

