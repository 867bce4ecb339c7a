"""Indistinguishability classes and the natural point-distinguishing representation.

Points ``x`` and ``y`` are indistinguishable when no event contains ``x`` but
not ``y``. The classes partition the universe and every event is a union of
them, so collapsing each class to a single point gives an isomorphic family
that separates points.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Event, Somp, _canonical, iter_bits, point_signatures
from .errors import InvalidPartition, NotAMorphism
from .morphism import MorphismTable, is_somp_morphism


@dataclass(frozen=True)
class Partition:
    n: int
    blocks: tuple[Event, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        seen = 0
        for b in self.blocks:
            if not b or b & seen or b >> self.n:
                raise InvalidPartition("blocks must be nonempty, disjoint and inside the universe")
            seen |= b
        if seen != (1 << self.n) - 1:
            raise InvalidPartition("blocks do not cover the universe")
        if list(self.blocks) != sorted(self.blocks, key=lambda b: b & -b):
            raise InvalidPartition("blocks must be ordered by least member")

    @classmethod
    def from_blocks(cls, n: int, blocks) -> "Partition":
        return cls(n, tuple(sorted(blocks, key=lambda b: b & -b)))

    def block_of(self, x: int) -> int:
        for j, b in enumerate(self.blocks):
            if b >> x & 1:
                return j
        raise IndexError(x)

    def compress(self, a: Event) -> Event:
        """Quotient image of ``a``: bit ``j`` set iff block ``j`` lies inside ``a``."""
        out = 0
        for j, b in enumerate(self.blocks):
            if b & a == b:
                out |= 1 << j
        return out


@dataclass(frozen=True)
class QuotientResult:
    source: Somp
    partition: Partition
    quotient: Somp
    map_f: tuple[int, ...]

    def as_morphism(self) -> MorphismTable:
        return MorphismTable(self.source, self.quotient, self.map_f)


@dataclass(frozen=True)
class TransversalCopy:
    """The quotient family placed on one chosen point per block.

    Bit ``j`` of an event in ``somp`` stands for original point ``points[j]``.
    """

    source: Somp
    points: tuple[int, ...]
    somp: Somp

    def original_events(self) -> list[Event]:
        """Events re-expressed as subsets of the source universe."""
        out = []
        for e in self.somp.events:
            out.append(sum(1 << self.points[j] for j in iter_bits(e)))
        return out


def indistinguishability_partition(s: Somp) -> Partition:
    classes: dict[int, int] = {}
    for x, sig in enumerate(point_signatures(s)):
        classes[sig] = classes.get(sig, 0) | (1 << x)
    return Partition.from_blocks(s.n, classes.values())


def block_property_holds(s: Somp, p: Partition) -> bool:
    """Every block lies inside each event or inside its complement."""
    for a in s.events:
        for b in p.blocks:
            if b & a and b & ~a:
                return False
    return True


def natural_pd_representation(s: Somp) -> QuotientResult:
    p = indistinguishability_partition(s)
    images = [p.compress(a) for a in s.events]
    q = _canonical(len(p.blocks), images)
    return QuotientResult(s, p, q, tuple(q.index[e] for e in images))


def copy_on_transversal(q: QuotientResult) -> TransversalCopy:
    # least member of each block; blocks are already in least-member order
    points = tuple((b & -b).bit_length() - 1 for b in q.partition.blocks)
    return TransversalCopy(q.source, points, q.quotient)


def partition_boolean(p: Partition) -> Somp:
    """All unions of blocks."""
    k = len(p.blocks)
    events = []
    for mask in range(1 << k):
        events.append(sum(p.blocks[j] for j in iter_bits(mask)))
    return _canonical(p.n, events)


def induced_morphism(g: MorphismTable, ql: QuotientResult, qk: QuotientResult) -> MorphismTable:
    """The morphism between quotients making the square with ``g`` commute."""
    if ql.source != g.source or qk.source != g.target:
        raise ValueError("quotients do not match the morphism's source and target")
    ok, violations = is_somp_morphism(g)
    if not ok:
        raise NotAMorphism("; ".join(str(v) for v in violations[:5]))
    back = [0] * len(ql.map_f)
    for i, t in enumerate(ql.map_f):
        back[t] = i
    table = tuple(qk.map_f[g.table[back[t]]] for t in range(len(back)))
    return MorphismTable(ql.quotient, qk.quotient, table)


def square_commutes(g: MorphismTable, g_tilde: MorphismTable, ql: QuotientResult, qk: QuotientResult) -> bool:
    """``f_K . g == g_tilde . f_L`` on every source event."""
    return all(
        qk.map_f[g.table[i]] == g_tilde.table[ql.map_f[i]] for i in range(len(g.table))
    )
