"""Morphism tables between event families, verification and isomorphism search.

A morphism is a table over canonical event indices: ``table[i]`` is the index in
the target of the image of source event ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import Somp, Violation
from .errors import BudgetExceeded, LengthMismatch

DEFAULT_BUDGET = 1_000_000


@dataclass(frozen=True)
class MorphismTable:
    source: Somp
    target: Somp
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != len(self.source.events):
            raise LengthMismatch(
                f"table has {len(self.table)} entries, source has {len(self.source.events)} events"
            )
        m = len(self.target.events)
        bad = [t for t in self.table if not 0 <= t < m]
        if bad:
            raise LengthMismatch(f"target indices out of range: {bad}")

    def image(self, a: int) -> int:
        """Image of a source event given as a bitmask."""
        return self.target.events[self.table[self.source.index[a]]]


def identity(s: Somp) -> MorphismTable:
    return MorphismTable(s, s, tuple(range(len(s.events))))


def from_event_map(source: Somp, target: Somp, fn) -> MorphismTable:
    """Tabulate ``fn`` (event bitmask -> event bitmask) over the source."""
    return MorphismTable(source, target, tuple(target.index[fn(a)] for a in source.events))


def is_injective(m: MorphismTable) -> bool:
    return len(set(m.table)) == len(m.table)


def is_surjective(m: MorphismTable) -> bool:
    return len(set(m.table)) == len(m.target.events)


def inverse(m: MorphismTable) -> MorphismTable:
    if not (is_injective(m) and is_surjective(m)):
        raise ValueError("only bijective tables have an inverse")
    inv = [0] * len(m.table)
    for i, t in enumerate(m.table):
        inv[t] = i
    return MorphismTable(m.target, m.source, tuple(inv))


def compose(first: MorphismTable, second: MorphismTable) -> MorphismTable:
    """``second`` after ``first``."""
    if first.target != second.source:
        raise ValueError("tables do not compose")
    return MorphismTable(first.source, second.target, tuple(second.table[t] for t in first.table))


def is_somp_morphism(m: MorphismTable) -> tuple[bool, list[Violation]]:
    """Check top, complement and disjoint-union preservation; list every failure."""
    src, dst, tab = m.source, m.target, m.table
    sev, dev = src.events, dst.events
    violations = []
    if dev[tab[src.index[src.full]]] != dst.full:
        violations.append(Violation("TopNotPreserved", (src.full,)))
    for i, c in enumerate(src.complement):
        if dev[tab[c]] != dst.full ^ dev[tab[i]]:
            violations.append(Violation("ComplementNotPreserved", (sev[i],)))
    for i, a in enumerate(sev):
        for j in range(i, len(sev)):
            b = sev[j]
            if a & b:
                continue
            if dev[tab[src.index[a | b]]] != dev[tab[i]] | dev[tab[j]]:
                violations.append(Violation("DisjointUnionNotPreserved", (a, b)))
    return not violations, violations


def is_somp_isomorphism(m: MorphismTable) -> bool:
    if not (is_injective(m) and is_surjective(m)):
        return False
    return is_somp_morphism(m)[0] and is_somp_morphism(inverse(m))[0]


def preserves_order(m: MorphismTable) -> bool:
    """``A <= B`` implies ``f(A) <= f(B)``, and ``f`` maps the empty event to itself."""
    sev, dev, tab = m.source.events, m.target.events, m.table
    if dev[tab[0]] != 0:
        return False
    for i, a in enumerate(sev):
        for j, b in enumerate(sev):
            if a & b == a and dev[tab[i]] & dev[tab[j]] != dev[tab[i]]:
                return False
    return True


def _height(s: Somp) -> int:
    ev = s.events
    h = [0] * len(ev)
    for i, a in enumerate(ev):
        h[i] = max((h[j] + 1 for j in range(i) if ev[j] & a == ev[j]), default=0)
    return h[-1]


def event_invariants(s: Somp) -> list[tuple[int, int, int]]:
    """Per-event ``(events below, events above, disjoint partners)``; kept by isomorphisms."""
    ev = s.events
    out = []
    for a in ev:
        below = sum(1 for b in ev if b & a == b)
        above = sum(1 for b in ev if b & a == a)
        partners = sum(1 for b in ev if not a & b)
        out.append((below, above, partners))
    return out


def order_invariants(s: Somp) -> tuple[int, int, int, int]:
    """``(events, height, atoms, complement pairs)``."""
    ev = s.events
    atoms = sum(1 for a in ev[1:] if not any(b and b != a and b & a == b for b in ev))
    return len(ev), _height(s), atoms, len(ev) // 2


class _IsoSearch:
    def __init__(self, l: Somp, k: Somp, inv_l, inv_k, budget: int):
        self.l, self.k = l, k
        self.inv_l, self.inv_k = inv_l, inv_k
        self.budget = budget
        self.nodes = 0
        m = len(l.events)
        self.f = [-1] * m
        self.used = [False] * m
        self.assigned: list[int] = []
        self.candidates: dict[tuple, list[int]] = {}
        for j, inv in enumerate(inv_k):
            self.candidates.setdefault(inv, []).append(j)
        lev = l.events
        self.partners = [
            [(p, l.index[a | b]) for p, b in enumerate(lev) if b and p != i and not a & b]
            for i, a in enumerate(lev)
        ]

    def _assign(self, i: int, j: int, queue: list[int]) -> bool:
        f = self.f
        if f[i] != -1:
            return f[i] == j
        if self.used[j] or self.inv_l[i] != self.inv_k[j]:
            return False
        a, b = self.l.events[i], self.k.events[j]
        kev, lev = self.k.events, self.l.events
        for p in self.assigned:
            c, d = lev[p], kev[f[p]]
            if (c & a == c) != (d & b == d) or (c & a == a) != (d & b == b):
                return False
        f[i] = j
        self.used[j] = True
        self.assigned.append(i)
        queue.append(i)
        return True

    def _propagate(self, queue: list[int]) -> bool:
        f, l, k = self.f, self.l, self.k
        while queue:
            i = queue.pop()
            if not self._assign(l.complement[i], k.complement[f[i]], queue):
                return False
            for p, u in self.partners[i]:
                if f[p] == -1:
                    continue
                image = k.events[f[i]] | k.events[f[p]]
                target = k.index.get(image)
                if target is None or not self._assign(u, target, queue):
                    return False
        return True

    def _undo(self, mark: int) -> None:
        while len(self.assigned) > mark:
            i = self.assigned.pop()
            self.used[self.f[i]] = False
            self.f[i] = -1

    def _try(self, i: int, j: int) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"isomorphism search exceeded {self.budget} nodes")
        queue: list[int] = []
        return self._assign(i, j, queue) and self._propagate(queue)

    def run(self) -> Optional[tuple[int, ...]]:
        last = len(self.l.events) - 1
        if not (self._try(0, 0) and self._try(last, last)):
            return None
        return self._search()

    def _search(self) -> Optional[tuple[int, ...]]:
        f = self.f
        try:
            i = f.index(-1)
        except ValueError:
            table = tuple(f)
            if is_somp_isomorphism(MorphismTable(self.l, self.k, table)):
                return table
            return None
        for j in self.candidates.get(self.inv_l[i], ()):
            if self.used[j]:
                continue
            mark = len(self.assigned)
            if self._try(i, j):
                found = self._search()
                if found is not None:
                    return found
            self._undo(mark)
        return None


def find_isomorphism(l: Somp, k: Somp, budget: int = DEFAULT_BUDGET) -> Optional[MorphismTable]:
    """Search for a SOMP-isomorphism ``l -> k``.

    Returns ``None`` when none exists and raises :class:`BudgetExceeded` when the
    search gives up after ``budget`` tentative assignments.
    """
    if len(l.events) != len(k.events):
        return None
    if order_invariants(l) != order_invariants(k):
        return None
    inv_l, inv_k = event_invariants(l), event_invariants(k)
    if sorted(inv_l) != sorted(inv_k):
        return None
    table = _IsoSearch(l, k, inv_l, inv_k, budget).run()
    return None if table is None else MorphismTable(l, k, table)


def make_even_embedding(small: Somp, big: Somp) -> MorphismTable:
    """Embed even(n) into even(n + 2k) by padding events that contain point ``n - 1``.

    ``A`` maps to itself when the last point of the small universe is absent and
    to ``A`` plus every new point otherwise.
    """
    last = 1 << (small.n - 1)
    pad = big.full ^ small.full
    return from_event_map(small, big, lambda a: a | pad if a & last else a)
