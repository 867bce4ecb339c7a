"""Finite set-representable orthomodular posets.

An event is a subset of ``range(n)`` stored as an ``int`` bitmask (bit ``i``
set iff point ``i`` belongs to the event). A :class:`Somp` keeps its events in
canonical order: by cardinality, ties broken lexicographically on the sorted
list of member indices. Every index-based structure in the package (state
vectors, morphism tables, quotient maps) refers to this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .errors import CapExceeded, InvalidBigsets, InvalidSomp, InvalidUniverse, LengthMismatch

Event = int

DEFAULT_CAP = 4096


def event(members: Iterable[int]) -> Event:
    e = 0
    for i in members:
        e |= 1 << i
    return e


def members(e: Event) -> list[int]:
    out = []
    i = 0
    while e:
        if e & 1:
            out.append(i)
        e >>= 1
        i += 1
    return out


def iter_bits(x: int):
    """Yield the positions of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def fmt_event(e: Event, base: int = 0) -> str:
    return "{" + ",".join(str(i + base) for i in members(e)) + "}"


def canonical_key(e: Event) -> tuple[int, list[int]]:
    return (e.bit_count(), members(e))


def _check_universe(n: int) -> None:
    if n < 1:
        raise InvalidUniverse(f"universe size must be >= 1, got {n}")


def _check_lengths(n: int, sets: Iterable[Event]) -> None:
    bad = [e for e in sets if e < 0 or e >> n]
    if bad:
        raise LengthMismatch(
            f"events exceed universe of size {n}: " + ", ".join(fmt_event(e) for e in bad)
        )


@dataclass(frozen=True)
class Violation:
    kind: str
    events: tuple[Event, ...] = ()

    def __str__(self) -> str:
        if not self.events:
            return self.kind
        return f"{self.kind}(" + ", ".join(fmt_event(e) for e in self.events) + ")"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...] = ()


@dataclass(frozen=True)
class Somp:
    """A validated family of events in canonical order.

    Build instances with :func:`validate`, :func:`closure` or the ``make_*``
    constructors rather than directly.
    """

    n: int
    events: tuple[Event, ...]

    def __len__(self):
        return len(self.events)

    def __contains__(self, e):
        return e in self.index

    @property
    def full(self) -> Event:
        return (1 << self.n) - 1

    @cached_property
    def index(self) -> dict[Event, int]:
        return {e: i for i, e in enumerate(self.events)}

    @cached_property
    def complement(self) -> tuple[int, ...]:
        full, idx = self.full, self.index
        return tuple(idx[full ^ e] for e in self.events)

    @cached_property
    def disjoint_pairs(self) -> tuple[tuple[int, int, int], ...]:
        """All ``(i, j, k)`` with ``i < j``, nonempty disjoint events and ``k`` their union."""
        ev, idx = self.events, self.index
        out = []
        for i in range(1, len(ev)):
            a = ev[i]
            for j in range(i + 1, len(ev)):
                b = ev[j]
                if not a & b:
                    out.append((i, j, idx[a | b]))
        return tuple(out)

    @cached_property
    def pair_reps(self) -> tuple[int, ...]:
        """First index of each complement pair, in canonical order."""
        comp = self.complement
        return tuple(i for i in range(len(self.events)) if i < comp[i])

    def __repr__(self):
        return f"Somp(n={self.n}, events={len(self.events)})"


def _canonical(n: int, events: Iterable[Event]) -> Somp:
    return Somp(n, tuple(sorted(set(events), key=canonical_key)))


def validate(n: int, sets: Iterable[Event]) -> tuple[ValidationReport, Optional[Somp]]:
    """Check the three axioms and collect every violation.

    Returns the report and, when it is clean, the canonical :class:`Somp`.
    Raises :class:`LengthMismatch` for events with members outside ``range(n)``.
    """
    _check_universe(n)
    sets = list(sets)
    _check_lengths(n, sets)
    full = (1 << n) - 1
    violations = []

    seen = set()
    for e in sets:
        if e in seen:
            violations.append(Violation("DuplicateEvent", (e,)))
        seen.add(e)
    ordered = sorted(seen, key=canonical_key)

    if full not in seen:
        violations.append(Violation("MissingFull"))
    for e in ordered:
        if full ^ e not in seen:
            violations.append(Violation("MissingComplement", (e,)))
    for i, a in enumerate(ordered):
        for b in ordered[i:]:
            if not a & b and a | b not in seen:
                violations.append(Violation("MissingDisjointUnion", (a, b)))

    if violations:
        return ValidationReport(False, tuple(violations)), None
    return ValidationReport(True), Somp(n, tuple(ordered))


def from_events(n: int, sets: Iterable[Event]) -> Somp:
    """Like :func:`validate` but raise :class:`InvalidSomp` on any violation."""
    report, s = validate(n, sets)
    if s is None:
        raise InvalidSomp(report)
    return s


def closure(n: int, generators: Iterable[Event], cap: int = DEFAULT_CAP) -> Somp:
    """Smallest family containing ``generators`` that satisfies the axioms."""
    _check_universe(n)
    if cap < 2:
        raise ValueError("cap must be >= 2")
    generators = list(generators)
    _check_lengths(n, generators)
    full = (1 << n) - 1

    family: set[Event] = set()
    members_list: list[Event] = []
    work = [full, 0, *generators]
    while work:
        e = work.pop()
        if e in family:
            continue
        family.add(e)
        members_list.append(e)
        if len(family) > cap:
            raise CapExceeded(f"closure exceeds cap of {cap} events")
        work.append(full ^ e)
        for f in members_list:
            if not e & f:
                work.append(e | f)
    return _canonical(n, family)


def is_point_distinguishing(s: Somp) -> tuple[bool, Optional[tuple[int, int]]]:
    """Return ``(True, None)`` or ``(False, (x, y))`` with the least unseparated pair."""
    seen: dict[int, int] = {}
    best = None
    for x, sig in enumerate(point_signatures(s)):
        if sig in seen:
            pair = (seen[sig], x)
            if best is None or pair < best:
                best = pair
        else:
            seen[sig] = x
    return best is None, best


def point_signatures(s: Somp) -> list[int]:
    """For each point, the bitset over event indices of events containing it.

    Two points are indistinguishable exactly when their signatures agree.
    """
    sigs = [0] * s.n
    for k, e in enumerate(s.events):
        for x in iter_bits(e):
            sigs[x] |= 1 << k
    return sigs


class _OrderTables:
    def __init__(self, s: Somp):
        ev = s.events
        m = len(ev)
        self.events = ev
        self.index = s.index
        up = [0] * m
        down = [0] * m
        for i, a in enumerate(ev):
            for j, b in enumerate(ev):
                if a & b == a:
                    up[i] |= 1 << j
                    down[j] |= 1 << i
        self.up, self.down = up, down
        self._join: dict[int, Optional[int]] = {}
        self._meet: dict[int, Optional[int]] = {}

    def join(self, i: int, j: int) -> Optional[int]:
        key = self.up[i] & self.up[j]
        if key not in self._join:
            acc = -1
            for k in iter_bits(key):
                acc &= self.events[k]
            self._join[key] = self.index.get(acc)
        return self._join[key]

    def meet(self, i: int, j: int) -> Optional[int]:
        key = self.down[i] & self.down[j]
        if key not in self._meet:
            acc = 0
            for k in iter_bits(key):
                acc |= self.events[k]
            self._meet[key] = self.index.get(acc)
        return self._meet[key]


def order_tables(s: Somp) -> _OrderTables:
    return _OrderTables(s)


def join(s: Somp, a: Event, b: Event) -> Optional[Event]:
    """Least upper bound of ``a`` and ``b`` inside the family, if it exists."""
    t = _OrderTables(s)
    k = t.join(s.index[a], s.index[b])
    return None if k is None else s.events[k]


def meet(s: Somp, a: Event, b: Event) -> Optional[Event]:
    t = _OrderTables(s)
    k = t.meet(s.index[a], s.index[b])
    return None if k is None else s.events[k]


def is_lattice(s: Somp) -> bool:
    # The least upper bound, when it exists, is the intersection of all upper
    # bounds; meets are checked too although complementation makes them dual.
    t = _OrderTables(s)
    m = len(s.events)
    for i in range(m):
        for j in range(i + 1, m):
            if t.join(i, j) is None or t.meet(i, j) is None:
                return False
    return True


def _closed_under(s: Somp, op) -> tuple[bool, Optional[tuple[Event, Event]]]:
    ev, idx = s.events, s.index
    for i, a in enumerate(ev):
        for b in ev[i + 1 :]:
            if op(a, b) not in idx:
                return False, (a, b)
    return True, None


def is_delta_closed(s: Somp) -> tuple[bool, Optional[tuple[Event, Event]]]:
    return _closed_under(s, lambda a, b: a ^ b)


def is_boolean(s: Somp) -> tuple[bool, Optional[tuple[Event, Event]]]:
    """Closure under intersection, i.e. the family is a field of sets."""
    return _closed_under(s, lambda a, b: a & b)


def make_powerset(n: int) -> Somp:
    _check_universe(n)
    return _canonical(n, range(1 << n))


def make_even(n: int) -> Somp:
    """All subsets of ``range(n)`` with even cardinality."""
    if n < 2 or n % 2:
        raise InvalidUniverse(f"make_even needs a positive even n, got {n}")
    return _canonical(n, (e for e in range(1 << n) if e.bit_count() % 2 == 0))


def make_bigsets(n: int, a: Event, b: Event) -> Somp:
    """The six-element family {0, A, A', B, B', P}."""
    _check_universe(n)
    _check_lengths(n, [a, b])
    full = (1 << n) - 1
    six = [0, a, full ^ a, b, full ^ b, full]
    if len(set(six)) != 6:
        raise InvalidBigsets("0, A, A', B, B', P must be pairwise distinct")
    report, s = validate(n, six)
    if s is None:
        raise InvalidBigsets("; ".join(str(v) for v in report.violations))
    return s


def make_product(l: Somp, k: Somp) -> Somp:
    """Disjoint-sum product: ``l`` on the first ``l.n`` points, ``k`` on the rest."""
    shift = l.n
    return _canonical(l.n + k.n, (a | (b << shift) for a in l.events for b in k.events))


def monotone_difference_holds(s: Somp) -> bool:
    """``B - A`` is an event whenever ``A <= B`` are events."""
    idx = s.index
    for a in s.events:
        for b in s.events:
            if a & b == a and (b & ~a) not in idx:
                return False
    return True
