"""Two-valued states: verification, exhaustive enumeration, Dirac and delta states.

A state is a tuple of 0/1 values aligned with the canonical event order of its
family.

Enumeration works on one boolean variable per complement pair (the value of
the pair's first event; the partner gets the negation). Every disjoint pair
``A, B`` with union ``C`` contributes the constraint ``v(C) = v(A) + v(B)``,
which is propagated to a fixpoint after each decision. Branching picks the
unassigned variable occurring in the most constraints and tries 1 before 0.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import Event, Somp, is_delta_closed, iter_bits
from .errors import LengthMismatch, LimitExceeded, NotAState, NotDeltaClosed, PointOutOfRange

State = tuple[int, ...]

DEFAULT_LIMIT = 1_000_000


def default_limit() -> int:
    return int(os.environ.get("SOMP_STATE_LIMIT", DEFAULT_LIMIT))


@dataclass(frozen=True)
class StateSet:
    somp: Somp
    states: tuple[State, ...]

    def __post_init__(self):
        ordered = tuple(sorted(set(map(tuple, self.states))))
        m = len(self.somp.events)
        if any(len(v) != m for v in ordered):
            raise LengthMismatch(f"state vectors must have length {m}")
        object.__setattr__(self, "states", ordered)

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)


def is_state(s: Somp, v: Sequence[int]) -> tuple[bool, Optional[tuple[Event, Event]]]:
    """Check ``v(P) = 1`` and additivity on disjoint pairs.

    On failure the first offending pair in canonical order is returned; a
    failure at the top event is reported as the pair ``(P, P)``.
    """
    if len(v) != len(s.events):
        raise LengthMismatch(f"vector has length {len(v)}, family has {len(s.events)} events")
    ev, idx = s.events, s.index
    if v[-1] != 1:
        return False, (ev[-1], ev[-1])
    for i, a in enumerate(ev):
        for j in range(i, len(ev)):
            b = ev[j]
            if not a & b and v[idx[a | b]] != v[i] + v[j]:
                return False, (a, b)
    return True, None


def dirac_state(s: Somp, p: int) -> State:
    if not 0 <= p < s.n:
        raise PointOutOfRange(f"point {p} outside universe of size {s.n}")
    return tuple(e >> p & 1 for e in s.events)


def dirac_states(s: Somp) -> StateSet:
    return StateSet(s, tuple(dirac_state(s, p) for p in range(s.n)))


def is_dirac(s: Somp, st: Sequence[int]) -> Event:
    """Bitmask of the points whose Dirac state equals ``st`` (0 when not Dirac)."""
    ok, bad = is_state(s, st)
    if not ok:
        raise NotAState(f"additivity fails at {bad}")
    st = tuple(st)
    witness = 0
    for p in range(s.n):
        if dirac_state(s, p) == st:
            witness |= 1 << p
    return witness


def is_delta_state(s: Somp, st: Sequence[int]) -> tuple[bool, Optional[tuple[Event, Event]]]:
    """Check ``v(A ^ B) <= v(A) + v(B)`` over all pairs of a delta-closed family."""
    if not is_delta_closed(s)[0]:
        raise NotDeltaClosed("family is not closed under symmetric difference")
    ok, bad = is_state(s, st)
    if not ok:
        raise NotAState(f"additivity fails at {bad}")
    ev, idx = s.events, s.index
    for i, a in enumerate(ev):
        for j in range(i + 1, len(ev)):
            b = ev[j]
            if st[idx[a ^ b]] > st[i] + st[j]:
                return False, (a, b)
    return True, None


class _Solver:
    """Unit propagation plus chronological backtracking over complement pairs."""

    def __init__(self, s: Somp):
        self.s = s
        m = len(s.events)
        comp = s.complement
        reps = s.pair_reps
        var_of = [0] * m
        neg = [0] * m
        for v, i in enumerate(reps):
            var_of[i], neg[i] = v, 0
            var_of[comp[i]], neg[comp[i]] = v, 1
        self.var_of, self.neg = var_of, neg
        self.nvars = len(reps)
        self.constraints = [(a, b, c) for a, b, c in s.disjoint_pairs if c != m - 1]
        watch: list[list[int]] = [[] for _ in range(self.nvars)]
        for k, (a, b, c) in enumerate(self.constraints):
            for e in {var_of[a], var_of[b], var_of[c]}:
                watch[e].append(k)
        self.watch = watch
        degree = [len(w) for w in watch]
        self.order = sorted(range(self.nvars), key=lambda v: (-degree[v], v))

    def initial(self) -> list[int]:
        vals = [-1] * self.nvars
        # empty event is the first pair representative; its value is 0
        vals[self.var_of[0]] = self.neg[0]
        return vals

    def _val(self, vals, e):
        x = vals[self.var_of[e]]
        return x if x < 0 else x ^ self.neg[e]

    def _set(self, vals, e, bit, trail, queue) -> bool:
        v = self.var_of[e]
        want = bit ^ self.neg[e]
        cur = vals[v]
        if cur >= 0:
            return cur == want
        vals[v] = want
        trail.append(v)
        queue.append(v)
        return True

    def propagate(self, vals, queue, trail) -> bool:
        val, put = self._val, self._set
        cons = self.constraints
        while queue:
            v = queue.pop()
            for k in self.watch[v]:
                a, b, c = cons[k]
                va, vb, vc = val(vals, a), val(vals, b), val(vals, c)
                if va == 1 or vb == 1:
                    if va == 1 and vb == 1:
                        return False
                    if not put(vals, b if va == 1 else a, 0, trail, queue):
                        return False
                    if not put(vals, c, 1, trail, queue):
                        return False
                elif vc == 0:
                    if not (put(vals, a, 0, trail, queue) and put(vals, b, 0, trail, queue)):
                        return False
                elif va == 0 and vb == 0:
                    if not put(vals, c, 0, trail, queue):
                        return False
                elif vc == 1:
                    if va == 0 and not put(vals, b, 1, trail, queue):
                        return False
                    if vb == 0 and not put(vals, a, 1, trail, queue):
                        return False
        return True

    def expand(self, vals) -> State:
        return tuple(self._val(vals, e) for e in range(len(self.s.events)))

    def search(self, vals, limit: int, out: list[State]) -> None:
        start = self.initial() if vals is None else vals
        vals = list(start)
        if not self.propagate(vals, [v for v in range(self.nvars) if vals[v] >= 0], []):
            return
        self._dfs(vals, 0, limit, out)

    def _dfs(self, vals, pos, limit, out) -> None:
        order = self.order
        while pos < len(order) and vals[order[pos]] >= 0:
            pos += 1
        if pos == len(order):
            out.append(self.expand(vals))
            if len(out) > limit:
                raise LimitExceeded(f"more than {limit} two-valued states")
            return
        v = order[pos]
        for bit in (1, 0):
            trail: list[int] = []
            vals[v] = bit
            trail.append(v)
            if self.propagate(vals, [v], trail):
                self._dfs(vals, pos + 1, limit, out)
            for u in trail:
                vals[u] = -1

    def prefixes(self, depth: int) -> list[list[int]]:
        """Partial assignments after fixing the first ``depth`` branching variables."""
        vals = self.initial()
        if not self.propagate(vals, [u for u in range(self.nvars) if vals[u] >= 0], []):
            return []
        frontier = [vals]
        for _ in range(depth):
            nxt = []
            for vals in frontier:
                free = [u for u in self.order if vals[u] < 0]
                if not free:
                    nxt.append(vals)
                    continue
                for bit in (1, 0):
                    child = list(vals)
                    child[free[0]] = bit
                    if self.propagate(child, [free[0]], []):
                        nxt.append(child)
            frontier = nxt
        return frontier


def _solve_subtree(args):
    s, vals, limit = args
    out: list[State] = []
    _Solver(s).search(vals, limit, out)
    return out


def enumerate_states(s: Somp, limit: Optional[int] = None, workers: int = 1) -> StateSet:
    """All two-valued states, in lexicographic order of their value vectors.

    With ``workers > 1`` disjoint subtrees are solved in separate processes;
    the result does not depend on the worker count.
    """
    limit = default_limit() if limit is None else limit
    solver = _Solver(s)
    if workers <= 1:
        out: list[State] = []
        solver.search(None, limit, out)
    else:
        depth = max(1, (workers - 1).bit_length() + 1)
        jobs = [(s, vals, limit) for vals in solver.prefixes(depth)]
        out = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_solve_subtree, jobs):
                out.extend(part)
                if len(out) > limit:
                    raise LimitExceeded(f"more than {limit} two-valued states")
    return StateSet(s, tuple(out))


def enumerate_delta_states(s: Somp, limit: Optional[int] = None) -> StateSet:
    if not is_delta_closed(s)[0]:
        raise NotDeltaClosed("family is not closed under symmetric difference")
    all_states = enumerate_states(s, limit)
    return StateSet(s, tuple(v for v in all_states if is_delta_state(s, v)[0]))


def is_separating(s: Somp, ss: StateSet) -> tuple[bool, Optional[tuple[Event, Event]]]:
    """Whenever ``A`` is not inside ``B`` some state is 1 at ``A`` and 0 at ``B``."""
    ev = s.events
    m = len(ev)
    # ones[i]: bitset over states that are 1 at event i
    ones = [0] * m
    for k, v in enumerate(ss.states):
        for i in range(m):
            if v[i]:
                ones[i] |= 1 << k
    everything = (1 << len(ss.states)) - 1
    for i, a in enumerate(ev):
        for j, b in enumerate(ev):
            if a & b != a and not ones[i] & (everything ^ ones[j]):
                return False, (a, b)
    return True, None


def dirac_witness_points(s: Somp, st: Sequence[int]) -> list[int]:
    return list(iter_bits(is_dirac(s, st)))
