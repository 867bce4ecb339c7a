"""Canonical JSON for every structure the package exchanges.

All writers emit compact JSON (no whitespace) with keys in a fixed order, so a
write/read/write cycle is byte-identical. Documents that depend on a family
carry the SHA-256 of that family's canonical serialization, and readers check it.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any, Optional

from .core import Event, Somp, event, from_events, members
from .errors import DuplicateEvent, FormatError, HashMismatch, LengthMismatch, NotAState
from .morphism import MorphismTable
from .quotient import Partition, QuotientResult, TransversalCopy, natural_pd_representation
from .states import StateSet, is_state
from .stone import StoneResult, stone_representation


def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _parse(doc) -> Any:
    if isinstance(doc, (str, bytes)):
        try:
            return json.loads(doc)
        except json.JSONDecodeError as err:
            raise FormatError(f"invalid JSON: {err}") from None
    return doc


def _require(obj, *keys):
    if not isinstance(obj, dict):
        raise FormatError("expected a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FormatError(f"missing keys: {missing}")


def _int_list(x, what: str) -> list[int]:
    if not isinstance(x, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in x):
        raise FormatError(f"{what} must be a list of integers")
    return x


def _check_hash(found: str, s: Somp, what: str) -> None:
    if found != somp_hash(s):
        raise HashMismatch(f"{what} hash does not match the supplied family")


# -- Somp ---------------------------------------------------------------------


def somp_obj(s: Somp) -> dict:
    return {"universe": s.n, "events": [members(e) for e in s.events]}


def somp_to_json(s: Somp) -> str:
    return dumps(somp_obj(s))


def somp_hash(s: Somp) -> str:
    return hashlib.sha256(somp_to_json(s).encode()).hexdigest()


def _events_from_lists(n: int, lists) -> list[Event]:
    if not isinstance(lists, list):
        raise FormatError("events must be a list")
    out = []
    for ms in lists:
        ms = _int_list(ms, "event")
        if any(not 0 <= i < n for i in ms):
            raise LengthMismatch(f"event {ms} has members outside universe of size {n}")
        if len(set(ms)) != len(ms):
            raise FormatError(f"event {ms} repeats a member")
        out.append(event(ms))
    return out


def read_raw(doc) -> tuple[int, list[Event]]:
    """Universe size and event list as written, without deduplication or checks."""
    obj = _parse(doc)
    _require(obj, "universe", "events")
    n = obj["universe"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise FormatError("universe must be an integer")
    return n, _events_from_lists(n, obj["events"])


def somp_from_obj(obj) -> Somp:
    n, events = read_raw(obj)
    if len(set(events)) != len(events):
        seen, dups = set(), []
        for e in events:
            if e in seen:
                dups.append(members(e))
            seen.add(e)
        raise DuplicateEvent(f"duplicate events: {dups}")
    return from_events(n, events)


def somp_from_json(doc) -> Somp:
    return somp_from_obj(_parse(doc))


def _unwrap(obj) -> Any:
    if not isinstance(obj, dict):
        raise FormatError("expected a JSON object")
    for key in ("quotient", "rep", "copy"):
        if key in obj and "events" not in obj:
            return obj[key]
    return obj


def load_somp_document(doc) -> Somp:
    """Extract the family carried by any document this package emits."""
    return somp_from_obj(_unwrap(_parse(doc)))


def load_raw_document(doc) -> tuple[int, list[Event]]:
    """Like :func:`load_somp_document` but without checks, for validation and closure."""
    return read_raw(_unwrap(_parse(doc)))


# -- Partition / quotient -------------------------------------------------------


def partition_obj(p: Partition) -> dict:
    return {"universe": p.n, "blocks": [members(b) for b in p.blocks]}


def partition_to_json(p: Partition) -> str:
    return dumps(partition_obj(p))


def partition_from_json(doc) -> Partition:
    obj = _parse(doc)
    _require(obj, "universe", "blocks")
    return Partition(obj["universe"], tuple(_events_from_lists(obj["universe"], obj["blocks"])))


def quotient_obj(q: QuotientResult) -> dict:
    return {
        "source_hash": somp_hash(q.source),
        "partition": partition_obj(q.partition),
        "quotient": somp_obj(q.quotient),
        "map_f": list(q.map_f),
    }


def quotient_to_json(q: QuotientResult) -> str:
    return dumps(quotient_obj(q))


def quotient_from_json(doc, source: Somp) -> QuotientResult:
    obj = _parse(doc)
    _require(obj, "source_hash", "partition", "quotient", "map_f")
    _check_hash(obj["source_hash"], source, "source")
    q = QuotientResult(
        source,
        partition_from_json(obj["partition"]),
        somp_from_obj(obj["quotient"]),
        tuple(_int_list(obj["map_f"], "map_f")),
    )
    if q != natural_pd_representation(source):
        raise FormatError("quotient document does not match its source family")
    return q


def transversal_obj(t: TransversalCopy) -> dict:
    return {"source_hash": somp_hash(t.source), "points": list(t.points), "copy": somp_obj(t.somp)}


def transversal_to_json(t: TransversalCopy) -> str:
    return dumps(transversal_obj(t))


def transversal_from_json(doc, source: Somp) -> TransversalCopy:
    obj = _parse(doc)
    _require(obj, "source_hash", "points", "copy")
    _check_hash(obj["source_hash"], source, "source")
    return TransversalCopy(source, tuple(_int_list(obj["points"], "points")), somp_from_obj(obj["copy"]))


# -- States / Stone -----------------------------------------------------------


def stateset_obj(ss: StateSet) -> dict:
    return {"somp_hash": somp_hash(ss.somp), "states": [list(v) for v in ss.states]}


def stateset_to_json(ss: StateSet) -> str:
    return dumps(stateset_obj(ss))


def stateset_from_json(doc, s: Somp) -> StateSet:
    obj = _parse(doc)
    _require(obj, "somp_hash", "states")
    _check_hash(obj["somp_hash"], s, "state set")
    if not isinstance(obj["states"], list):
        raise FormatError("states must be a list")
    states = [tuple(_int_list(v, "state")) for v in obj["states"]]
    for v in states:
        ok, bad = is_state(s, v)
        if not ok:
            raise NotAState(f"vector {list(v)} violates additivity at {bad}")
    return StateSet(s, tuple(states))


def stone_obj(st: StoneResult, report: Optional[dict] = None) -> dict:
    obj = {
        "base_hash": somp_hash(st.base),
        "states": stateset_obj(st.states),
        "rep": somp_obj(st.rep),
        "map_e": list(st.map_e),
    }
    if report is not None:
        obj["report"] = report
    return obj


def stone_to_json(st: StoneResult, report: Optional[dict] = None) -> str:
    return dumps(stone_obj(st, report))


def stone_from_json(doc, base: Somp) -> StoneResult:
    obj = _parse(doc)
    _require(obj, "base_hash", "states", "rep", "map_e")
    _check_hash(obj["base_hash"], base, "base")
    st = stone_representation(base, stateset_from_json(obj["states"], base))
    if somp_obj(st.rep) != obj["rep"] or list(st.map_e) != obj["map_e"]:
        raise FormatError("Stone document does not match its states")
    return st


# -- Morphisms ----------------------------------------------------------------


def morphism_obj(m: MorphismTable) -> dict:
    return {
        "source_hash": somp_hash(m.source),
        "target_hash": somp_hash(m.target),
        "table": list(m.table),
    }


def morphism_to_json(m: MorphismTable) -> str:
    return dumps(morphism_obj(m))


def morphism_from_json(doc, source: Somp, target: Somp) -> MorphismTable:
    obj = _parse(doc)
    if isinstance(obj, list):
        return MorphismTable(source, target, tuple(_int_list(obj, "table")))
    _require(obj, "source_hash", "target_hash", "table")
    _check_hash(obj["source_hash"], source, "source")
    _check_hash(obj["target_hash"], target, "target")
    return MorphismTable(source, target, tuple(_int_list(obj["table"], "table")))

