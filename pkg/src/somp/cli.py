"""Command-line interface.

Every command reads JSON from a file or ``-`` (stdin) and writes JSON or a
plain-text table to stdout. Domain errors exit with status 1 and print
``ErrorName: message`` on stderr; usage errors exit with status 2.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import serialize as ser
from .core import (
    DEFAULT_CAP,
    closure,
    fmt_event,
    is_boolean,
    is_delta_closed,
    is_lattice,
    is_point_distinguishing,
    make_bigsets,
    make_even,
    make_powerset,
    make_product,
    members,
    event,
    validate,
)
from .errors import NoIsomorphism, NotAMorphism, SompError
from .morphism import DEFAULT_BUDGET, find_isomorphism, is_injective, is_somp_isomorphism, is_somp_morphism, is_surjective
from .quotient import copy_on_transversal, natural_pd_representation
from .states import dirac_states, enumerate_delta_states, enumerate_states, is_dirac, is_delta_state
from .stone import delta_stone, stone_representation


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}") from None


def _points(ps) -> str:
    """Both 0-indexed and 1-indexed labels."""
    ps = list(ps)
    return "{" + ",".join(map(str, ps)) + "} [1-indexed {" + ",".join(str(p + 1) for p in ps) + "}]"


def _emit(args, obj, table_lines) -> None:
    if args.format == "json":
        text = obj if isinstance(obj, str) else ser.dumps(obj)
        sys.stdout.write(text + "\n")
    else:
        sys.stdout.write("\n".join(table_lines) + "\n")


def _somp_table(s) -> list[str]:
    lines = [f"universe: {s.n} points, {len(s.events)} events"]
    for i, e in enumerate(s.events):
        lines.append(f"  [{i:>3}] {fmt_event(e)}  1-indexed {fmt_event(e, base=1)}")
    return lines


def _parse_members(text: str) -> int:
    try:
        return event(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated point indices, got {text!r}") from None


# -- commands -----------------------------------------------------------------


def cmd_generate(args) -> int:
    fam = args.family
    if fam in ("powerset", "even", "bigsets") and args.n is None:
        raise UsageError(f"--n is required for family {fam}")
    if fam == "powerset":
        s = make_powerset(args.n)
    elif fam == "even":
        s = make_even(args.n)
    elif fam == "bigsets":
        if args.a is None or args.b is None:
            raise UsageError("bigsets needs --a and --b")
        s = make_bigsets(args.n, _parse_members(args.a), _parse_members(args.b))
    else:
        if args.left is None or args.right is None:
            raise UsageError("product needs --left and --right")
        s = make_product(ser.load_somp_document(_read(args.left)), ser.load_somp_document(_read(args.right)))
    _emit(args, ser.somp_to_json(s), _somp_table(s))
    return 0


def cmd_validate(args) -> int:
    n, events = ser.load_raw_document(_read(args.file))
    report, s = validate(n, events)
    obj = {
        "ok": report.ok,
        "violations": [{"kind": v.kind, "events": [members(e) for e in v.events]} for v in report.violations],
    }
    if s is not None:
        obj["somp_hash"] = ser.somp_hash(s)
    lines = ["valid" if report.ok else f"invalid: {len(report.violations)} violation(s)"]
    lines += [f"  {v}  1-indexed {v.kind}(" + ", ".join(fmt_event(e, 1) for e in v.events) + ")" for v in report.violations]
    _emit(args, obj, lines)
    for v in report.violations:
        print(f"{v.kind}: " + ", ".join(fmt_event(e) for e in v.events), file=sys.stderr)
    return 0 if report.ok else 1


def cmd_close(args) -> int:
    n, events = ser.load_raw_document(_read(args.file))
    s = closure(n, events, cap=args.cap)
    _emit(args, ser.somp_to_json(s), _somp_table(s))
    return 0


def analysis_report(s, limit: Optional[int] = None, workers: int = 1) -> dict:
    pd, witness = is_point_distinguishing(s)
    delta = is_delta_closed(s)[0]
    q = natural_pd_representation(s)
    states = enumerate_states(s, limit, workers=workers)
    dirac = sum(1 for v in states if is_dirac(s, v))
    n_delta = sum(1 for v in states if is_delta_state(s, v)[0]) if delta else None
    k = len(q.partition.blocks)
    return {
        "somp_hash": ser.somp_hash(s),
        "universe": s.n,
        "events": len(s.events),
        "flags": {
            "point_distinguishing": pd,
            "lattice": is_lattice(s),
            "delta_closed": delta,
            "boolean": is_boolean(s)[0],
        },
        "indistinguishable_pair": list(witness) if witness else None,
        "blocks": k,
        "states": {
            "total": len(states),
            "dirac": dirac,
            "non_dirac": len(states) - dirac,
            "delta": n_delta,
            "all_states_dirac": dirac == len(states),
        },
        # size of the quotient universe vs the universe of the full-state Stone
        # representation, a point-distinguishing isomorphic copy; printed only
        "cardinalities": {
            "quotient_points": k,
            "stone_points": len(states),
            "quotient_events": len(q.quotient.events),
            "quotient_points_le_stone_points": k <= len(states),
        },
    }


def cmd_analyze(args) -> int:
    s = ser.load_somp_document(_read(args.file))
    r = analysis_report(s, args.limit, args.workers)
    f, st, c = r["flags"], r["states"], r["cardinalities"]
    lines = [
        f"universe {r['universe']} points, {r['events']} events",
        f"hash {r['somp_hash']}",
        *(f"{k:>22}: {v}" for k, v in f.items()),
    ]
    if r["indistinguishable_pair"]:
        lines.append(f"  indistinguishable pair: {_points(r['indistinguishable_pair'])}")
    lines += [
        f"indistinguishability blocks: {r['blocks']}",
        f"two-valued states: {st['total']} (Dirac {st['dirac']}, non-Dirac {st['non_dirac']})",
        f"delta-states: {st['delta'] if st['delta'] is not None else 'n/a (not delta-closed)'}",
        f"all_states_dirac: {st['all_states_dirac']}",
        f"quotient points {c['quotient_points']}, Stone points {c['stone_points']}, "
        f"quotient events {c['quotient_events']}",
    ]
    _emit(args, r, lines)
    return 0


def cmd_quotient(args) -> int:
    s = ser.load_somp_document(_read(args.file))
    q = natural_pd_representation(s)
    if args.transversal:
        t = copy_on_transversal(q)
        lines = [f"representatives: {_points(t.points)}"]
        lines += [f"  {fmt_event(e)}" for e in t.original_events()]
        _emit(args, ser.transversal_to_json(t), lines)
        return 0
    lines = [f"{len(q.partition.blocks)} blocks:"]
    lines += [f"  block {j}: {_points(members(b))}" for j, b in enumerate(q.partition.blocks)]
    lines += _somp_table(q.quotient)
    _emit(args, ser.quotient_to_json(q), lines)
    return 0


def cmd_states(args) -> int:
    s = ser.load_somp_document(_read(args.file))
    ss = enumerate_delta_states(s, args.limit) if args.delta else enumerate_states(s, args.limit, workers=args.workers)
    lines = []
    non_dirac = 0
    for v in ss.states:
        w = is_dirac(s, v)
        if not w:
            non_dirac += 1
        tag = f"Dirac at {_points(members(w))}" if w else "non-Dirac"
        lines.append(f"  {''.join(map(str, v))}  {tag}")
    kind = "delta-states" if args.delta else "states"
    lines.insert(0, f"{len(ss)} {kind}, {non_dirac} non-Dirac")
    _emit(args, ser.stateset_to_json(ss), lines)
    return 0


def cmd_stone(args) -> int:
    s = ser.load_somp_document(_read(args.file))
    report = None
    if args.states == "dirac":
        st = stone_representation(s, dirac_states(s))
    elif args.states == "all":
        st = stone_representation(s, enumerate_states(s, args.limit, workers=args.workers))
    elif args.states == "delta":
        st, rep = delta_stone(s, args.limit)
        report = {
            "delta_states": rep.delta_states,
            "rep_delta_closed": rep.rep_delta_closed,
            "rep_delta_states": rep.rep_delta_states,
            "rep_delta_states_all_dirac": rep.rep_delta_states_all_dirac,
        }
    else:
        st = stone_representation(s, ser.stateset_from_json(_read(args.states), s))
    lines = [f"Stone representation on {len(st.states)} states"]
    lines += _somp_table(st.rep)
    if report:
        lines += [f"{k}: {v}" for k, v in report.items()]
    _emit(args, ser.stone_to_json(st, report), lines)
    return 0


def cmd_check_morphism(args) -> int:
    src = ser.load_somp_document(_read(args.src))
    dst = ser.load_somp_document(_read(args.dst))
    m = ser.morphism_from_json(_read(args.map), src, dst)
    ok, violations = is_somp_morphism(m)
    obj = {
        "morphism": ok,
        "injective": is_injective(m),
        "surjective": is_surjective(m),
        "isomorphism": is_somp_isomorphism(m),
        "violations": [str(v) for v in violations],
    }
    lines = [f"{k}: {v}" for k, v in obj.items() if k != "violations"]
    lines += [f"  {v}" for v in obj["violations"]]
    _emit(args, obj, lines)
    if not ok:
        raise NotAMorphism(f"{len(violations)} violation(s), first {violations[0]}")
    return 0


def cmd_find_iso(args) -> int:
    a = ser.load_somp_document(_read(args.a))
    b = ser.load_somp_document(_read(args.b))
    m = find_isomorphism(a, b, budget=args.budget)
    if m is None:
        raise NoIsomorphism("the families are not isomorphic")
    lines = [f"isomorphism found ({len(m.table)} events)"]
    lines += [f"  {fmt_event(a.events[i])} -> {fmt_event(b.events[t])}" for i, t in enumerate(m.table)]
    _emit(args, ser.morphism_to_json(m), lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "table"], default="json")
    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--limit", type=int, default=None, help="max states (default $SOMP_STATE_LIMIT or 1000000)")
    solver.add_argument("--workers", type=int, default=1)

    p = argparse.ArgumentParser(prog="somp", description="Finite set-representable orthomodular posets.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="emit a standard family")
    g.add_argument("--family", required=True, choices=["powerset", "even", "bigsets", "product"])
    g.add_argument("--n", type=int)
    g.add_argument("--a", help="bigsets: comma-separated members of A")
    g.add_argument("--b", help="bigsets: comma-separated members of B")
    g.add_argument("--left", help="product: first factor file")
    g.add_argument("--right", help="product: second factor file")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("validate", parents=[common], help="check the axioms, listing every violation")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("close", parents=[common], help="close a list of generators")
    c.add_argument("file")
    c.add_argument("--cap", type=int, default=DEFAULT_CAP)
    c.set_defaults(func=cmd_close)

    a = sub.add_parser("analyze", parents=[common, solver], help="flags, blocks and state counts")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    q = sub.add_parser("quotient", parents=[common], help="natural point-distinguishing representation")
    q.add_argument("file")
    q.add_argument("--transversal", action="store_true", help="place the quotient on block representatives")
    q.set_defaults(func=cmd_quotient)

    s = sub.add_parser("states", parents=[common, solver], help="enumerate two-valued states")
    s.add_argument("file")
    s.add_argument("--delta", action="store_true", help="only delta-states")
    s.set_defaults(func=cmd_states)

    st = sub.add_parser("stone", parents=[common, solver], help="Stone representation on a state set")
    st.add_argument("file")
    st.add_argument("--states", required=True, help="dirac, all, delta, or a state-set file")
    st.set_defaults(func=cmd_stone)

    m = sub.add_parser("check-morphism", parents=[common], help="verify a morphism table")
    m.add_argument("src")
    m.add_argument("dst")
    m.add_argument("map")
    m.set_defaults(func=cmd_check_morphism)

    f = sub.add_parser("find-iso", parents=[common], help="search for an isomorphism")
    f.add_argument("a")
    f.add_argument("b")
    f.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    f.set_defaults(func=cmd_find_iso)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 2
    except SompError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
