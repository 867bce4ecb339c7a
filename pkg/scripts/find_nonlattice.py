"""Search small closures for the smallest family that is not a lattice."""

import argparse
from itertools import combinations

from somp.core import closure, fmt_event, is_lattice
from somp.errors import CapExceeded


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--generators", type=int, default=3)
    ap.add_argument("--cap", type=int, default=64)
    args = ap.parse_args()

    full = (1 << args.n) - 1
    pool = [e for e in range(1, full) if e.bit_count() >= 2 and full ^ e and (full ^ e).bit_count() >= 2]
    best = None
    for gens in combinations(pool, args.generators):
        try:
            s = closure(args.n, gens, cap=args.cap)
        except CapExceeded:
            continue
        if best is not None and len(s) >= len(best[1]):
            continue
        if not is_lattice(s):
            best = (gens, s)
    if best is None:
        print("no non-lattice closure found")
        return
    gens, s = best
    print("generators:", [fmt_event(g) for g in gens])
    print(f"{len(s)} events:", " ".join(fmt_event(e) for e in s.events))


if __name__ == "__main__":
    main()
