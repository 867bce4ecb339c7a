"""Two-valued state census over the even families and their products.

Prints, for each family, the number of events, states, Dirac states and
delta-states, and whether every state is Dirac.
"""

import argparse
import time

from somp.core import is_delta_closed, make_even, make_powerset, make_product
from somp.states import enumerate_states, is_delta_state, is_dirac


def census(name, s, workers):
    t0 = time.perf_counter()
    states = enumerate_states(s, workers=workers)
    dirac = sum(1 for v in states if is_dirac(s, v))
    delta = sum(1 for v in states if is_delta_state(s, v)[0]) if is_delta_closed(s)[0] else None
    dt = time.perf_counter() - t0
    delta_txt = "-" if delta is None else str(delta)
    print(f"{name:<22}{len(s.events):>7}{len(states):>8}{dirac:>7}{delta_txt:>7}  {str(dirac == len(states)):<6}{dt:8.3f}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-even", type=int, default=8)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    print(f"{'family':<22}{'events':>7}{'states':>8}{'dirac':>7}{'delta':>7}  all-Dirac   time")
    evens = {n: make_even(n) for n in range(2, args.max_even + 1, 2)}
    for n, s in evens.items():
        census(f"even({n})", s, args.workers)
    for n in range(1, 5):
        census(f"powerset({n})", make_powerset(n), args.workers)
    for a, b in ((4, 4), (4, 6), (6, 6)):
        census(f"even({a}) x even({b})", make_product(evens[a], evens[b]), args.workers)


if __name__ == "__main__":
    main()
