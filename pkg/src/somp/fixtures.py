"""Named families used by the tests, the acceptance run and the scripts.

Points are 0-indexed; the even families on {1..4} and {1..6} appear here on
{0..3} and {0..5}.
"""

from __future__ import annotations

import random

from .core import Somp, closure, event, make_bigsets, make_even, make_powerset, make_product
from .errors import CapExceeded

BIGSETS_A = event([0, 1, 2, 3])
BIGSETS_B = event([0, 1, 4, 5])

# closure of these is a 20-event family on 6 points where {0,1} and {0,2} have
# two minimal upper bounds {0,1,2,4} and {0,1,2,5}; found by scripts/find_nonlattice.py
NONLATTICE_GENERATORS = (event([0, 1]), event([0, 2]), event([0, 3]), event([1, 4]))


def bigsets() -> Somp:
    return make_bigsets(8, BIGSETS_A, BIGSETS_B)


def square() -> Somp:
    """Six events on four points: {0,1}, {0,2} and their complements."""
    return closure(4, [event([0, 1]), event([0, 2])])


def nonlattice() -> Somp:
    return closure(6, NONLATTICE_GENERATORS)


def fixtures() -> dict[str, Somp]:
    """The standard fixture set, all with at most 64 events."""
    return {
        "powerset1": make_powerset(1),
        "powerset2": make_powerset(2),
        "powerset3": make_powerset(3),
        "powerset4": make_powerset(4),
        "even2": make_even(2),
        "even4": make_even(4),
        "even6": make_even(6),
        "bigsets": bigsets(),
        "square": square(),
        "nonlattice": nonlattice(),
        "partition_bool": closure(5, [event([0, 1]), event([2])]),
        "even4_x_even4": make_product(make_even(4), make_even(4)),
        "bigsets_x_powerset1": make_product(bigsets(), make_powerset(1)),
        "even4_x_powerset2": make_product(make_even(4), make_powerset(2)),
    }


def random_closure(rng: random.Random, max_n: int = 8, cap: int = 256, max_generators: int = 3) -> Somp:
    """A closure of a few random subsets; retries until the cap is respected."""
    while True:
        n = rng.randint(1, max_n)
        gens = [rng.getrandbits(n) for _ in range(rng.randint(1, max_generators))]
        try:
            return closure(n, gens, cap=cap)
        except CapExceeded:
            continue
