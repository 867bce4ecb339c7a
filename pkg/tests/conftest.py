import os
import sys

import hypothesis
import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from somp.core import closure  # noqa: E402
from somp.errors import CapExceeded  # noqa: E402
from somp.fixtures import fixtures  # noqa: E402
from somp.quotient import Partition  # noqa: E402

hypothesis.settings.register_profile("default", deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = fixtures()


@pytest.fixture(params=sorted(FIXTURES))
def fixture_somp(request):
    return FIXTURES[request.param]


@st.composite
def closures(draw, max_n=8, cap=256, max_generators=3):
    n = draw(st.integers(1, max_n))
    gens = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=max_generators))
    try:
        return closure(n, gens, cap=cap)
    except CapExceeded:
        hypothesis.reject()


@st.composite
def partitions(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    blocks = {}
    for x, lab in enumerate(labels):
        blocks[lab] = blocks.get(lab, 0) | (1 << x)
    return Partition.from_blocks(n, blocks.values())


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
