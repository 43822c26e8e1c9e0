from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

PRIMES = [2, 3, 5, 7]


@st.composite
def matrices(draw, p=None, max_rows=6, max_cols=6, min_rows=1, min_cols=1):
    p = draw(st.sampled_from(PRIMES)) if p is None else p
    r = draw(st.integers(min_rows, max_rows))
    c = draw(st.integers(min_cols, max_cols))
    flat = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return p, np.array(flat, dtype=np.int64).reshape(r, c)


@pytest.fixture(autouse=True)
def _fresh_corpus():
    # corpus objects carry decision caches; start every test from scratch
    from sliplab.corpus import clear_caches

    clear_caches()
    yield


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
