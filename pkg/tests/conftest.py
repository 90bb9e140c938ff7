from functools import lru_cache

import pytest
from hypothesis import strategies as st

from majmeter import Partition, maj_polynomial
from majmeter.families import two_row


@st.composite
def partition_strategy(draw, max_n: int = 12):
    n = draw(st.integers(min_value=1, max_value=max_n))
    rows = []
    remaining = n
    cap = n
    while remaining:
        part = draw(st.integers(min_value=1, max_value=min(cap, remaining)))
        rows.append(part)
        cap = part
        remaining -= part
    return Partition(rows)


@lru_cache(maxsize=None)
def two_row_poly(n: int):
    return maj_polynomial(two_row(n))


@pytest.fixture(scope="session")
def two_row_polynomials():
    return two_row_poly
