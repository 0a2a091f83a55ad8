import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from orthogroups import SparseVector, apply, basis

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

coefficients = st.floats(min_value=-10, max_value=10, allow_nan=False).filter(lambda v: abs(v) > 1e-6)


@st.composite
def sparse_vectors(draw, max_index=20, max_size=8, nonzero=False):
    entries = draw(st.dictionaries(st.integers(0, max_index), coefficients,
                                   min_size=1 if nonzero else 0, max_size=max_size))
    return SparseVector(entries)


seeds = st.integers(0, 2**32 - 1)


def operator_matrix(A, n):
    """Dense matrix of A on e_0..e_{n-1}, built one column at a time from apply."""
    cols = [apply(A, basis(i)).to_dense(n) for i in range(n)]
    return np.column_stack(cols)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import CRITERIA, RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, _ in CRITERIA:
        terminalreporter.write_line(RESULTS.get(label, f"SKIP  {label}"))
