from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import settings

from gdrazin.matrix import Matrix
from gdrazin.scalar import Scalar

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def M(rows):
    return Matrix.from_rows(rows)


def fractions():
    return st.builds(Fraction, st.integers(-3, 3), st.sampled_from([1, 2]))


@st.composite
def matrices(draw, rows=None, cols=None, max_dim=4, complex_entries=True):
    m = draw(st.integers(1, max_dim)) if rows is None else rows
    n = draw(st.integers(1, max_dim)) if cols is None else cols
    gaussian = complex_entries and draw(st.booleans())
    data = [[Scalar(draw(fractions()), draw(fractions()) if gaussian else 0)
             for _ in range(n)] for _ in range(m)]
    return Matrix.from_rows(data, shape=(m, n))


@st.composite
def square_matrices(draw, max_dim=5):
    """Square matrices, about half of them built as low-rank products."""
    n = draw(st.integers(1, max_dim))
    if draw(st.booleans()):
        k = draw(st.integers(0, n - 1))
        if k == 0:
            return Matrix.zeros(n)
        return draw(matrices(n, k)) @ draw(matrices(k, n))
    x = draw(matrices(n, n))
    if draw(st.booleans()):
        # strictly upper part gives nilpotent pieces and higher indices
        rows = [[x[i, j] if j > i else 0 for j in range(n)] for i in range(n)]
        x = Matrix.from_rows(rows, shape=(n, n))
    return x


def pytest_terminal_summary(terminalreporter):
    """Print the acceptance verdict lines collected during the run."""
    import sys
    lines = {}
    for name, mod in list(sys.modules.items()):
        if name.endswith("test_acceptance"):
            lines.update(getattr(mod, "RESULTS", {}))
    if lines:
        terminalreporter.section("acceptance criteria")
        for k in sorted(lines):
            terminalreporter.write_line(lines[k])
