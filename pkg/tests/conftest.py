import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from curveode.series import TruncatedSeries  # noqa: E402

# built from integer pairs: much cheaper to draw than st.fractions
small_q = st.builds(Fraction, st.integers(-240, 240), st.integers(1, 12))
nonzero_q = small_q.filter(lambda q: q != 0)


@st.composite
def series(draw, truncation=None, unit=False):
    n = draw(st.integers(0, 8)) if truncation is None else truncation
    head = draw(nonzero_q if unit else small_q)
    rest = draw(st.lists(small_q, min_size=n, max_size=n))
    return TruncatedSeries((head, *rest))


@st.composite
def series_triple(draw):
    n = draw(st.integers(0, 8))
    return tuple(draw(series(truncation=n)) for _ in range(3))


# acceptance reporting: one line per criterion in the terminal summary
_criteria = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    passed = call.excinfo is None
    _criteria[number] = (title, passed and _criteria.get(number, (None, True))[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, passed = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}")
