from fractions import Fraction

from hypothesis import strategies as st

from scalerep.exact import CRational

small_ints = st.integers(min_value=-50, max_value=50)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=20))
nonzero_rationals = rationals.filter(bool)
gaussians = st.builds(CRational, rationals, rationals)
nonzero_gaussians = gaussians.filter(bool)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
