import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from fractions import Fraction

from hypothesis import strategies as st

from stackpw.series import GradedSeries, TruncationPolicy

# window configurations exercised by the property tests
POLICIES = [
    TruncationPolicy(4, 0, 6),
    TruncationPolicy(3, -2, 6),
    TruncationPolicy(4, Fraction(-1, 2), Fraction(5, 2)),
]


def series_strategy(policy: TruncationPolicy, min_rank: int = 0, max_terms: int = 6, coeff=5):
    keys = [(n, e2) for n in range(min_rank, policy.t_max + 1)
            for e2 in range(policy.band(n)[0], policy.band(n)[1] + 1)]
    return st.dictionaries(st.sampled_from(keys), st.integers(-coeff, coeff), max_size=max_terms).map(
        lambda d: GradedSeries(policy, d))


def pytest_terminal_summary(terminalreporter):
    for name, mod in list(sys.modules.items()):
        if name.endswith("test_acceptance") and hasattr(mod, "RESULTS") and mod.RESULTS:
            terminalreporter.section("acceptance criteria")
            for n in sorted(mod.RESULTS):
                terminalreporter.write_line(mod.RESULTS[n])
