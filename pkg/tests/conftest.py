import math
import os
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from sympindex.core import NormalFormFactor  # noqa: E402

settings.register_profile(
    "default", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def _angle_strategy():
    rational = st.sampled_from(
        [Fraction(p, q) for q in (3, 4, 5, 6, 7) for p in range(1, 2 * q) if Fraction(p, q).denominator == q]
    )
    irrational = st.floats(0.15, math.pi - 0.15).flatmap(lambda x: st.sampled_from([x, 2 * math.pi - x]))
    return st.one_of(rational, irrational)


def factor_strategy(allow_n2=True):
    """Basic normal forms with parameters in their admissible ranges."""
    opts = [
        st.sampled_from([2, -2]).map(NormalFormFactor.D),
        st.tuples(st.sampled_from([1, -1]), st.sampled_from([1, 0, -1])).map(lambda a: NormalFormFactor.N1(*a)),
        _angle_strategy().map(NormalFormFactor.R),
    ]
    if allow_n2:
        opts.append(st.tuples(_angle_strategy(), st.sampled_from([1, -1]))
                    .map(lambda a: NormalFormFactor.N2(a[0], sign=a[1])))
    return st.one_of(*opts)


factors = factor_strategy()
factor_lists = st.lists(factors, min_size=1, max_size=3)


# -- acceptance log -----------------------------------------------------------

_CRITERIA: list[str] = []


class _Criterion:
    """Times one acceptance criterion and records a single pass/fail line."""

    def __init__(self, capsys):
        self.capsys = capsys

    def __call__(self, number: int, title: str):
        return _CriterionRun(self.capsys, number, title)


class _CriterionRun:
    def __init__(self, capsys, number, title):
        self.capsys, self.number, self.title = capsys, number, title

    def __enter__(self):
        import time

        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        import time

        took = time.perf_counter() - self.start
        verdict = "PASS" if exc_type is None else "FAIL"
        line = f"criterion {self.number:>2}: {verdict}  {self.title}  ({took:.1f} s)"
        _CRITERIA.append(line)
        with self.capsys.disabled():
            print("\n" + line)
        return False


@pytest.fixture
def criterion(capsys):
    return _Criterion(capsys)


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
