"""Acceptance criteria, one test each, at the stated tolerances.

Every criterion prints a ``PASS``/``FAIL`` line (collected into the pytest
terminal summary, or printed directly when run as a script).  The even-k half
of criterion 4 asserts a value the sums do not take; it is a strict xfail
and its line reads FAIL.
"""

import pytest

from cyclespec import verify

LINES = []

CRITERIA = [
    ("1", verify.criterion_1),
    ("2", verify.criterion_2),
    ("3", verify.criterion_3),
    ("4 (odd k)", verify.criterion_4_odd),
    pytest.param(
        "4 (even k)",
        verify.criterion_4_even,
        marks=pytest.mark.xfail(strict=True, reason="n=2 value is -k/2 for k = 2, 6, not -k"),
    ),
    ("5", verify.criterion_5),
    ("6", verify.criterion_6),
    ("7", verify.criterion_7),
    ("8", verify.criterion_8),
    ("9", verify.criterion_9),
    ("10", verify.criterion_10),
    ("11", verify.criterion_11),
]


def line_for(label, res):
    return f"criterion {label:<10} {'PASS' if res.passed else 'FAIL'}  {res.title}: {res.detail}"


@pytest.mark.parametrize("label, check", CRITERIA, ids=lambda v: v if isinstance(v, str) else "")
def test_criterion(label, check):
    res = check()
    line = line_for(label, res)
    LINES.append(line)
    print(line)
    assert res.passed, res.detail


if __name__ == "__main__":
    for item in CRITERIA:
        label, check = item.values if hasattr(item, "values") else item
        print(line_for(label, check()))
