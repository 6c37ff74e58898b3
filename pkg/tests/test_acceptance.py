"""Acceptance gate: every shipped criterion runs at its stated tolerance.

Each criterion function returns a list of failure descriptions; an empty
list is a pass.  One test per criterion keeps the pytest report readable,
one pass or fail line per criterion, matching the ``fermipair verify``
command (which runs the same functions with the same seeding).
"""

import numpy as np
import pytest

from fermipair.acceptance import CRITERIA

_IDS = [f"{number:02d}_{name.replace(' ', '_').replace('-', '_')}"
        for number, name, _ in CRITERIA]


def test_criteria_enumeration():
    numbers = [number for number, _, _ in CRITERIA]
    assert numbers == list(range(1, 11))


@pytest.mark.parametrize("criterion", CRITERIA, ids=_IDS)
def test_criterion(criterion):
    number, name, fn = criterion
    rng = np.random.default_rng([0, number])
    failures = fn(rng)
    detail = "; ".join(failures)
    assert failures == [], f"criterion {number} [{name}]: {detail}"
