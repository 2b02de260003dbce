import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chiralgroupoid.corpus import BUILTIN_DECORATIONS, builtin  # noqa: E402
from chiralgroupoid.twists import coboundary_twist, twist_from_function  # noqa: E402

INVERSE_CORPUS = ["trivial", "Z2", "Z3", "Z4", "S3", "chain2", "chain3", "V3", "I1", "I2", "B2", "Z3+1"]
GROUPS = ["trivial", "Z2", "Z3", "Z4", "S3"]
SEMILATTICES = ["trivial", "chain2", "chain3", "V3"]
DECORATED = {name: frozenset(dec) for name, dec in BUILTIN_DECORATIONS.items()}


def minus_one_z2():
    S = builtin("Z2")
    return twist_from_function(S, lambda s, t: Fraction(1, 2) if s == t == 1 else 0)


# nontrivial twists that pass validation: (name, semigroup, factory)
TWISTED = {
    "Z2/minus-one": ("Z2", minus_one_z2),
    "Z4/i": ("Z4", lambda: coboundary_twist(builtin("Z4"), [0, 0, Fraction(3, 4), 0])),
    "Z3/cob": ("Z3", lambda: coboundary_twist(builtin("Z3"), [0, Fraction(1, 3), 0])),
    "Z3+1/cob": ("Z3+1", lambda: coboundary_twist(builtin("Z3+1"), [0, Fraction(1, 3), 0, 0])),
    "S3/cob": ("S3", lambda: coboundary_twist(builtin("S3"), [0, Fraction(1, 6), Fraction(1, 3), 0, Fraction(1, 2), Fraction(1, 4)])),
}


@pytest.fixture(params=INVERSE_CORPUS)
def corpus_name(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(mod.RESULTS.items()):
        terminalreporter.write_line(line)
