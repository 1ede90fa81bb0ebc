import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from entrolab.algebra import FieldSpec, PolyRing
from entrolab.endomorphism import validate
from entrolab.local_ring import LocalRingPresentation

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(__file__)), "fixtures")

QQ = FieldSpec(0)
GF5 = FieldSpec(5)


def poly_strategy(ring: PolyRing, max_terms=4, max_exp=3):
    p = ring.field.characteristic
    coeff = (st.integers(1, p - 1) if p
             else st.fractions(min_value=-5, max_value=5, max_denominator=4))
    mono = st.tuples(*[st.integers(0, max_exp)] * ring.nvars)
    return st.dictionaries(mono, coeff, max_size=max_terms).map(ring.from_dict)


@pytest.fixture
def frob25():
    R = LocalRingPresentation(GF5, ("x", "y"))
    x, y = R.gens
    return validate(R, [x ** 5, y ** 5])


@pytest.fixture
def cusp():
    R = LocalRingPresentation(GF5, ("x", "y"))
    x, y = R.gens
    return LocalRingPresentation(GF5, ("x", "y"), [y ** 2 - x ** 3])


@pytest.fixture
def cusp_frob(cusp):
    x, y = cusp.gens
    return validate(cusp, [x ** 5, y ** 5])


@pytest.fixture
def node_swap():
    R = LocalRingPresentation(QQ, ("x", "y"))
    x, y = R.gens
    node = LocalRingPresentation(QQ, ("x", "y"), [x * y])
    x, y = node.gens
    return validate(node, [y, x])


def fixture_path(name):
    return os.path.join(FIXTURES, name)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[0][3:])):
            terminalreporter.write_line(line)
