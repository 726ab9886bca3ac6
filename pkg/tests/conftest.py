import random

import pytest

from msmp.formula import CnfFormula
from msmp.formats import ProblemInstance
from msmp.oracle import EmbeddedSession


@pytest.fixture
def session():
    """Embedded oracle with witness validation on (test-suite default)."""
    return EmbeddedSession(validate=True)


def make_session():
    return EmbeddedSession(validate=True)


def cnf_instance(clauses, nvars=None):
    return ProblemInstance(cnf=CnfFormula(clauses, nvars))


def seeded(seed):
    return random.Random(seed)
