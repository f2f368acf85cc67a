import random

import pytest
from hypothesis import settings, strategies as st

from freevoa import FreeAlgebra, ModeCalculus, Scalar
from freevoa.acceptance import random_homogeneous_state

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(Scalar, rationals, rationals)
seeds = st.integers(min_value=0, max_value=10**6)

MIXED = FreeAlgebra(1, 1, (Scalar(1),))


def random_states(seed, alg, count, max_weight2=4):
    rnd = random.Random(seed)
    return [random_homogeneous_state(rnd, alg, max_weight2) for _ in range(count)]


@pytest.fixture(scope="session")
def bg1():
    return FreeAlgebra(1)


@pytest.fixture(scope="session")
def calc1(bg1):
    return ModeCalculus(bg1)
