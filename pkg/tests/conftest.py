import random
from fractions import Fraction

import hypothesis
import pytest
from hypothesis import strategies as st

from monorel.exact import q

hypothesis.settings.register_profile(
    "default", max_examples=50, deadline=None
)
hypothesis.settings.load_profile("default")


def rationals(bound=6, max_denominator=4):
    return st.fractions(
        min_value=-bound, max_value=bound, max_denominator=max_denominator
    ).map(q)


def rational_vecs(dim, bound=6, max_denominator=4):
    return st.tuples(*[rationals(bound, max_denominator)] * dim)


@pytest.fixture
def rng():
    return random.Random(12345)
