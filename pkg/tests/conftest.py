import random

import pytest
from hypothesis import strategies as st

from sptorsion.cyclo import CycElt


def elements(p, lo=-6, hi=6, den=st.just(1)):
    coords = st.lists(st.integers(lo, hi), min_size=p - 1, max_size=p - 1)
    return st.builds(lambda c, d: CycElt(p, [x for x in c]) * CycElt.from_int(p, 1) / d, coords, den)


@pytest.fixture
def rng():
    return random.Random(12345)
