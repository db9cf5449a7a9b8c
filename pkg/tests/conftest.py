import numpy as np
import pytest

from jordan_wh.algebra import AlgebraDescriptor
from jordan_wh.codec import parse_descriptor

DESCRIPTORS = ["rn:3", "sym:3", "spin:4", "sum(sym:2,spin:3)"]


@pytest.fixture(params=DESCRIPTORS)
def alg(request) -> AlgebraDescriptor:
    return parse_descriptor(request.param)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)
