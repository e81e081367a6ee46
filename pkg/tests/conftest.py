"""Shared fixtures: a DSBS model, a uniform binary source and small seeded codes"""

import numpy as np
import pytest

from src.codec import RatePair, sample_code
from src.decoders import matched_metric, min_entropy
from src.measures import JointPmf, Pmf
from src.montecarlo import SourceModel

# H(X|Y) of DSBS(0.1) in nats
DSBS_COND_ENTROPY = -0.1 * np.log(0.1) - 0.9 * np.log(0.9)


@pytest.fixture
def dsbs_model():
    return SourceModel.dsbs(0.1)


@pytest.fixture
def skewed_model():
    """A binary source with no symmetry, so likelihood ties are rare"""
    return SourceModel(JointPmf(np.array([[0.42, 0.08], [0.13, 0.37]])))


@pytest.fixture
def uniform_binary():
    return Pmf.uniform(2)


@pytest.fixture
def small_code():
    return sample_code(4, 2, RatePair(r_s=0.4, r_w=0.4), seed=7)


@pytest.fixture
def matched(dsbs_model):
    return matched_metric(dsbs_model.p_xy)


@pytest.fixture
def min_entropy_two():
    return min_entropy(2.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
