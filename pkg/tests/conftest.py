"""Shared fixtures for the haarmoments test suite."""

from typing import Callable, Sequence

import numpy
import pytest
from loguru import logger

from haarmoments.config import Config, use_config
from haarmoments.verify.exact_identities import random_operator
from haarmoments.weingarten.exact_operator import ExactOperator

TEST_SEED = 20240521


@pytest.fixture(autouse=True)
def default_config():
    """Runs every test under the default config and restores the old one."""
    previous = use_config(Config())
    yield
    use_config(previous)


@pytest.fixture(autouse=True)
def quiet_logger():
    logger.remove()
    yield
    logger.remove()


@pytest.fixture
def generator() -> numpy.random.Generator:
    return numpy.random.default_rng(TEST_SEED)


@pytest.fixture
def make_operator(generator) -> Callable[[Sequence[int]], ExactOperator]:
    """Factory of small random Gaussian-rational operators."""
    def factory(dims: Sequence[int]) -> ExactOperator:
        return random_operator(dims, generator)

    return factory
