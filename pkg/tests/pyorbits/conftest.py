from contextlib import AbstractContextManager, contextmanager
from typing import Generator, Protocol

import pytest
from pyorbits import config
from pyorbits.poly import LaurentPoly, parse_poly


class ConfigFixtureProtocol(Protocol):
    def __call__(
        self,
        *,
        logging: bool = config.TRACE_LOGGING,
        quad_nodes: int = config.QUAD_NODES,
        exact_threshold: int = config.EXACT_THRESHOLD,
        max_depth: int = config.MAX_DEPTH,
    ) -> AbstractContextManager[None]:
        ...


@pytest.fixture
def pyorbits_config() -> ConfigFixtureProtocol:
    @contextmanager
    def _with_config(
        *,
        logging: bool = config.TRACE_LOGGING,
        quad_nodes: int = config.QUAD_NODES,
        exact_threshold: int = config.EXACT_THRESHOLD,
        max_depth: int = config.MAX_DEPTH,
    ) -> Generator[None, None, None]:
        old_logging = config.TRACE_LOGGING
        old_quad_nodes = config.QUAD_NODES
        old_exact_threshold = config.EXACT_THRESHOLD
        old_max_depth = config.MAX_DEPTH
        config.TRACE_LOGGING = logging
        config.QUAD_NODES = quad_nodes
        config.EXACT_THRESHOLD = exact_threshold
        config.MAX_DEPTH = max_depth
        try:
            yield
        finally:
            config.TRACE_LOGGING = old_logging
            config.QUAD_NODES = old_quad_nodes
            config.EXACT_THRESHOLD = old_exact_threshold
            config.MAX_DEPTH = old_max_depth

    return _with_config


@pytest.fixture(scope="session")
def three_x_y() -> LaurentPoly:
    return parse_poly("3+x+y")


@pytest.fixture(scope="session")
def two_xy2() -> LaurentPoly:
    return parse_poly("2+x*y^2")


@pytest.fixture(scope="session")
def x_minus_2() -> LaurentPoly:
    return parse_poly("x-2")


@pytest.fixture(scope="session")
def five() -> LaurentPoly:
    return parse_poly("5")
