"""Shared expensive fixtures: the cat-map context is built once per session."""

import pytest

from circleforge.fixtures import (
    broken_translation,
    cat_map_suspension,
    prong_fixture,
    square_4prong_fixture,
)
from circleforge.verify import ActionContext


@pytest.fixture(scope="session")
def cat_map():
    return cat_map_suspension()


@pytest.fixture(scope="session")
def cat_map_ctx(cat_map):
    return ActionContext(cat_map.plus, cat_map.minus, cat_map.generators, 4, 4)


@pytest.fixture(scope="session")
def cat_map_ctx_small(cat_map):
    return ActionContext(cat_map.plus, cat_map.minus, cat_map.generators, 3, 3)


@pytest.fixture(scope="session")
def broken():
    return broken_translation()


@pytest.fixture(scope="session")
def broken_ctx(broken):
    return ActionContext(broken.plus, broken.minus, broken.generators, 4, 3)


@pytest.fixture(scope="session")
def prong4():
    return prong_fixture(2)


@pytest.fixture(scope="session")
def prong6():
    return prong_fixture(3)
