"""Shared fixtures: small instances reused across the module tests."""

import pytest

from polywalk.instances import (
    gen_cut_cube,
    gen_degenerate_pyramid,
    gen_hypercube,
    gen_simplex,
)


@pytest.fixture(scope="session")
def cube3():
    return gen_hypercube(3)


@pytest.fixture(scope="session")
def simplex3():
    return gen_simplex(3)


@pytest.fixture(scope="session")
def cut_cube3():
    return gen_cut_cube(3)


@pytest.fixture(scope="session")
def pyramid():
    return gen_degenerate_pyramid()
