import pytest

from avoidsim.behavior import default_library
from avoidsim.proxemics import load_profiles


@pytest.fixture(scope="session")
def profiles():
    return load_profiles()


@pytest.fixture(scope="session")
def library():
    return default_library()
