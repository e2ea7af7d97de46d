import pytest
from hypothesis import settings

from helpers import me_dtmc

settings.register_profile("package", deadline=None, derandomize=True)
settings.load_profile("package")


@pytest.fixture
def me():
    """The worked 8-state chain used throughout."""
    return me_dtmc()
