import pytest

from hquant.core import PhysicalSetup


@pytest.fixture
def natural():
    return PhysicalSetup.natural()
