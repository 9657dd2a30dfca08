import pytest
from mpmath import mp


@pytest.fixture(autouse=True)
def working_precision():
    """Default every test to 256-bit arithmetic, restore afterwards."""
    old = mp.prec
    mp.prec = 256
    yield
    mp.prec = old
