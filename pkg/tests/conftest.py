import pytest

from bindcore import debug_enabled, enable_debug


@pytest.fixture
def debug_mode():
    """Run a test with debug instrumentation on, restoring the old mode."""
    prev = debug_enabled()
    enable_debug(True)
    yield
    enable_debug(prev)
