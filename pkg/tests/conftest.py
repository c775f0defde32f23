import pytest


@pytest.fixture
def addr():
    """Build a 20-byte address from a hex prefix, zero-padded."""

    def build(prefix_hex: str) -> bytes:
        return bytes.fromhex((prefix_hex + "0" * 40)[:40])

    return build
