import pytest
from fastapi.testclient import TestClient

from phonocoach_bridge import create_app


@pytest.fixture(scope="module")
def client() -> TestClient:
    return TestClient(create_app(), raise_server_exceptions=False)
