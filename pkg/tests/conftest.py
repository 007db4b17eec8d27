import importlib.resources

import pytest


def bundled_problem(name: str) -> str:
    """Filesystem path of a problem file shipped inside the package."""
    return str(importlib.resources.files("fuzzyabduce") / "problems" / name)


@pytest.fixture
def temperature_path() -> str:
    return bundled_problem("temperature.json")


@pytest.fixture
def circuit_path() -> str:
    return bundled_problem("circuit_fault.json")


@pytest.fixture
def causal_path() -> str:
    return bundled_problem("causal_medical.json")
