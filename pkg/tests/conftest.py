"""Shared test fixtures."""

import json
import os
import tempfile
from collections.abc import Callable, Generator
from fractions import Fraction
from pathlib import Path
from typing import Any

import pytest

from cnpd.cli.registry import reset_registry
from cnpd.config import CONFIG_PATH_ENV, PRECISION_ENV, reset_config
from cnpd.main import configure_logging
from cnpd.models.kernel import KernelSpec


def make_spec(b: list[str | int], n: list[int]) -> KernelSpec:
    """KernelSpec from "p/q" weight strings."""
    return KernelSpec(b=tuple(Fraction(x) for x in b), n=tuple(n))


@pytest.fixture
def temp_config_file() -> Generator[str, None, None]:
    """Create a temporary config file for testing.

    Yields:
        Path to temporary config file.
    """
    config_content = """
precision:
  bits: 96
  output_digits: 20

tolerances:
  membership: 1.0e-12

circuits:
  max_dimension: 8

logging:
  level: debug
  format: text
"""
    with tempfile.NamedTemporaryFile(mode="w", suffix=".yaml", delete=False) as f:
        f.write(config_content)
        temp_path = f.name

    yield temp_path

    # Cleanup
    os.unlink(temp_path)


@pytest.fixture(autouse=True)
def reset_state(monkeypatch: pytest.MonkeyPatch) -> Generator[None, None, None]:
    """Reset global state before and after each test."""
    monkeypatch.delenv(CONFIG_PATH_ENV, raising=False)
    monkeypatch.delenv(PRECISION_ENV, raising=False)
    configure_logging(level="warning")
    reset_config()
    reset_registry()
    yield
    reset_config()
    reset_registry()


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Any], str]:
    """Write a JSON document under tmp_path and return its path."""

    def write(name: str, document: Any) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def spec_236() -> KernelSpec:
    """b = (1/3, 1/3, 1/3), n = (2, 3, 6): one circuit 2 * 3 = 6."""
    return make_spec(["1/3", "1/3", "1/3"], [2, 3, 6])


@pytest.fixture
def generating_pair() -> tuple[KernelSpec, KernelSpec]:
    """12 = 2^2 * 3 against 18 = 2 * 3^2, isometric after swapping 2 and 3."""
    return (
        make_spec(["1/2", "1/4", "1/4"], [2, 3, 12]),
        make_spec(["1/4", "1/2", "1/4"], [2, 3, 18]),
    )
