"""Shared test fixtures built on the helpers in support.py."""

from __future__ import annotations

import pytest

import fluxjump as fj
from support import make_family_table


@pytest.fixture(scope="session")
def family_table() -> dict[str, fj.FluxFamily]:
    return make_family_table()
