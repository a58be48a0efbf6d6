from __future__ import annotations

import pytest

from cehom.ce import Surface

SURFACES = {
    "torus": Surface.torus(),
    "punctured1": Surface.punctured(1),
    "punctured2": Surface.punctured(2),
}


@pytest.fixture
def torus() -> Surface:
    return Surface.torus()
