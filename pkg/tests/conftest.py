"""Shared fixtures: encoders are expensive enough to build once per session."""

from __future__ import annotations

import pytest

from nscodec import build_encoder, reference_encoder_qubit


@pytest.fixture(scope="session")
def encoder_d2():
    return build_encoder(2, seed=0)


@pytest.fixture(scope="session")
def encoder_d3():
    return build_encoder(3, seed=0)


@pytest.fixture(scope="session")
def encoder_d4():
    return build_encoder(4, seed=0)


@pytest.fixture(scope="session")
def reference_encoder():
    return reference_encoder_qubit()
