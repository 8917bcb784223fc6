"""Shared test fixtures for uakit."""

import json
from pathlib import Path

import pytest

from uakit.fh import build_fh_model
from uakit.serialization import load_hms

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name):
    return FIXTURES / name


def load_fixture(name):
    return json.loads(fixture_path(name).read_text(encoding="utf-8"))


@pytest.fixture
def aware_of_p():
    """Aware of p only, explicitly knows p at pq."""
    return load_hms(load_fixture("aware-of-p.json"))


@pytest.fixture
def implicit_only():
    """Implicitly knows everything, aware of p only."""
    return load_hms(load_fixture("implicit-only.json"))


@pytest.fixture
def fh_pq():
    """Two worlds agreeing on p, told apart by q, one agent aware of p only."""
    return build_fh_model(
        vocab=frozenset({"p", "q"}),
        agents=1,
        worlds=["w1", "w2"],
        valuation={"p": ["w1", "w2"], "q": ["w1"]},
        relations=[[["w1", "w2"]]],
        awareness=[{"w1": ["p"], "w2": ["p"]}],
        name="fh_pq",
    )


@pytest.fixture
def fh_aware():
    """Two worlds, fully aware agent who cannot tell them apart."""
    return build_fh_model(
        vocab=frozenset({"p"}),
        agents=1,
        worlds=["w1", "w2"],
        valuation={"p": ["w1"]},
        relations=[[["w1", "w2"]]],
        awareness=[{"w1": ["p"], "w2": ["p"]}],
        name="fh_aware",
    )
