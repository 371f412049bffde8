"""Shared fixtures and small instance builders."""

from __future__ import annotations

import random

import pytest

from pairstable.instance import GeneratorParams, Instance, generate_instance
from pairstable.prefs import OrderClass


def make(men, women, edges, prefs=None) -> Instance:
    return Instance.build(men, women, edges, prefs or {})


def example1() -> Instance:
    """Three strict men sharing one woman whose comparisons form a cycle."""
    return make(
        ["u1", "u2", "u3"],
        ["w"],
        [("u1", "w"), ("u2", "w"), ("u3", "w")],
        {"w": [("u1", "u2", "<"), ("u2", "u3", "<"), ("u3", "u1", "<")]},
    )


def random_instance(seed: int, men_class, women_class, max_men=5, max_women=5, density=None) -> Instance:
    rng = random.Random(seed)
    params = GeneratorParams(
        rng.randint(1, max_men),
        rng.randint(1, max_women),
        rng.uniform(0.3, 1.0) if density is None else density,
        OrderClass(men_class),
        OrderClass(women_class),
        seed,
    )
    return generate_instance(params)


@pytest.fixture
def ex1() -> Instance:
    return example1()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
