from __future__ import annotations

import pathlib

import pytest
from hypothesis import strategies as st

from ppml.core import PointedStructure, Signature, load_structure

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
SIG_S = Signature({"E": 2, "S": 2})
SIG_EPS = Signature({"E": 2, "p": 1, "S": 2})

ACCEPTANCE_LINES: list[str] = []


def struct_a() -> PointedStructure:
    return load_structure((FIXTURES / "struct_a.json").read_text())


def struct_b() -> PointedStructure:
    return load_structure((FIXTURES / "struct_b.json").read_text())


@pytest.fixture
def A() -> PointedStructure:
    return struct_a()


@pytest.fixture
def B() -> PointedStructure:
    return struct_b()


@st.composite
def structures(draw, sig: Signature = SIG_EPS, max_n: int = 5, min_n: int = 1):
    n = draw(st.integers(min_n, max_n))
    rels = {}
    for name, r in sig.items():
        tup = st.tuples(*[st.integers(0, n - 1)] * r)
        rels[name] = draw(st.lists(tup, max_size=2 * n + 2))
    return PointedStructure(sig, n, rels, draw(st.integers(0, n - 1)))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
