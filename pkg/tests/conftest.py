"""
Shared pytest fixtures for viscat tests.
"""

from pathlib import Path

import pytest

from viscat import (
    Diagram,
    ModelHandle,
    ProcessModel,
    SpecSource,
    build_diagram,
    load_spec,
    make_map,
    make_set,
)

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


@pytest.fixture
def fixtures_dir() -> Path:
    """Directory holding the spec corpus."""
    return FIXTURES


@pytest.fixture
def golden() -> ProcessModel:
    """Full cohort model: every role bound, every equality holds."""
    return load_spec(fixture_path("golden.viscat"))


@pytest.fixture
def corrupted() -> ProcessModel:
    """Cohort model whose understanding disagrees with read∘render at alan:90."""
    return load_spec(fixture_path("corrupted_understanding.viscat"))


@pytest.fixture
def extension_only() -> ProcessModel:
    """Cohort model without Schema, Layout and Question."""
    return load_spec(fixture_path("extension_only.viscat"))


@pytest.fixture
def scatter_plain() -> ProcessModel:
    return load_spec(fixture_path("scatter_plain.viscat"))


@pytest.fixture
def scatter_decoration() -> ProcessModel:
    return load_spec(fixture_path("scatter_decoration.viscat"))


@pytest.fixture
def scatter_face() -> ProcessModel:
    return load_spec(fixture_path("scatter_face.viscat"))


@pytest.fixture
def redundant_channels() -> ProcessModel:
    """Size and shade both encode one attribute; two reads, one understanding."""
    return load_spec(fixture_path("redundant_channels.viscat"))


@pytest.fixture
def square() -> Diagram:
    """A -> B -> D and A -> C -> D, commuting because D has one element."""
    a = make_set("A", ["a1", "a2"])
    b = make_set("B", ["b1", "b2"])
    c = make_set("C", ["c1", "c2"])
    d = make_set("D", ["d"])
    return build_diagram(
        [a, b, c, d],
        [
            make_map("f", a, b, [("a1", "b1"), ("a2", "b2")]),
            make_map("g", b, d, [("b1", "d"), ("b2", "d")]),
            make_map("h", a, c, [("a1", "c1"), ("a2", "c2")]),
            make_map("k", c, d, [("c1", "d"), ("c2", "d")]),
        ],
    )


@pytest.fixture
def twisted_square() -> Diagram:
    """A -> B -> D and A -> D directly, disagreeing at a2."""
    a = make_set("A", ["a1", "a2"])
    b = make_set("B", ["b1", "b2"])
    d = make_set("D", ["d1", "d2"])
    return build_diagram(
        [a, b, d],
        [
            make_map("f", a, b, [("a1", "b1"), ("a2", "b2")]),
            make_map("g", b, d, [("b1", "d1"), ("b2", "d2")]),
            make_map("direct", a, d, [("a1", "d1"), ("a2", "d1")]),
        ],
    )


@pytest.fixture
def corpus_handle() -> ModelHandle:
    """Handle over the loadable specs of the fixture corpus."""
    names = [
        "golden.viscat",
        "corrupted_understanding.viscat",
        "extension_only.viscat",
        "scatter_face.viscat",
        "bare_diagram.viscat",
    ]
    return ModelHandle.from_sources(
        [SpecSource.from_path(fixture_path(n)) for n in names],
        description="fixture corpus",
    )
