from pathlib import Path

import pytest

from app.grammar import load_grammar, parse_grammar

ROOT = Path(__file__).resolve().parent.parent
GRAMMARS = ROOT / "data" / "grammars"
SAMPLES = ROOT / "data" / "samples"


@pytest.fixture(scope="session")
def grammar_dir() -> Path:
    return GRAMMARS


@pytest.fixture(scope="session")
def sample_dir() -> Path:
    return SAMPLES


@pytest.fixture(scope="session")
def tiny():
    return load_grammar(GRAMMARS / "tiny.peg")


@pytest.fixture(scope="session")
def tiny_labeled():
    return load_grammar(GRAMMARS / "tiny-labeled.peg")


@pytest.fixture(scope="session")
def tiny_labeled_follow():
    return load_grammar(GRAMMARS / "tiny-labeled-follow.peg")


@pytest.fixture(scope="session")
def llstar():
    return load_grammar(GRAMMARS / "llstar.peg")


@pytest.fixture(scope="session")
def factorial() -> bytes:
    return (SAMPLES / "factorial.tiny").read_bytes()


@pytest.fixture
def until_pos(factorial) -> int:
    """Offset of 'until' on line 6 of factorial.tiny."""
    return factorial.index(b"until")


@pytest.fixture
def grammar():
    """Parse grammar text given one rule per argument."""
    def build(*lines: str, start=None):
        return parse_grammar("\n".join(lines), start)
    return build
