from pathlib import Path

import numpy as np
import pytest

from django_hfbound.codes import HfCode
from django_hfbound.words import Alphabet, HfWord, parse_word


@pytest.fixture
def dna() -> Alphabet:
    return Alphabet(4)


@pytest.fixture
def ternary() -> Alphabet:
    return Alphabet(3)


@pytest.fixture
def word(dna: Alphabet) -> HfWord:
    """ACAG: period 2 at its first three positions, then a fresh symbol."""
    return parse_word("ACAG", dna)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(2024)


# ---------------------------------------------------------------------------
# Codes
# ---------------------------------------------------------------------------


@pytest.fixture
def example_words() -> list[str]:
    return ["0102", "1212", "1020"]


@pytest.fixture
def example_code(ternary: Alphabet, example_words: list[str]) -> HfCode:
    """A (4, 3, 3)_3 HF code."""
    return HfCode(tuple(parse_word(text, ternary) for text in example_words))


@pytest.fixture
def code_file(tmp_path: Path, example_words: list[str]) -> Path:
    path = tmp_path / "example.txt"
    path.write_text("# q=3 n=4\n" + "\n".join(example_words) + "\n", encoding="utf-8")
    return path
