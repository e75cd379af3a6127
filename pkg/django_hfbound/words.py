"""Homopolymer-free words and the operations defined directly on them.

Symbols are the integers ``0..q-1``. For ``q = 4`` a word can also be written
with the DNA letters ``A, C, G, T`` (mapped to ``0, 1, 2, 3``).
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np
import numpy.typing as npt

from .exceptions import (
    BadEll,
    BadParameters,
    BudgetExceeded,
    EmptyWord,
    LengthMismatch,
    OutOfRange,
    RepeatAt,
)

DNA_LETTERS = "ACGT"
DEFAULT_BUDGET = 1_000_000


@dataclass(frozen=True, order=True)
class Alphabet:
    q: int

    def __post_init__(self) -> None:
        if self.q < 2:
            raise BadParameters(f"alphabet size must be at least 2, got {self.q}")

    @property
    def symbols(self) -> range:
        return range(self.q)


@dataclass(frozen=True, order=True)
class HfWord:
    """A sequence over ``alphabet`` with no two equal adjacent symbols.

    Instances compare lexicographically by their symbols. Construct them
    through :func:`validate_hf` or :func:`parse_word`.
    """

    symbols: tuple[int, ...]
    alphabet: Alphabet

    def __post_init__(self) -> None:
        if not self.symbols:
            raise EmptyWord()
        q = self.alphabet.q
        for index, symbol in enumerate(self.symbols):
            if not 0 <= symbol < q:
                raise OutOfRange(index, symbol, q)
        for index in range(len(self.symbols) - 1):
            if self.symbols[index] == self.symbols[index + 1]:
                raise RepeatAt(index)

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def q(self) -> int:
        return self.alphabet.q

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True)
class CharacteristicSequence:
    """Indicator of equal symbols ``ell`` positions apart.

    ``bits`` has the length of the word. With 1-based positions, bit ``i + 1``
    is set when symbols ``i`` and ``i + ell`` agree; bit 1 and every bit past
    ``n - ell + 1`` are always 0.
    """

    ell: int
    bits: tuple[int, ...]

    def at(self, position: int) -> int:
        """Bit at a 1-based ``position``."""
        return self.bits[position - 1]

    def window_sum(self, first: int, last: int) -> int:
        """Sum of the bits at 1-based positions ``first..last``."""
        if last < first:
            return 0
        return sum(self.bits[first - 1 : last])

    def __str__(self) -> str:
        return "".join(str(bit) for bit in self.bits)


def validate_hf(symbols: Iterable[int], alphabet: Alphabet) -> HfWord:
    return HfWord(tuple(int(s) for s in symbols), alphabet)


def count_hf(alphabet: Alphabet, n: int) -> int:
    """Size of C_{q,n}: ``q * (q - 1) ** (n - 1)``."""
    if n < 1:
        raise BadParameters(f"length must be positive, got {n}")
    return alphabet.q * (alphabet.q - 1) ** (n - 1)


def check_budget(alphabet: Alphabet, n: int, budget: int) -> int:
    """Return ``|C_{q,n}|`` or raise when an exhaustive scan would exceed ``budget``."""
    size = count_hf(alphabet, n)
    if size > budget:
        raise BudgetExceeded(size, budget)
    return size


def hf_tuples(
    alphabet: Alphabet, n: int, prefix: tuple[int, ...] = ()
) -> Iterator[tuple[int, ...]]:
    """Raw symbol tuples of C_{q,n} starting with ``prefix``, in lexicographic order."""
    q = alphabet.q
    if n < 1:
        raise BadParameters(f"length must be positive, got {n}")
    if len(prefix) > n:
        raise BadParameters(f"prefix of length {len(prefix)} is longer than {n}")
    if not prefix:
        for first in range(q):
            yield from hf_tuples(alphabet, n, (first,))
        return
    validate_hf(prefix, alphabet)
    # Step c picks the c-th symbol different from the previous one, so the
    # product order over steps is the lexicographic order over words.
    for steps in product(range(q - 1), repeat=n - len(prefix)):
        word = list(prefix)
        previous = prefix[-1]
        for step in steps:
            previous = step if step < previous else step + 1
            word.append(previous)
        yield tuple(word)


def enumerate_hf(
    alphabet: Alphabet, n: int, prefix: tuple[int, ...] = ()
) -> Iterator[HfWord]:
    """Every word of C_{q,n} starting with ``prefix``, once, in lexicographic order."""
    for symbols in hf_tuples(alphabet, n, prefix):
        yield HfWord(symbols, alphabet)


def hamming_distance(a: HfWord, b: HfWord) -> int:
    if a.n != b.n or a.alphabet != b.alphabet:
        raise LengthMismatch(
            f"cannot compare a length-{a.n} word over q={a.q} "
            f"with a length-{b.n} word over q={b.q}"
        )
    return sum(x != y for x, y in zip(a.symbols, b.symbols))


def characteristic_sequence(a: HfWord, ell: int) -> CharacteristicSequence:
    n = a.n
    if not 1 < ell < n:
        raise BadEll(f"ell must satisfy 1 < ell < {n}, got {ell}")
    bits = [0] * n
    # 0-based index i of the word sets the 0-based bit i + 1.
    for i in range(n - ell):
        if a.symbols[i] == a.symbols[i + ell]:
            bits[i + 1] = 1
    return CharacteristicSequence(ell=ell, bits=tuple(bits))


def period_word(alphabet: Alphabet, n: int, period: int) -> HfWord:
    """The word ``0, 1, ..., period-1, 0, 1, ...`` of length ``n``."""
    if not 2 <= period <= alphabet.q:
        raise BadParameters(
            f"period must be between 2 and q={alphabet.q}, got {period}"
        )
    return HfWord(tuple(i % period for i in range(n)), alphabet)


def format_word(word: HfWord, dna: bool = False) -> str:
    if dna:
        if word.q != 4:
            raise BadParameters("DNA rendering needs q = 4")
        return "".join(DNA_LETTERS[s] for s in word.symbols)
    if word.q <= 10:
        return "".join(str(s) for s in word.symbols)
    return ",".join(str(s) for s in word.symbols)


def parse_symbols(text: str, alphabet: Alphabet) -> tuple[int, ...]:
    """Read digits, comma-separated integers, or (for q = 4) DNA letters.

    The symbols are not checked against the HF constraint.
    """
    text = text.strip()
    if not text:
        raise EmptyWord()
    if alphabet.q == 4 and set(text.upper()) <= set(DNA_LETTERS):
        return tuple(DNA_LETTERS.index(c) for c in text.upper())
    try:
        if "," in text or alphabet.q > 10:
            symbols = [int(part) for part in text.split(",")]
        else:
            symbols = [int(c) for c in text]
    except ValueError as e:
        raise BadParameters(f"cannot parse word {text!r}: {e}") from e
    return tuple(symbols)


def parse_word(text: str, alphabet: Alphabet) -> HfWord:
    return validate_hf(parse_symbols(text, alphabet), alphabet)


@lru_cache(maxsize=16)
def hf_space_array(alphabet: Alphabet, n: int) -> npt.NDArray[np.int16]:
    """All of C_{q,n} as a read-only matrix, one word per row in lexicographic order."""
    matrix = np.array(list(hf_tuples(alphabet, n)), dtype=np.int16).reshape(-1, n)
    matrix.flags.writeable = False
    return matrix


def code_rate_cap(q: int) -> float:
    """Asymptotic rate cap of HF codes, ``log_q(q - 1)``."""
    return math.log(q - 1, q)
