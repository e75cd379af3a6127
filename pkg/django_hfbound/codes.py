"""HF codes: minimum distance, per-code sphere statistics and greedy construction."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Literal

import numpy as np
import numpy.typing as npt

from .exceptions import (
    BadParameters,
    EmptyCode,
    EmptyDistance,
    HfError,
    LengthMismatch,
    RadiusOutOfRange,
)
from .spheres import cumulative_sum
from .words import (
    DEFAULT_BUDGET,
    Alphabet,
    HfWord,
    check_budget,
    format_word,
    hf_space_array,
    parse_symbols,
    validate_hf,
)

logger = logging.getLogger(__name__)

GreedyOrder = Literal["lexicographic", "seeded-shuffle"]

DISTANCE_CHUNK_ROWS = 256


@dataclass(frozen=True)
class HfCode:
    """Distinct HF words sharing a length and an alphabet, in insertion order."""

    words: tuple[HfWord, ...]

    def __post_init__(self) -> None:
        if not self.words:
            raise EmptyCode("a code needs at least one word")
        first = self.words[0]
        for word in self.words[1:]:
            if word.n != first.n or word.alphabet != first.alphabet:
                raise LengthMismatch(
                    f"codeword {word} does not match length {first.n} over q={first.q}"
                )
        if len(set(self.words)) != len(self.words):
            raise BadParameters("codewords must be distinct")

    @classmethod
    def from_symbols(
        cls, words: Iterable[Iterable[int]], alphabet: Alphabet
    ) -> HfCode:
        return cls(tuple(validate_hf(symbols, alphabet) for symbols in words))

    @property
    def alphabet(self) -> Alphabet:
        return self.words[0].alphabet

    @property
    def q(self) -> int:
        return self.alphabet.q

    @property
    def n(self) -> int:
        return self.words[0].n

    def __len__(self) -> int:
        return len(self.words)

    @cached_property
    def matrix(self) -> npt.NDArray[np.int16]:
        return np.array([w.symbols for w in self.words], dtype=np.int16)

    @cached_property
    def closest_pair(self) -> tuple[int, int, int]:
        """``(distance, i, j)`` of the first pair ``i < j`` at minimum distance."""
        if len(self.words) < 2:
            raise EmptyDistance(len(self.words))
        return _closest_pair(self.matrix)


@dataclass(frozen=True)
class CodeSphereStats:
    radius: int
    sums: tuple[int, ...]
    c_min: HfWord
    c_max: HfWord
    w_min: int
    w_max: int
    u_bar: Fraction


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    index: int | None = None


@dataclass(frozen=True)
class CodeVerification:
    """Outcome of checking a word listing against a claimed ``(n, M, d)_q``."""

    q: int
    n: int
    size: int
    min_distance: int | None
    witness: tuple[int, int] | None
    violations: tuple[Violation, ...] = field(default=())

    @property
    def accepted(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class CodeFile:
    q: int
    n: int
    words: tuple[tuple[int, ...], ...]


def _closest_pair(matrix: npt.NDArray[np.int16]) -> tuple[int, int, int]:
    rows = matrix.shape[0]
    best = (matrix.shape[1] + 1, 0, 0)
    upper = np.arange(rows)
    for start in range(0, rows, DISTANCE_CHUNK_ROWS):
        block = matrix[start : start + DISTANCE_CHUNK_ROWS]
        distances = (block[:, None, :] != matrix[None, :, :]).sum(axis=2)
        # only pairs i < j
        mask = upper[None, :] <= (start + np.arange(block.shape[0]))[:, None]
        distances[mask] = matrix.shape[1] + 1
        flat = int(np.argmin(distances))
        i, j = divmod(flat, rows)
        candidate = (int(distances[i, j]), start + i, j)
        if candidate[0] < best[0]:
            best = candidate
    return best


def min_distance(code: HfCode) -> int:
    return code.closest_pair[0]


def code_sphere_stats(code: HfCode, radius: int) -> CodeSphereStats:
    """Cumulative sphere sums ``W_HF(c, radius)`` of every codeword.

    Ties for ``c_min``/``c_max`` go to the lexicographically smallest word.
    """
    if not 0 <= radius <= code.n:
        raise RadiusOutOfRange(f"radius must lie in 0..{code.n}, got {radius}")
    sums = tuple(cumulative_sum(word, radius) for word in code.words)
    by_sum = sorted(zip(sums, code.words))
    w_min, c_min = by_sum[0]
    w_max = by_sum[-1][0]
    c_max = min(word for total, word in by_sum if total == w_max)
    return CodeSphereStats(
        radius=radius,
        sums=sums,
        c_min=c_min,
        c_max=c_max,
        w_min=w_min,
        w_max=w_max,
        u_bar=Fraction(sum(sums), len(sums)),
    )


def _scan_order(
    size: int, order: GreedyOrder, seed: int
) -> npt.NDArray[np.int64]:
    if order == "lexicographic":
        return np.arange(size)
    if order == "seeded-shuffle":
        return np.random.default_rng(seed).permutation(size)
    raise BadParameters(f"unknown scan order {order!r}")


def _greedy_rows(
    space: npt.NDArray[np.int16], indices: npt.NDArray[np.int64], d: int, limit: int
) -> list[int]:
    chosen = np.empty((min(limit, space.shape[0]), space.shape[1]), dtype=space.dtype)
    accepted: list[int] = []
    for index in indices:
        if len(accepted) >= limit:
            break
        candidate = space[index]
        count = len(accepted)
        if count and ((chosen[:count] != candidate).sum(axis=1) < d).any():
            continue
        chosen[count] = candidate
        accepted.append(int(index))
    return accepted


def greedy_construct(
    alphabet: Alphabet,
    n: int,
    d: int,
    order: GreedyOrder = "lexicographic",
    *,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> HfCode:
    """Scan C_{q,n} and keep every word at distance at least ``d`` from those kept."""
    if not 1 <= d <= n:
        raise BadParameters(f"distance must satisfy 1 <= d <= n={n}, got {d}")
    size = check_budget(alphabet, n, budget)
    space = hf_space_array(alphabet, n)
    indices = _scan_order(size, order, seed)
    if d == 1:
        accepted = [int(i) for i in indices]
    else:
        accepted = _greedy_rows(space, indices, d, size)
    logger.info(
        "greedy %s scan kept %d of %d words (q=%d n=%d d=%d)",
        order,
        len(accepted),
        size,
        alphabet.q,
        n,
        d,
    )
    return HfCode.from_symbols((space[i] for i in accepted), alphabet)


def random_code(
    alphabet: Alphabet,
    n: int,
    size: int,
    rng: np.random.Generator,
    *,
    distance: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> HfCode:
    """Up to ``size`` random words of C_{q,n}, pairwise at least ``distance`` apart.

    Words are returned in lexicographic order.
    """
    total = check_budget(alphabet, n, budget)
    if not 1 <= size <= total:
        raise BadParameters(f"code size must lie in 1..{total}, got {size}")
    space = hf_space_array(alphabet, n)
    accepted = _greedy_rows(space, rng.permutation(total), distance, size)
    return HfCode.from_symbols((space[i] for i in sorted(accepted)), alphabet)


def covers_space(code: HfCode, radius: int, *, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether every word of C_{q,n} lies within ``radius`` of some codeword."""
    check_budget(code.alphabet, code.n, budget)
    space = hf_space_array(code.alphabet, code.n)
    for start in range(0, space.shape[0], DISTANCE_CHUNK_ROWS):
        block = space[start : start + DISTANCE_CHUNK_ROWS]
        nearest = (block[:, None, :] != code.matrix[None, :, :]).sum(axis=2).min(axis=1)
        if (nearest > radius).any():
            return False
    return True


def spheres_disjoint(
    code: HfCode, r1: int, r2: int, *, budget: int = DEFAULT_BUDGET
) -> bool:
    """Whether ``H_r1(c1)`` and ``H_r2(c2)`` are disjoint for distinct codewords."""
    check_budget(code.alphabet, code.n, budget)
    space = hf_space_array(code.alphabet, code.n)
    distances = (code.matrix[:, None, :] != space[None, :, :]).sum(axis=2)
    first = distances == r1
    second = distances == r2
    # overlaps[i, j] counts words in both H_r1(c_i) and H_r2(c_j)
    overlaps = first.astype(np.int64) @ second.T.astype(np.int64)
    np.fill_diagonal(overlaps, 0)
    return not overlaps.any()


def verify_code(
    words: Sequence[Sequence[int]],
    *,
    q: int,
    n: int,
    size: int | None = None,
    d: int | None = None,
) -> CodeVerification:
    """Check a listing against a claimed ``(n, size, d)_q`` code.

    ``d`` is read as a lower bound on the minimum distance. Every problem is
    collected as a :class:`Violation`; nothing is raised for a bad listing.
    """
    alphabet = Alphabet(q)
    violations: list[Violation] = []
    valid: list[HfWord] = []
    seen: dict[HfWord, int] = {}
    for index, symbols in enumerate(words):
        if len(symbols) != n:
            violations.append(
                Violation(
                    "length", f"word has length {len(symbols)}, expected {n}", index
                )
            )
            continue
        try:
            word = validate_hf(symbols, alphabet)
        except HfError as e:
            violations.append(Violation("not_hf", str(e), index))
            continue
        if word in seen:
            violations.append(
                Violation("duplicate", f"repeats word {seen[word]} ({word})", index)
            )
            continue
        seen[word] = index
        valid.append(word)

    if size is not None and len(words) != size:
        violations.append(
            Violation("size", f"listing has {len(words)} words, claimed {size}")
        )

    distance: int | None = None
    witness: tuple[int, int] | None = None
    if len(valid) >= 2:
        code = HfCode(tuple(valid))
        distance, i, j = code.closest_pair
        witness = (seen[valid[i]], seen[valid[j]])
    if d is not None:
        if distance is None:
            violations.append(Violation("distance", "fewer than two valid words"))
        elif distance < d:
            assert witness is not None  # nosec B101
            violations.append(
                Violation(
                    "distance",
                    f"words {witness[0]} and {witness[1]} are at distance "
                    f"{distance} < {d}",
                )
            )

    return CodeVerification(
        q=q,
        n=n,
        size=len(words),
        min_distance=distance,
        witness=witness,
        violations=tuple(violations),
    )


def parse_code_file(text: str) -> CodeFile:
    """Read a ``# q=<q> n=<n>`` header followed by one word per line."""
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines or not lines[0].startswith("#"):
        raise BadParameters("code file must start with a '# q=<q> n=<n>' header")
    header: dict[str, int] = {}
    for item in lines[0].lstrip("#").split():
        key, _, value = item.partition("=")
        try:
            header[key] = int(value)
        except ValueError as e:
            raise BadParameters(f"malformed header field {item!r}") from e
    if "q" not in header or "n" not in header:
        raise BadParameters("code file header needs both q and n")
    alphabet = Alphabet(header["q"])
    words = tuple(
        parse_symbols(line, alphabet) for line in lines[1:] if not line.startswith("#")
    )
    return CodeFile(q=header["q"], n=header["n"], words=words)


def format_code_file(code: HfCode, dna: bool = False) -> str:
    lines = [f"# q={code.q} n={code.n}"]
    lines.extend(format_word(word, dna=dna) for word in code.words)
    return "\n".join(lines) + "\n"
