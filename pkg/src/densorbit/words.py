"""The enumeration of binary and ternary words driving the construction.

Items are produced in rounds. Round ``r`` lists every binary word of length
1..r (shortest first, then lexicographic) in the w-slots and every ternary
word of length 1..r in the v-slots. The ternary list is always the longer
one, so the binary list is cycled to match. A word of length ``L`` shows up
in every round ``r >= L``, hence infinitely often.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exact_arith import Word, to_digits


@dataclass(frozen=True)
class EnumerationItem:
    index: int
    w: Word
    v: Word
    gap_bound: int


def gap_bound(w: Word, v: Word) -> int:
    """``floor(|w| + (2 + |v|) * log2(3)) + 2`` without floating point."""
    return (2 ** len(w) * 3 ** (2 + len(v))).bit_length() - 1 + 2


def words_up_to(base: int, length: int) -> int:
    """Number of nonempty words of length <= ``length``."""
    return (base ** (length + 1) - base) // (base - 1)


def word_at(base: int, j: int) -> Word:
    """The ``j``-th (0-based) nonempty word in length-then-lexicographic order."""
    length = 1
    while j >= base**length:
        j -= base**length
        length += 1
    return Word(base, to_digits(j, base, length))


@lru_cache(maxsize=4096)
def _locate(i: int) -> tuple[int, int]:
    """Map a 1-based item index to (round, offset within round)."""
    j = i - 1
    r = 1
    while True:
        size = words_up_to(3, r)
        if j < size:
            return r, j
        j -= size
        r += 1


def item_at(i: int) -> EnumerationItem:
    if i < 1:
        raise ValueError("enumeration index starts at 1")
    r, j = _locate(i)
    v = word_at(3, j)
    w = word_at(2, j % words_up_to(2, r))
    return EnumerationItem(i, w, v, gap_bound(w, v))


def round_bounds(r: int) -> tuple[int, int]:
    """First and last item index (inclusive) belonging to round ``r``."""
    start = 1 + sum(words_up_to(3, q) for q in range(1, r))
    return start, start + words_up_to(3, r) - 1
