"""Exact cylinder arithmetic over bases 2 and 3.

A word ``u`` over base ``b`` names the half-open interval of points whose
base-``b`` expansion starts with ``u``::

    [u]_b = [a / b**n, (a + 1) / b**n),   a = int(u, b),  n = len(u)

Every comparison here is an integer cross-multiplication. Nothing touches
floating point, so results are bit-identical between runs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotContainable

BASES = (2, 3)
_DIGITS = "012"


def _check_base(base: int) -> None:
    if base not in BASES:
        raise ValueError(f"base must be 2 or 3, got {base!r}")


@dataclass(frozen=True)
class Word:
    """A finite digit string over base 2 or 3, most significant digit first."""

    base: int
    digits: str = ""

    def __post_init__(self):
        _check_base(self.base)
        allowed = _DIGITS[: self.base]
        for d in self.digits:
            if d not in allowed:
                raise ValueError(f"digit {d!r} not valid in base {self.base}")

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return self.digits

    def __add__(self, other: "Word") -> "Word":
        if other.base != self.base:
            raise ValueError("cannot concatenate words of different bases")
        return Word(self.base, self.digits + other.digits)

    def value(self) -> int:
        return int(self.digits, self.base) if self.digits else 0


@dataclass(frozen=True)
class Cylinder:
    """The interval ``[index / base**order, (index + 1) / base**order)``."""

    base: int
    order: int
    index: int

    def __post_init__(self):
        _check_base(self.base)
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        if not 0 <= self.index < self.base ** self.order:
            raise ValueError(
                f"index {self.index} out of range for base {self.base} order {self.order}"
            )

    @property
    def scale(self) -> int:
        return self.base ** self.order

    def extend(self, word: Word) -> "Cylinder":
        """Return the subcylinder ``[self, word]`` (same base)."""
        if word.base != self.base:
            raise ValueError("word base differs from cylinder base")
        n = len(word)
        return Cylinder(self.base, self.order + n, self.index * self.base**n + word.value())


def to_digits(value: int, base: int, length: int) -> str:
    """Fixed-width base-``base`` representation of ``value``."""
    if base == 2:
        return format(value, "b").zfill(length) if length else ""
    out = []
    for _ in range(length):
        value, d = divmod(value, base)
        out.append(_DIGITS[d])
    return "".join(reversed(out))


def word_to_cylinder(w: Word) -> Cylinder:
    return Cylinder(w.base, len(w), w.value())


def cylinder_to_word(c: Cylinder) -> Word:
    return Word(c.base, to_digits(c.index, c.base, c.order))


def contains(outer: Cylinder, inner: Cylinder) -> bool:
    """True iff the interval of ``inner`` lies inside the interval of ``outer``.

    Bases may differ.
    """
    so, si = outer.scale, inner.scale
    return outer.index * si <= inner.index * so and (inner.index + 1) * so <= (outer.index + 1) * si


def min_inner_order(outer_order: int, outer_base: int, inner_base: int, margin: int) -> int:
    """Order of the inner grid fine enough to fit inside any outer cylinder.

    Returns the unique ``rho`` with

        margin * inner_base**-rho  <=  outer_base**-outer_order  <  margin * inner_base**-(rho - 1)

    i.e. the smallest ``rho`` with ``inner_base**rho >= margin * outer_base**outer_order``.
    Since ``margin >= 2`` the outer interval spans at least two inner cells, so a
    whole inner cell always fits.
    """
    if margin not in (2, 3):
        raise ValueError(f"margin must be 2 or 3, got {margin!r}")
    _check_base(outer_base)
    _check_base(inner_base)
    if outer_base == inner_base:
        raise ValueError("outer and inner bases must differ")
    if outer_order < 0:
        raise ValueError("outer_order must be nonnegative")
    target = margin * outer_base**outer_order
    # bit-length estimate, then correct by at most a step or two
    rho = max(0, (target.bit_length() - 1) * 1000 // (1000 if inner_base == 2 else 1585))
    power = inner_base**rho
    while power < target:
        power *= inner_base
        rho += 1
    while rho > 0 and power // inner_base >= target:
        power //= inner_base
        rho -= 1
    return rho


def find_inner_cylinder(outer: Cylinder, inner_base: int, inner_order: int) -> Cylinder:
    """Leftmost base-``inner_base`` cylinder of ``inner_order`` inside ``outer``.

    Picking the smallest admissible index keeps the construction reproducible.
    """
    _check_base(inner_base)
    si, so = inner_base**inner_order, outer.scale
    # smallest a with a / si >= outer.index / so
    a = -((-outer.index * si) // so)
    if a >= si or (a + 1) * so > (outer.index + 1) * si:
        raise NotContainable(outer, inner_base, inner_order)
    return Cylinder(inner_base, inner_order, a)


def ternary_prefix_of_cylinder(c: Cylinder, length: int) -> Optional[Word]:
    """Ternary word of ``length`` digits shared by every point of the binary cylinder ``c``.

    Returns ``None`` (undetermined) when ``c`` straddles a ternary grid point
    of that order.
    """
    if c.base != 2:
        raise ValueError("expected a base-2 cylinder")
    if length < 0:
        raise ValueError("length must be nonnegative")
    s3, s2 = 3**length, c.scale
    u = (c.index * s3) // s2
    if (c.index + 1) * s3 > (u + 1) * s2:
        return None
    return Word(3, to_digits(u, 3, length))
