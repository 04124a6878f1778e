"""Nested 2-adic / 3-adic cylinder construction of the Cantor-like set E_m.

Step ``k`` appends a constrained block of ``n_k = ell_k * m`` binary digits
and the word ``w_k`` to the current binary cylinder, descends into the
leftmost ternary cylinder of order ``rho_k`` inside it, appends ``v_k`` in
base 3, then descends into the leftmost binary cylinder of order ``t_k``
inside that. The binary digits added by the last descent are the gap tail
``v~_k``; ``p_k = |w_k| + |v~_k|``.

Positions are 1-indexed, matching the digit labels ``a_1 a_2 ...``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

from .errors import CapExceeded
from .exact_arith import (
    Cylinder,
    Word,
    contains,
    cylinder_to_word,
    find_inner_cylinder,
    min_inner_order,
    ternary_prefix_of_cylinder,
)
from .words import EnumerationItem, item_at

ItemSource = Callable[[int], EnumerationItem]


@dataclass(frozen=True, eq=False)
class Schedule:
    """Block lengths: ``ell(k)`` sub-blocks of length ``m`` at step ``k``.

    ``label`` is the descriptor used in records (``"default"`` or ``"test:..."``).
    """

    m: int
    ell_rule: Callable[[int], int]
    label: str
    items: ItemSource = item_at

    def ell(self, k: int) -> int:
        return self.ell_rule(k)

    def n(self, k: int) -> int:
        return self.ell(k) * self.m

    def item(self, k: int) -> EnumerationItem:
        return self.items(k)


def _check_m(m: int) -> None:
    if not isinstance(m, int) or m < 2:
        raise ValueError("m must be ≥ 2")


def default_schedule(m: int, items: ItemSource = item_at) -> Schedule:
    """``ell_k = k * G_k`` with ``G_k`` the running sum of gap bounds.

    Then ``G_k / n_k = 1 / (m k)``, which tends to zero as required.
    """
    _check_m(m)
    partial = [0]

    def ell(k: int) -> int:
        if k < 1:
            raise ValueError("steps start at k = 1")
        while len(partial) <= k:
            partial.append(partial[-1] + items(len(partial)).gap_bound)
        return k * partial[k]

    return Schedule(m, ell, "default", items)


def test_schedule(m: int, ells: Sequence[int], items: ItemSource = item_at) -> Schedule:
    """Small fixed block counts for exhaustive checks.

    ``ells[k-1]`` is used at step ``k``; the last entry repeats. These
    schedules break the vanishing gap-ratio condition on purpose and exist
    only so that level sets stay small enough to enumerate.
    """
    _check_m(m)
    ells = tuple(int(x) for x in ells)
    if not ells or min(ells) < 1:
        raise ValueError("test schedule needs positive block counts")

    def ell(k: int) -> int:
        if k < 1:
            raise ValueError("steps start at k = 1")
        return ells[min(k, len(ells)) - 1]

    return Schedule(m, ell, "test:" + ",".join(map(str, ells)), items)


def parse_schedule(m: int, descriptor: str) -> Schedule:
    if descriptor == "default":
        return default_schedule(m)
    if descriptor.startswith("test:"):
        try:
            ells = [int(x) for x in descriptor[5:].split(",")]
        except ValueError:
            raise ValueError(f"bad schedule descriptor {descriptor!r}") from None
        return test_schedule(m, ells)
    raise ValueError(f"bad schedule descriptor {descriptor!r}")


def forced_positions(m: int, ell: int) -> list[int]:
    """1-indexed positions forced to 1 inside a block of ``ell`` sub-blocks."""
    out = []
    for j in range(ell):
        out.append(j * m + 1)
        out.append(j * m + m)
    return out


def free_positions(m: int, ell: int) -> list[int]:
    forced = set(forced_positions(m, ell))
    return [i for i in range(1, ell * m + 1) if i not in forced]


@dataclass(frozen=True)
class ConstrainedBlock:
    m: int
    digits: Word

    def __post_init__(self):
        if self.digits.base != 2:
            raise ValueError("blocks are binary")
        n = len(self.digits)
        if n == 0 or n % self.m:
            raise ValueError(f"block length {n} is not a positive multiple of m={self.m}")
        s = self.digits.digits
        for pos in forced_positions(self.m, n // self.m):
            if s[pos - 1] != "1":
                raise ValueError(f"block digit at position {pos} must be 1")

    @property
    def ell(self) -> int:
        return len(self.digits) // self.m

    @classmethod
    def from_free(cls, m: int, ell: int, free_bits: Sequence[int]) -> "ConstrainedBlock":
        digits = ["1"] * (ell * m)
        positions = free_positions(m, ell)
        if len(free_bits) != len(positions):
            raise ValueError("wrong number of free digits")
        for pos, bit in zip(positions, free_bits):
            digits[pos - 1] = "1" if bit else "0"
        return cls(m, Word(2, "".join(digits)))


def all_blocks(m: int, ell: int) -> Iterator[ConstrainedBlock]:
    """Every admissible block, in increasing binary value."""
    width = len(free_positions(m, ell))
    for bits in itertools.product((0, 1), repeat=width):
        yield ConstrainedBlock.from_free(m, ell, bits)


@dataclass(frozen=True)
class FreeDigitPolicy:
    """How the unconstrained block digits of a single point are chosen."""

    mode: str = "zero"
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("zero", "one", "random"):
            raise ValueError(f"unknown policy {self.mode!r}")

    @property
    def descriptor(self) -> str:
        return f"random:{self.seed}" if self.mode == "random" else self.mode

    @classmethod
    def parse(cls, descriptor: str) -> "FreeDigitPolicy":
        if descriptor in ("zero", "one"):
            return cls(descriptor)
        if descriptor.startswith("random:"):
            return cls("random", int(descriptor[7:]))
        raise ValueError(f"unknown policy {descriptor!r}")

    def block(self, m: int, ell: int, k: int) -> ConstrainedBlock:
        width = len(free_positions(m, ell))
        if self.mode == "zero":
            bits = [0] * width
        elif self.mode == "one":
            bits = [1] * width
        else:
            # one independent stream per step keeps steps reproducible in isolation
            rng = random.Random(f"{self.seed}:{k}")
            bits = [rng.getrandbits(1) for _ in range(width)]
        return ConstrainedBlock.from_free(m, ell, bits)


@dataclass(frozen=True)
class Segment:
    kind: str  # "block", "w" or "v"
    start: int  # 1-indexed, inclusive
    end: int


@dataclass(frozen=True)
class Descent:
    """Cylinders visited by one construction step."""

    outer: Cylinder  # [eta_{k-1}, block, w_k]_2
    eps: Cylinder  # [eps_k]_3, order rho_k
    mid: Cylinder  # [eps_k, v_k]_3
    eta: Cylinder  # [eta_k]_2, order t_k


def descend(eta_prev: Cylinder, block: Word, item: EnumerationItem) -> Descent:
    outer = eta_prev.extend(block).extend(item.w)
    rho = min_inner_order(outer.order, 2, 3, 3)
    eps = find_inner_cylinder(outer, 3, rho)
    mid = eps.extend(item.v)
    t = min_inner_order(mid.order, 3, 2, 2)
    eta = find_inner_cylinder(mid, 2, t)
    return Descent(outer, eps, mid, eta)


@dataclass(frozen=True)
class ConstructionState:
    schedule: Schedule = field(compare=False)
    k: int = 0
    eta: Cylinder = Cylinder(2, 0, 0)
    ternary: Word = Word(3, "")  # eps_k v_k: ternary prefix shared by [eta_k]_2
    t: tuple = ()
    rho: tuple = ()
    p: tuple = ()
    n: tuple = ()
    items: tuple = ()
    marks: tuple = ()
    policy: Optional[FreeDigitPolicy] = field(default=None, compare=False)

    @property
    def m(self) -> int:
        return self.schedule.m

    @property
    def binary(self) -> Word:
        return cylinder_to_word(self.eta)

    def t_prev(self, k: int) -> int:
        """``t_{k-1}`` with ``t_0 = 0``."""
        return self.t[k - 2] if k >= 2 else 0


def initial_state(schedule: Schedule, policy: Optional[FreeDigitPolicy] = None) -> ConstructionState:
    return ConstructionState(schedule=schedule, policy=policy)


def step(state: ConstructionState, block: ConstrainedBlock, item: EnumerationItem) -> ConstructionState:
    """Run construction step ``state.k + 1`` with the given block and word pair."""
    k = state.k + 1
    if block.m != state.m or block.ell != state.schedule.ell(k):
        raise ValueError(f"block does not match the schedule at step {k}")
    d = descend(state.eta, block.digits, item)
    # inclusion chain: [eta_k]_2 in [eps_k v_k]_3 in [eta_{k-1} block w_k]_2
    assert contains(d.mid, d.eta) and contains(d.outer, d.mid)
    t_prev = state.eta.order
    n_k = len(block.digits)
    gap_start = t_prev + n_k + 1
    marks = state.marks + (
        Segment("block", t_prev + 1, t_prev + n_k),
        Segment("w", gap_start, gap_start + len(item.w) - 1),
        Segment("v", gap_start + len(item.w), d.eta.order),
    )
    return ConstructionState(
        schedule=state.schedule,
        k=k,
        eta=d.eta,
        ternary=Word(3, cylinder_to_word(d.mid).digits),
        t=state.t + (d.eta.order,),
        rho=state.rho + (d.eps.order,),
        p=state.p + (d.eta.order - t_prev - n_k,),
        n=state.n + (n_k,),
        items=state.items + (item,),
        marks=marks,
        policy=state.policy,
    )


def generate_point(
    m: int,
    depth: int,
    policy: Optional[FreeDigitPolicy] = None,
    schedule: Optional[Schedule] = None,
) -> ConstructionState:
    """Follow one branch of the construction for ``depth`` steps.

    The result pins down the first ``t_K`` binary and ``rho_K + |v_K|``
    ternary digits of a point of E_m.
    """
    _check_m(m)
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    policy = policy or FreeDigitPolicy()
    schedule = schedule or default_schedule(m)
    if schedule.m != m:
        raise ValueError("schedule was built for a different m")
    state = initial_state(schedule, policy)
    for k in range(1, depth + 1):
        block = policy.block(m, schedule.ell(k), k)
        state = step(state, block, schedule.item(k))
    return state


def order_bounds_hold(t_prev: int, n_k: int, w_len: int, v_len: int, t_k: int) -> bool:
    """Integer form of

        L + (|v|+1) log2 3 + 1  <=  t_k  <  L + (|v|+2) log2 3 + 2,   L = t_(k-1) + |w_k| + n_k
    """
    base = t_prev + w_len + n_k
    lower = 2**t_k >= 2 ** (base + 1) * 3 ** (v_len + 1)
    upper = 2**t_k < 2 ** (base + 2) * 3 ** (v_len + 2)
    return lower and upper


@dataclass(frozen=True)
class OrderProfile:
    """Digit-independent quantities of a schedule up to some depth."""

    schedule: Schedule
    ell: tuple
    n: tuple
    t: tuple
    rho: tuple
    p: tuple

    @property
    def depth(self) -> int:
        return len(self.t)

    @property
    def m(self) -> int:
        return self.schedule.m

    def t_prev(self, k: int) -> int:
        return self.t[k - 2] if k >= 2 else 0


def orders(schedule: Schedule, depth: int) -> OrderProfile:
    """``rho_k``, ``t_k`` and ``p_k`` without choosing any digits.

    These orders depend only on cylinder orders, never on which block was
    chosen, so every branch of the construction shares them.
    """
    ell, n, t, rho, p = [], [], [], [], []
    t_prev = 0
    for k in range(1, depth + 1):
        item = schedule.item(k)
        ell.append(schedule.ell(k))
        n.append(ell[-1] * schedule.m)
        r = min_inner_order(t_prev + n[-1] + len(item.w), 2, 3, 3)
        t_k = min_inner_order(r + len(item.v), 3, 2, 2)
        rho.append(r)
        t.append(t_k)
        p.append(t_k - t_prev - n[-1])
        t_prev = t_k
    return OrderProfile(schedule, tuple(ell), tuple(n), tuple(t), tuple(rho), tuple(p))


def level_size(schedule: Schedule, k: int) -> int:
    m = schedule.m
    return 2 ** sum(schedule.ell(j) * (m - 2) for j in range(1, k + 1))


def enumerate_level(schedule: Schedule, k: int, cap: int) -> list[Cylinder]:
    """All level-``k`` cylinders ``[eta_k]_2``, one per choice of free digits."""
    required = level_size(schedule, k)
    if required > cap:
        raise CapExceeded(required, cap)
    level = [Cylinder(2, 0, 0)]
    for j in range(1, k + 1):
        item = schedule.item(j)
        blocks = list(all_blocks(schedule.m, schedule.ell(j)))
        level = [descend(eta, b.digits, item).eta for eta in level for b in blocks]
    return level


def ternary_readable(state: ConstructionState) -> bool:
    """Whether the recorded ternary prefix is what the binary prefix forces."""
    return ternary_prefix_of_cylinder(state.eta, len(state.ternary)) == state.ternary


test_schedule.__test__ = False  # not a pytest test
