"""Finite-depth checks of non-normality, orbit density and the dimension bound."""
from __future__ import annotations

import bisect
from array import array
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from . import kernels
from .construction import (
    ConstructionState,
    OrderProfile,
    all_blocks,
    descend,
    forced_positions,
)
from .errors import CapExceeded, WitnessFailed
from .exact_arith import Cylinder, Word, cylinder_to_word, ternary_prefix_of_cylinder


@dataclass(frozen=True)
class BlockCount:
    base: int
    block: str
    N: int
    count: int
    window: int  # number of starting positions, N - |block| + 1

    @property
    def frequency(self) -> Fraction:
        return Fraction(self.count, self.window) if self.window > 0 else Fraction(0)

    def as_dict(self) -> dict:
        return {
            "base": self.base,
            "block": self.block,
            "N": self.N,
            "count": self.count,
            "window": self.window,
        }


def block_counts(digits: Word, block: Word, checkpoints: Iterable[int]) -> list[BlockCount]:
    """Overlapping occurrence counts of ``block`` in the first ``N`` digits, for each ``N``."""
    if digits.base != block.base:
        raise ValueError("digits and block have different bases")
    if len(block) < 1:
        raise ValueError("block must be nonempty")
    checkpoints = list(checkpoints)
    for N in checkpoints:
        if not 0 <= N <= len(digits):
            raise ValueError(f"checkpoint {N} outside 0..{len(digits)}")
    if not checkpoints:
        return []
    width = len(block)
    stop = max(checkpoints)
    starts = kernels.match_starts(digits.digits.encode(), block.digits.encode(), stop)
    out = []
    for N in checkpoints:
        window = max(N - width + 1, 0)
        out.append(BlockCount(digits.base, block.digits, N, bisect.bisect_left(starts, window), window))
    return out


def block_count(digits: Word, block: Word, N: int) -> BlockCount:
    return block_counts(digits, block, [N])[0]


@dataclass(frozen=True)
class NonnormalityCheckpoint:
    k: int
    N: int  # t_k
    count: int
    window: int
    n_k: int
    prefix_len: int  # t_{k-1} + n_k
    prefix_count: int
    gap_sum: int  # p_1 + ... + p_{k-1}

    @property
    def frequency(self) -> Fraction:
        return Fraction(self.count, self.window)

    @property
    def ratio_by_block(self) -> Fraction:
        return Fraction(self.gap_sum, self.n_k)

    @property
    def ratio_by_prefix(self) -> Fraction:
        return Fraction(self.gap_sum, self.prefix_len)


def nonnormality_profile(state: ConstructionState, block: Optional[Word] = None) -> list[NonnormalityCheckpoint]:
    """Frequency of ``block`` (default ``0^m``) at the checkpoints ``t_1, ..., t_K``."""
    if block is None:
        block = Word(2, "0" * state.m)
    digits = state.binary
    prefix_lens = [state.t_prev(k) + state.n[k - 1] for k in range(1, state.k + 1)]
    counts = block_counts(digits, block, list(state.t) + prefix_lens)
    at_t, at_prefix = counts[: state.k], counts[state.k :]
    out = []
    for k in range(1, state.k + 1):
        out.append(
            NonnormalityCheckpoint(
                k=k,
                N=state.t[k - 1],
                count=at_t[k - 1].count,
                window=at_t[k - 1].window,
                n_k=state.n[k - 1],
                prefix_len=prefix_lens[k - 1],
                prefix_count=at_prefix[k - 1].count,
                gap_sum=sum(state.p[: k - 1]),
            )
        )
    return out


@dataclass(frozen=True)
class OrbitWitness:
    """``T_base**position (x)`` lies in the cylinder of ``word``."""

    word: str
    base: int
    position: int
    k: int

    def as_dict(self) -> dict:
        return {"k": self.k, "word": self.word, "base": self.base, "position": self.position}


def orbit_witnesses(state: ConstructionState) -> list[OrbitWitness]:
    """Where ``w_k`` and ``v_k`` sit in the binary and ternary expansions.

    Each prediction is checked against the digits of ``[eta_K]_2`` and the
    ternary prefix it forces; a mismatch raises ``WitnessFailed``.
    """
    if state.k == 0:
        return []
    binary = state.binary.digits
    ternary = ternary_prefix_of_cylinder(state.eta, len(state.ternary))
    if ternary is None:
        raise WitnessFailed(state.k, 3, "ternary prefix undetermined")
    out = []
    for k in range(1, state.k + 1):
        item = state.items[k - 1]
        pos2 = state.t_prev(k) + state.n[k - 1]
        if binary[pos2 : pos2 + len(item.w)] != item.w.digits:
            raise WitnessFailed(k, 2, f"expected {item.w.digits} after digit {pos2}")
        out.append(OrbitWitness(item.w.digits, 2, pos2, k))
        pos3 = state.rho[k - 1]
        if ternary.digits[pos3 : pos3 + len(item.v)] != item.v.digits:
            raise WitnessFailed(k, 3, f"expected {item.v.digits} after digit {pos3}")
        out.append(OrbitWitness(item.v.digits, 3, pos3, k))
    return out


def _locate_step(profile: OrderProfile, t: int) -> int:
    """The ``k`` with ``t_k < t <= t_{k+1}`` (``t_0 = 0``)."""
    if t < 1:
        raise ValueError("t must be at least 1")
    if t > profile.t[-1]:
        raise ValueError(f"t={t} lies beyond the constructed depth (t_K={profile.t[-1]})")
    return bisect.bisect_left(profile.t, t)


def count_exponent(profile: OrderProfile, t: int) -> int:
    """``log2 b_t``: the number of free binary digits among the first ``t``."""
    m = profile.m
    k = _locate_step(profile, t)
    done = sum(profile.ell[j] * (m - 2) for j in range(k))
    s = t - profile.t_prev(k + 1)
    n_next, ell_next = profile.n[k], profile.ell[k]
    if s >= n_next:
        return done + ell_next * (m - 2)
    ell, r = divmod(s, m)
    assert ell < ell_next
    if r == 0:
        return done + s - 2 * ell
    return done + s - 2 * ell - 1


def count_formula(profile: OrderProfile, t: int) -> int:
    """Closed-form number of order-``t`` binary cylinders meeting E_m.

    Inside the ``(k+1)``-th stretch, offsets are measured from ``t_k``: at
    ``t = t_k + l*m`` the count doubles for every free digit so far, just
    past a sub-block start one more digit is forced, and across the gap
    ``w_{k+1} v~_{k+1}`` nothing new is free.
    """
    return 2 ** count_exponent(profile, t)


def _gap_tables(profile: OrderProfile, t: int):
    """Forced-ones mask and gap lookup tables for ``t``-digit prefixes."""
    m = profile.m
    ones = 0
    gaps = []
    level = [Cylinder(2, 0, 0)]
    for k in range(1, profile.depth + 1):
        t_prev = profile.t_prev(k)
        if t_prev >= t:
            break
        for pos in forced_positions(m, profile.ell[k - 1]):
            if t_prev + pos <= t:
                ones |= 1 << (t - t_prev - pos)
        gap_start = t_prev + profile.n[k - 1]
        if gap_start >= t:
            break
        item = profile.schedule.item(k)
        gap_len = min(profile.t[k - 1], t) - gap_start
        table = array("q", [-1]) * (1 << gap_start)
        blocks = list(all_blocks(m, profile.ell[k - 1]))
        nxt = []
        for eta in level:
            for b in blocks:
                eta_k = descend(eta, b.digits, item).eta
                # digits gap_start+1 .. gap_start+gap_len of eta_k
                p_k = eta_k.order - gap_start
                table[eta_k.index >> p_k] = (eta_k.index >> (p_k - gap_len)) & ((1 << gap_len) - 1)
                nxt.append(eta_k)
        gaps.append((t - gap_start, t - gap_start - gap_len, (1 << gap_len) - 1, table))
        level = nxt
    return ones, gaps


def count_bruteforce(profile: OrderProfile, t: int, cap: int = 1 << 22, backend=None) -> int:
    """Count order-``t`` binary cylinders meeting E_m by scanning all ``2**t`` words.

    A word passes if it has a 1 at every forced block position and, at every
    gap it reaches, exactly the digits that the cylinder descent produces
    after its own prefix. The descent is rerun for each admissible prefix;
    nothing from the closed form is reused.
    """
    if (1 << t) > cap:
        raise CapExceeded(1 << t, cap)
    _locate_step(profile, t)
    ones, gaps = _gap_tables(profile, t)
    kernel = backend.count_admissible if backend is not None else kernels.count_admissible
    return kernel(t, ones, gaps)


@dataclass
class LevelCountTable:
    m: int
    schedule: str
    entries: dict  # t -> b_t

    def exponent(self, t: int) -> int:
        """``floor(log2 b_t)``; exact since every ``b_t`` is a power of two."""
        return self.entries[t].bit_length() - 1

    def quotient(self, t: int) -> Fraction:
        return Fraction(self.exponent(t), t)

    def rows(self):
        for t in sorted(self.entries):
            yield t, self.entries[t], self.exponent(t), t


def count_table(profile: OrderProfile, t_max: Optional[int] = None) -> LevelCountTable:
    t_max = profile.t[-1] if t_max is None else t_max
    entries = {t: count_formula(profile, t) for t in range(1, t_max + 1)}
    return LevelCountTable(profile.m, profile.schedule.label, entries)


def dimension_lower_bound(table: LevelCountTable, t0: int, t1: int) -> Fraction:
    """Largest ``theta`` with ``b_t >= 2**(theta * t)`` for every ``t0 <= t <= t1``.

    The value is ``min log2(b_t) / t``; each inequality is re-checked as
    ``b_t**q >= 2**(p * t)`` for ``theta = p / q``.
    """
    if not 1 <= t0 <= t1:
        raise ValueError("need 1 <= t0 <= t1")
    missing = [t for t in (t0, t1) if t not in table.entries]
    if missing:
        raise ValueError(f"t={missing[0]} not in the count table")
    theta = min(table.quotient(t) for t in range(t0, t1 + 1))
    for t in range(t0, t1 + 1):
        assert table.entries[t] ** theta.denominator >= 2 ** (theta.numerator * t)
    return theta
