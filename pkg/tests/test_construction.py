from fractions import Fraction

import pytest

from densorbit.construction import (
    ConstrainedBlock,
    FreeDigitPolicy,
    default_schedule,
    enumerate_level,
    forced_positions,
    generate_point,
    initial_state,
    level_size,
    order_bounds_hold,
    orders,
    step,
    ternary_readable,
    test_schedule,
)
from densorbit.errors import CapExceeded
from densorbit.exact_arith import Word, contains, cylinder_to_word, word_to_cylinder
from densorbit.words import gap_bound, item_at

from test_exact_arith import TRACE_EPS_V_1, TRACE_ETA_1

POLICIES = [FreeDigitPolicy("zero"), FreeDigitPolicy("one"), FreeDigitPolicy("random", 2024)]


def test_default_schedule_first_step():
    s = default_schedule(3)
    assert s.ell(1) == 7 and s.n(1) == 21
    assert Fraction(item_at(1).gap_bound, s.n(1)) == Fraction(1, 3)


def test_default_schedule_ratio():
    for m in (2, 3, 7):
        s = default_schedule(m)
        total = 0
        for k in range(1, 51):
            total += item_at(k).gap_bound
            assert s.n(k) % m == 0
            assert Fraction(total, s.n(k)) == Fraction(1, m * k)


def test_rejects_small_m():
    with pytest.raises(ValueError, match="m must be"):
        default_schedule(1)


def test_block_constraint():
    ok = ConstrainedBlock(3, Word(2, "101111"))
    assert ok.ell == 2
    with pytest.raises(ValueError):
        ConstrainedBlock(3, Word(2, "100111"))
    assert forced_positions(3, 7) == [1, 3, 4, 6, 7, 9, 10, 12, 13, 15, 16, 18, 19, 21]


def test_worked_trace_step_one():
    state = step(initial_state(default_schedule(3)), ConstrainedBlock(3, Word(2, "101" * 7)), item_at(1))
    assert state.rho == (15,)
    assert state.t == (27,)
    assert state.p == (6,)
    assert state.p[0] <= gap_bound(item_at(1).w, item_at(1).v) == 7
    assert state.binary.digits == TRACE_ETA_1
    assert state.ternary.digits == TRACE_EPS_V_1


def test_generate_point_trace():
    state = generate_point(3, 1)
    assert state.binary.digits.startswith("101101101101101101101" + "0")
    assert state.t == (27,)
    assert generate_point(3, 1) == state
    assert generate_point(4, 2, FreeDigitPolicy("random", 5)) == generate_point(4, 2, FreeDigitPolicy("random", 5))


@pytest.mark.parametrize("m", [2, 3, 4, 5])
@pytest.mark.parametrize("policy", POLICIES, ids=lambda p: p.descriptor)
def test_chain_bounds_and_gaps(m, policy):
    state = generate_point(m, 4, policy)
    t_prev = 0
    for k in range(1, state.k + 1):
        item = state.items[k - 1]
        t_k, rho_k, n_k = state.t[k - 1], state.rho[k - 1], state.n[k - 1]
        digits = state.binary.digits
        outer = word_to_cylinder(Word(2, digits[: t_prev + n_k + len(item.w)]))
        mid = word_to_cylinder(Word(3, state.ternary.digits[: rho_k + len(item.v)]))
        inner = word_to_cylinder(Word(2, digits[:t_k]))
        assert contains(mid, inner) and contains(outer, mid) and contains(outer, inner)
        assert order_bounds_hold(t_prev, n_k, len(item.w), len(item.v), t_k)
        assert state.p[k - 1] == t_k - t_prev - n_k <= item.gap_bound
        t_prev = t_k
    assert ternary_readable(state)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_order_bounds_ten_steps(m):
    prof = orders(default_schedule(m), 10)
    for k in range(1, 11):
        item = item_at(k)
        assert order_bounds_hold(prof.t_prev(k), prof.n[k - 1], len(item.w), len(item.v), prof.t[k - 1])


def test_orders_match_generated_point():
    for m in (2, 3, 5):
        prof = orders(default_schedule(m), 3)
        state = generate_point(m, 3, FreeDigitPolicy("random", 11))
        assert (prof.t, prof.rho, prof.p, prof.n) == (state.t, state.rho, state.p, state.n)


def test_gap_ratio_default_schedule():
    m = 3
    prof = orders(default_schedule(m), 20)
    for k in range(1, 21):
        gaps, blocks = sum(prof.p[:k]), sum(prof.n[:k])
        g_k = sum(item_at(i).gap_bound for i in range(1, k + 1))
        assert Fraction(gaps, blocks) <= Fraction(g_k, prof.n[k - 1]) <= Fraction(1, m * k)


def test_enumerate_level_example():
    level = enumerate_level(test_schedule(3, [2]), 1, cap=100)
    assert len(level) == 4
    assert len(set(level)) == 4


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("ells", [[1], [2], [1, 2], [2, 1]])
def test_level_counts(m, ells):
    sched = test_schedule(m, ells)
    for k in range(1, 4):
        expected = 1
        for j in range(1, k + 1):
            expected *= 2 ** (sched.ell(j) * (m - 2))
        if expected > 2**12:
            break
        level = enumerate_level(sched, k, cap=2**12)
        assert len(level) == expected == level_size(sched, k)
        assert len({c.index for c in level}) == expected
        assert all(c.order == orders(sched, k).t[-1] for c in level)


def test_m2_levels_are_single_points():
    sched = default_schedule(2)
    assert len(enumerate_level(sched, 2, cap=1)) == 1


def test_enumerate_level_cap():
    with pytest.raises(CapExceeded) as info:
        enumerate_level(default_schedule(3), 1, cap=10)
    assert info.value.required == 2**7


def test_level_contains_generated_points():
    sched = test_schedule(4, [1, 2])
    level = set(enumerate_level(sched, 2, cap=2**12))
    for policy in POLICIES:
        assert generate_point(4, 2, policy, sched).eta in level


def test_marks_cover_prefix():
    state = generate_point(3, 3)
    pos = 1
    for seg in state.marks:
        assert seg.start == pos
        pos = seg.end + 1
    assert pos == state.t[-1] + 1
    for seg in state.marks:
        if seg.kind == "block":
            block = state.binary.digits[seg.start - 1 : seg.end]
            ConstrainedBlock(3, Word(2, block))
