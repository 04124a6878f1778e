from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from densorbit.errors import NotContainable
from densorbit.exact_arith import (
    Cylinder,
    Word,
    contains,
    cylinder_to_word,
    find_inner_cylinder,
    min_inner_order,
    ternary_prefix_of_cylinder,
    word_to_cylinder,
)

# Worked m=3 trace, recomputed with Fraction arithmetic and linear scans
# (independent of this package): binary prefix of [eta_1]_2 and the ternary
# prefix eps_1 v_1 it forces.
TRACE_ETA_1 = "101" * 7 + "0" + "00110"
TRACE_EPS_V_1 = "2010212010211200"


def interval(c):
    return Fraction(c.index, c.scale), Fraction(c.index + 1, c.scale)


def brute_rho(n, outer_base, inner_base, margin):
    rho = 1
    while not (
        margin * Fraction(1, inner_base**rho)
        <= Fraction(1, outer_base**n)
        < margin * Fraction(1, inner_base ** (rho - 1))
    ):
        rho += 1
    return rho


@pytest.mark.parametrize(
    "digits, base, order, index",
    [("", 2, 0, 0), ("101", 2, 3, 5), ("12", 3, 2, 5)],
)
def test_word_to_cylinder_examples(digits, base, order, index):
    c = word_to_cylinder(Word(base, digits))
    assert c == Cylinder(base, order, index)
    assert cylinder_to_word(c) == Word(base, digits)


def test_invalid_words_and_cylinders():
    with pytest.raises(ValueError):
        Word(2, "102")
    with pytest.raises(ValueError):
        Word(5, "1")
    with pytest.raises(ValueError):
        Cylinder(3, 2, 9)


@pytest.mark.parametrize(
    "outer, inner, expected",
    [
        (Cylinder(2, 1, 0), Cylinder(3, 2, 0), True),
        (Cylinder(2, 1, 1), Cylinder(3, 2, 5), True),
        (Cylinder(2, 1, 1), Cylinder(3, 2, 4), False),
    ],
)
def test_contains_examples(outer, inner, expected):
    assert contains(outer, inner) is expected


@pytest.mark.parametrize(
    "args, expected",
    [((1, 2, 3, 3), 2), ((22, 2, 3, 3), 15), ((16, 3, 2, 2), 27)],
)
def test_min_inner_order_examples(args, expected):
    assert min_inner_order(*args) == expected
    assert brute_rho(*args) == expected


def test_min_inner_order_rejects_bad_margin():
    with pytest.raises(ValueError):
        min_inner_order(3, 2, 3, 4)
    with pytest.raises(ValueError):
        min_inner_order(3, 2, 2, 2)


@pytest.mark.parametrize("bases", [(2, 3), (3, 2)])
@pytest.mark.parametrize("margin", [2, 3])
def test_min_inner_order_two_sided_up_to_200(bases, margin):
    outer_base, inner_base = bases
    for n in range(201):
        rho = min_inner_order(n, outer_base, inner_base, margin)
        # margin * b_i**-rho <= b_o**-n  and  margin * b_i**-(rho-1) > b_o**-n
        assert margin * outer_base**n <= inner_base**rho
        assert margin * outer_base**n > inner_base ** (rho - 1)
        if n <= 40:
            assert rho == brute_rho(n, outer_base, inner_base, margin)


@pytest.mark.parametrize(
    "outer, base, order, word",
    [
        (Cylinder(2, 1, 1), 3, 2, "12"),
        (Cylinder(2, 0, 0), 3, 1, "0"),
        (Cylinder(2, 2, 0), 3, 3, "000"),
    ],
)
def test_find_inner_cylinder_examples(outer, base, order, word):
    c = find_inner_cylinder(outer, base, order)
    assert cylinder_to_word(c).digits == word
    assert contains(outer, c)


def test_find_inner_cylinder_is_leftmost():
    outer = Cylinder(2, 5, 13)
    c = find_inner_cylinder(outer, 3, 6)
    assert c.index == 0 or not contains(outer, Cylinder(3, 6, c.index - 1))


def test_find_inner_cylinder_too_coarse():
    with pytest.raises(NotContainable):
        find_inner_cylinder(Cylinder(2, 3, 3), 3, 1)


@pytest.mark.parametrize("margin", [2, 3])
def test_guarantee_exhaustive_small_orders(margin):
    for n in range(13):
        rho = min_inner_order(n, 2, 3, margin)
        for a in range(2**n):
            outer = Cylinder(2, n, a)
            assert contains(outer, find_inner_cylinder(outer, 3, rho))
    for n in range(8):
        rho = min_inner_order(n, 3, 2, margin)
        for a in range(3**n):
            outer = Cylinder(3, n, a)
            assert contains(outer, find_inner_cylinder(outer, 2, rho))


def test_ternary_prefix_examples():
    assert ternary_prefix_of_cylinder(Cylinder(2, 3, 0), 1) == Word(3, "0")
    assert ternary_prefix_of_cylinder(Cylinder(2, 4, 5), 1) is None
    eta = word_to_cylinder(Word(2, TRACE_ETA_1))
    assert ternary_prefix_of_cylinder(eta, 16) == Word(3, TRACE_EPS_V_1)
    assert contains(word_to_cylinder(Word(3, TRACE_EPS_V_1)), eta)


words2 = st.text(alphabet="01", max_size=24).map(lambda s: Word(2, s))
words3 = st.text(alphabet="012", max_size=16).map(lambda s: Word(3, s))
cylinders = st.one_of(words2, words3).map(word_to_cylinder)


@given(st.one_of(words2, words3))
def test_round_trip(w):
    assert cylinder_to_word(word_to_cylinder(w)) == w


@given(cylinders, cylinders)
def test_contains_matches_rationals(a, b):
    (alo, ahi), (blo, bhi) = interval(a), interval(b)
    assert contains(a, b) == (alo <= blo and bhi <= ahi)


@given(cylinders, cylinders, cylinders)
@settings(max_examples=300)
def test_contains_is_a_partial_order(a, b, c):
    assert contains(a, a)
    if contains(a, b) and contains(b, a):
        assert interval(a) == interval(b)
    if contains(a, b) and contains(b, c):
        assert contains(a, c)


@given(words2, st.integers(0, 20))
def test_ternary_prefix_agrees_with_rationals(w, length):
    c = word_to_cylinder(w)
    lo, hi = interval(c)
    u = ternary_prefix_of_cylinder(c, length)
    straddles = any(lo < Fraction(j, 3**length) < hi for j in range(int(lo * 3**length), int(hi * 3**length) + 1))
    if u is None:
        assert straddles
    else:
        assert not straddles
        assert contains(word_to_cylinder(u), c)
