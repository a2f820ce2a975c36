import pytest
from hypothesis import given
from hypothesis import strategies as st

from quandles.perm import (Permutation, compose, conjugate, cycles, fixed_points, format_cycles,
                           from_cycles, identity, inverse, moved_points, parse_cycles, pattern,
                           power)


def perms(n_min=1, n_max=8):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.permutations(range(1, n + 1)).map(Permutation))


def same_degree(k):
    return st.integers(1, 8).flatmap(
        lambda n: st.tuples(*[st.permutations(range(1, n + 1)).map(Permutation)] * k))


def test_compose_applies_right_first():
    p = from_cycles(3, [[1, 2]])
    q = from_cycles(3, [[2, 3]])
    assert compose(p, q)(2) == p(q(2)) == 3
    assert (p * q) == compose(p, q)


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation([1, 1, 2])
    with pytest.raises(ValueError):
        Permutation([0, 1])


def test_from_cycles_validation():
    with pytest.raises(ValueError):
        from_cycles(3, [[1, 4]])
    with pytest.raises(ValueError):
        from_cycles(4, [[1, 2], [2, 3]])


def test_cycles_include_fixed_points_sorted_by_minimum():
    p = from_cycles(6, [[4, 2, 6, 5]])
    assert cycles(p) == [[1], [2, 6, 5, 4], [3]]
    assert pattern(p) == (1, 1, 4)
    assert fixed_points(p) == {1, 3}
    assert moved_points(p) == {2, 4, 5, 6}
    assert format_cycles(p) == "(1)(2 6 5 4)(3)"


def test_parse_cycles_omits_fixed_points():
    assert parse_cycles("(4 5)", 5) == from_cycles(5, [[4, 5]])
    assert parse_cycles("()", 3) == identity(3)
    assert parse_cycles("", 3) == identity(3)
    with pytest.raises(ValueError):
        parse_cycles("(1 2", 3)
    with pytest.raises(ValueError):
        parse_cycles("(1 7)", 3)


@given(same_degree(3))
def test_associativity(t):
    p, q, r = t
    assert compose(compose(p, q), r) == compose(p, compose(q, r))


@given(perms())
def test_inverse(p):
    e = identity(p.n)
    assert compose(p, inverse(p)) == e == compose(inverse(p), p)
    assert ~p == inverse(p)


@given(same_degree(2))
def test_conjugation_preserves_pattern(t):
    p, by = t
    c = conjugate(p, by)
    assert pattern(c) == pattern(p)
    assert c == by * p * ~by


@given(perms(), st.integers(-10, 10))
def test_power_matches_repeated_product(p, k):
    expect = identity(p.n)
    step = p if k >= 0 else inverse(p)
    for _ in range(abs(k)):
        expect = compose(expect, step)
    assert power(p, k) == expect == p ** k


@given(perms())
def test_cycle_notation_round_trip(p):
    assert parse_cycles(format_cycles(p), p.n) == p
    assert from_cycles(p.n, cycles(p)) == p
