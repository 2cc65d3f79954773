import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hessgkm.polyring import (
    MultiPoly, divisible_by_difference, drop_last_var, monomial_index, monomials,
    num_monomials, permute_vars, replace_var, substitute,
)


def t(n, i):
    return MultiPoly.var(n, i)


def test_arithmetic_and_str():
    p = 3 * t(3, 1) ** 2 * t(3, 3) - Fraction(1, 2) * t(3, 2)
    assert str(p) == "3*t1^2*t3 - 1/2*t2"
    assert (p - p).is_zero()
    assert p.degrees() == {3, 1}
    assert not p.is_homogeneous()
    assert (t(3, 1) * t(3, 2)).is_homogeneous(2)


def test_floats_refused():
    with pytest.raises(TypeError):
        MultiPoly.constant(2, 0.5)
    with pytest.raises(TypeError):
        t(2, 1) * 1.5


def test_evaluate():
    p = t(2, 1) ** 2 - 3 * t(2, 2)
    assert p.evaluate((2, 1)) == 1


def test_substitute_and_divisibility():
    p = t(3, 1) - t(3, 2)
    assert substitute(p, 1, 2).is_zero()
    assert divisible_by_difference(p * t(3, 3), 1, 2)
    assert not divisible_by_difference(t(3, 1) - t(3, 3), 1, 2)
    with pytest.raises(ValueError):
        divisible_by_difference(p, 1, 1)


def test_replace_var_and_drop():
    s = MultiPoly.linear(3, {1: -1, 2: -1})
    p = t(3, 3) ** 2 + t(3, 1)
    r = replace_var(p, 3, s)
    assert r == (t(3, 1) + t(3, 2)) ** 2 + t(3, 1)
    assert drop_last_var(r) == (t(2, 1) + t(2, 2)) ** 2 + t(2, 1)
    with pytest.raises(ValueError):
        drop_last_var(p)


def test_monomials_colex():
    assert monomials(2, 2) == ((2, 0), (1, 1), (0, 2))
    for n in range(1, 5):
        for d in range(5):
            assert len(monomials(n, d)) == num_monomials(n, d)
            assert monomial_index(n, d)[monomials(n, d)[-1]] == num_monomials(n, d) - 1


def _random_poly(rng, n):
    terms = {}
    for _ in range(rng.randint(0, 5)):
        e = tuple(rng.randint(0, 3) for _ in range(n))
        terms[e] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return MultiPoly(n, terms)


def test_permute_vars_inverse_random():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(1, 5)
        p = _random_poly(rng, n)
        sigma = list(range(1, n + 1))
        rng.shuffle(sigma)
        inv = [0] * n
        for i, s in enumerate(sigma):
            inv[s - 1] = i + 1
        assert permute_vars(permute_vars(p, sigma), inv) == p


@given(st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), st.integers(-5, 5), max_size=5),
       st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), st.integers(-5, 5), max_size=5),
       st.tuples(*[st.integers(-4, 4)] * 3))
def test_evaluation_is_a_ring_map(a, b, point):
    p, q = MultiPoly(3, a), MultiPoly(3, b)
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)
