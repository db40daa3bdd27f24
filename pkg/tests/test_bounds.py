"""Piecewise degree bounds and the matrix-size bound."""

import math
import random

import pytest

from freetrace.bounds import degree_bound, degree_bound_refined, matrix_size_bound


def oracle_base(n, degrees):
    """Independent direct evaluation of the piecewise definition."""
    r = len(degrees)
    if r <= n:
        return math.prod(degrees)
    if n > 1:
        return math.prod(degrees[: n - 1]) * degrees[-1]
    return degrees[0] + degrees[-1] - 1


def oracle_refined(n, degrees):
    r = len(degrees)
    if r <= n:
        return oracle_base(n, degrees)
    if degrees[-1] > 2:
        return oracle_base(n, degrees)
    if n > 1:
        return 2 * oracle_base(n, degrees) - 1
    return 2 * degrees[0] - 1


def oracle_size(degrees, d, g):
    r = len(degrees)
    return max(
        math.prod(degrees) * d,
        math.ceil(math.sqrt(g / r)),
        math.ceil(math.sqrt(r / g)),
    )


BASE_CASES = [
    (3, (5, 4, 2), 40),
    (2, (5, 4, 2), 10),
    (1, (5, 4, 2), 6),
]

REFINED_CASES = [
    (3, (5, 4, 2), 40),
    (2, (5, 4, 2), 19),
    (1, (3, 2), 5),
]

SIZE_CASES = [
    ((2, 2), 2, 2, 8),
    ((1,), 1, 1, 1),
    ((3,), 2, 100, 10),
]


@pytest.mark.parametrize("n, degrees, expected", BASE_CASES)
def test_degree_bound_branches(n, degrees, expected):
    assert degree_bound(n, degrees) == expected == oracle_base(n, degrees)


@pytest.mark.parametrize("n, degrees, expected", REFINED_CASES)
def test_degree_bound_refined_branches(n, degrees, expected):
    assert degree_bound_refined(n, degrees) == expected == oracle_refined(n, degrees)


@pytest.mark.parametrize("degrees, d, g, expected", SIZE_CASES)
def test_matrix_size_bound_branches(degrees, d, g, expected):
    assert matrix_size_bound(degrees, d, g) == expected == oracle_size(degrees, d, g)


def test_against_oracle_random():
    rng = random.Random(7)
    for _ in range(500):
        r = rng.randint(1, 6)
        degrees = tuple(sorted((rng.randint(1, 9) for _ in range(r)), reverse=True))
        n = rng.randint(1, 7)
        assert degree_bound(n, degrees) == oracle_base(n, degrees)
        assert degree_bound_refined(n, degrees) == oracle_refined(n, degrees)
        g = rng.randint(1, 50)
        d = rng.randint(0, 5)
        assert matrix_size_bound(degrees, d, g) == oracle_size(degrees, d, g)


def test_monotone_in_each_degree():
    rng = random.Random(8)
    for _ in range(500):
        r = rng.randint(1, 6)
        degrees = sorted((rng.randint(1, 9) for _ in range(r)), reverse=True)
        n = rng.randint(1, 7)
        base = degree_bound(n, degrees)
        index = rng.randrange(r)
        bumped = list(degrees)
        bumped[index] += 1
        bumped.sort(reverse=True)
        assert degree_bound(n, bumped) >= base


def test_refined_relations():
    rng = random.Random(9)
    for _ in range(300):
        r = rng.randint(1, 6)
        n = rng.randint(1, 7)
        degrees = tuple(sorted((rng.randint(1, 9) for _ in range(r)), reverse=True))
        base = degree_bound(n, degrees)
        refined = degree_bound_refined(n, degrees)
        assert refined >= base
        if degrees[-1] >= 3:
            assert refined == base
        if degrees[-1] <= 2 and r > n > 1:
            assert refined == 2 * base - 1


def test_size_bound_dominates_product():
    rng = random.Random(10)
    for _ in range(200):
        r = rng.randint(1, 5)
        degrees = tuple(sorted((rng.randint(1, 6) for _ in range(r)), reverse=True))
        d = rng.randint(0, 4)
        g = rng.randint(1, 20)
        assert matrix_size_bound(degrees, d, g) >= math.prod(degrees) * d


def test_big_integer_products():
    degrees = tuple([10**6] * 8)
    assert degree_bound(8, degrees) == 10**48
    assert matrix_size_bound(degrees, 10**6, 4) == 10**54


def test_validation_errors():
    with pytest.raises(ValueError):
        degree_bound(2, (2, 3))
    with pytest.raises(ValueError):
        degree_bound(2, ())
    with pytest.raises(ValueError):
        degree_bound(2, (3, 0))
    with pytest.raises(ValueError):
        degree_bound(0, (3,))
    with pytest.raises(ValueError):
        matrix_size_bound((), 1, 1)
    with pytest.raises(ValueError):
        matrix_size_bound((2,), 1, 0)
