"""Seeded random generators for exact test objects."""

from __future__ import annotations

import random
from fractions import Fraction

from freetrace.mateval import MatrixTuple
from freetrace.poly import FreePoly, commutator


def random_fraction(rng: random.Random, span: int = 5, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def nonzero_fraction(rng: random.Random, span: int = 5, max_den: int = 3) -> Fraction:
    while True:
        value = random_fraction(rng, span, max_den)
        if value:
            return value


def random_word(
    rng: random.Random, nvars: int, max_degree: int, min_degree: int = 0
) -> tuple[int, ...]:
    degree = rng.randint(min_degree, max_degree)
    return tuple(rng.randint(1, nvars) for _ in range(degree))


def random_poly(
    rng: random.Random,
    nvars: int,
    max_degree: int = 4,
    max_terms: int = 4,
    span: int = 5,
) -> FreePoly:
    terms: dict[tuple[int, ...], Fraction] = {}
    for _ in range(rng.randint(1, max_terms)):
        word = random_word(rng, nvars, max_degree)
        terms[word] = terms.get(word, Fraction(0)) + random_fraction(rng, span)
    return FreePoly.from_terms({w: c for w, c in terms.items() if c}, nvars)


def random_tuple(
    rng: random.Random, nvars: int, n: int, span: int = 2, max_den: int = 2
) -> MatrixTuple:
    return MatrixTuple.from_rows(
        [
            [
                [random_fraction(rng, span, max_den) for _ in range(n)]
                for _ in range(n)
            ]
            for _ in range(nvars)
        ]
    )


def random_commutator_sum(
    rng: random.Random, nvars: int, count: int = 3, total_degree: int = 4
) -> FreePoly:
    """Sum of up to ``count`` commutators of random polynomials, with each
    commutator's degree at most ``total_degree``."""
    total = FreePoly.zero(nvars)
    for _ in range(rng.randint(0, count)):
        dp = rng.randint(0, total_degree - 1)
        dq = rng.randint(1, total_degree - dp)
        p = random_poly(rng, nvars, dp, 3, 3)
        q = random_poly(rng, nvars, dq, 3, 3)
        total = total + commutator(p, q)
    return total
