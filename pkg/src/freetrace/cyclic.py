"""Canonical forms modulo sums of commutators.

Two polynomials differ by a sum of commutators exactly when, class by class,
the sums of their coefficients over each rotation orbit of words agree.  This
module picks the lexicographically least rotation as the canonical class
representative and turns a polynomial into its coordinate vector on those
representatives; the kernel of that map is precisely the span of commutators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator

from . import kernels
from .poly import (
    FreePoly,
    ScalarLike,
    Word,
    graded_lex_key,
    scalar_from_str,
    scalar_to_str,
    word_from_str,
    word_to_str,
)


def min_rotation(word: Word) -> Word:
    """Lexicographically least rotation of ``word`` (letter-index order)."""
    if len(word) < 2:
        return word
    start = kernels.min_rotation_index(word)
    return word[start:] + word[:start]


def primitive_period(word: Word) -> int:
    """Number of repetitions k of the shortest block u with word == u^k."""
    n = len(word)
    if n == 0:
        raise ValueError("the empty word has no primitive period")
    for block in range(1, n + 1):
        if n % block == 0 and word[block:] + word[:block] == word:
            return n // block
    raise AssertionError("unreachable: every word repeats with block = length")


@dataclass(frozen=True)
class CyclicVector:
    """Coordinates of a polynomial on cyclic-class representatives.

    ``coords`` maps canonical representatives (least rotations) to nonzero
    rationals; polynomials are cyclically equivalent iff their vectors are
    equal.
    """

    nvars: int
    coords: dict[Word, Fraction]

    def is_zero(self) -> bool:
        return not self.coords

    def __add__(self, other: CyclicVector) -> CyclicVector:
        out = dict(self.coords)
        for rep, value in other.coords.items():
            total = out.pop(rep, Fraction(0)) + value
            if total:
                out[rep] = total
        return CyclicVector(max(self.nvars, other.nvars), out)

    def __sub__(self, other: CyclicVector) -> CyclicVector:
        return self + other.scale(-1)

    def scale(self, factor: ScalarLike) -> CyclicVector:
        factor = Fraction(factor)
        if not factor:
            return CyclicVector(self.nvars, {})
        return CyclicVector(
            self.nvars, {rep: value * factor for rep, value in self.coords.items()}
        )

    def __rmul__(self, factor: ScalarLike) -> CyclicVector:
        return self.scale(factor)

    def get(self, rep: Word) -> Fraction:
        return self.coords.get(rep, Fraction(0))

    def support(self) -> list[Word]:
        return sorted(self.coords, key=graded_lex_key)


def cyclic_canonicalize(f: FreePoly) -> CyclicVector:
    """Class-wise coefficient sums of ``f``; linear, kernel = commutator span."""
    coords: dict[Word, Fraction] = {}
    for word, coeff in f.terms.items():
        rep = min_rotation(word)
        total = coords.pop(rep, Fraction(0)) + coeff
        if total:
            coords[rep] = total
    return CyclicVector(f.nvars, coords)


def is_cyc_equivalent(f: FreePoly, h: FreePoly) -> bool:
    """True iff f - h is a sum of commutators."""
    return cyclic_canonicalize(f).coords == cyclic_canonicalize(h).coords


def class_representatives(nvars: int, degree: int) -> list[Word]:
    """Canonical representatives of all cyclic classes of exact ``degree``."""
    if degree == 0:
        return [()]
    reps = {
        min_rotation(word)
        for word in product(range(1, nvars + 1), repeat=degree)
    }
    return sorted(reps)


def class_representatives_up_to(nvars: int, degree: int) -> Iterator[Word]:
    """All representatives of degree 0..degree in graded lexicographic order."""
    for d in range(degree + 1):
        yield from class_representatives(nvars, d)


# ---------------------------------------------------------------------------
# Serialization: JSON object mapping representative strings to "p/q" values.


def cyclic_vector_to_json_dict(vec: CyclicVector) -> dict[str, str]:
    return {
        word_to_str(rep): scalar_to_str(vec.coords[rep]) for rep in vec.support()
    }


def cyclic_vector_from_json_dict(data: dict[str, str], nvars: int) -> CyclicVector:
    coords: dict[Word, Fraction] = {}
    for key, raw in data.items():
        word = word_from_str(key, nvars)
        rep = min_rotation(word)
        value = scalar_from_str(raw)
        if value:
            coords[rep] = value
    return CyclicVector(nvars, coords)
