"""Constructive realization of truncated tracial moment sequences.

A truncated tracial moment sequence assigns a rational to every cyclic class
of words up to a degree bound.  Every such sequence is a weighted sum of
matrix trace functionals, and the construction here is explicit: degree by
degree, each class with a nonzero residual moment gets one "cycle atom" --
a tuple of shift matrices tracing out the class's word, closed by a single
back entry carrying the residual -- and a final weighted 1x1 zero tuple
matches the empty-word moment.

The closing entry is divided by the word's primitive period: a word that is
the k-th power of a shorter block closes its cycle in k distinct alignments,
each contributing the closing coefficient once, so without the division the
atom's trace would be k times the intended value.  This correction is
validated against brute-force exact trace computation in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .cyclic import (
    class_representatives,
    class_representatives_up_to,
    min_rotation,
    primitive_period,
)
from .mateval import (
    MatrixTuple,
    trace_eval,
    tuple_from_json_dict,
    tuple_to_json_dict,
)
from .poly import (
    FreePoly,
    ScalarLike,
    Word,
    scalar_from_str,
    scalar_to_str,
    word_from_str,
    word_to_str,
)


class MomentConflictError(ValueError):
    """Two cyclically equivalent words were assigned different values."""

    def __init__(self, word_a: str, value_a: Fraction, word_b: str, value_b: Fraction):
        super().__init__(
            f"cyclically equivalent words {word_a!r} and {word_b!r} carry "
            f"conflicting values {value_a} and {value_b}"
        )


@dataclass(frozen=True)
class TracialMomentSequence:
    """Moments indexed by canonical class representatives of degree <= degree.

    ``values`` is total on representatives up to the truncation degree
    (absent input classes are zero), including the empty word.
    """

    nvars: int
    degree: int
    values: dict[Word, Fraction]

    def value(self, word: Word) -> Fraction:
        if len(word) > self.degree:
            raise ValueError(
                f"word of degree {len(word)} exceeds truncation degree {self.degree}"
            )
        return self.values[min_rotation(word)]

    def is_zero(self) -> bool:
        return not any(self.values.values())


RawScalar = Union[Fraction, int, str]


def validate_sequence(
    raw: Mapping[str, RawScalar], g: int, d: int
) -> TracialMomentSequence:
    """Canonicalize keys, reject cyclic conflicts, fill absent classes with 0."""
    assigned: dict[Word, tuple[str, Fraction]] = {}
    for key, raw_value in raw.items():
        word = word_from_str(key, g)
        if len(word) > d:
            raise ValueError(
                f"moment key {key!r} has degree {len(word)} above truncation {d}"
            )
        value = scalar_from_str(raw_value) if isinstance(raw_value, str) else Fraction(raw_value)
        rep = min_rotation(word)
        seen = assigned.get(rep)
        if seen is not None and seen[1] != value:
            raise MomentConflictError(seen[0], seen[1], key, value)
        if seen is None:
            assigned[rep] = (key, value)
    values = {
        rep: Fraction(0) for rep in class_representatives_up_to(g, d)
    }
    for rep, (_, value) in assigned.items():
        values[rep] = value
    return TracialMomentSequence(g, d, values)


@dataclass(frozen=True)
class Realization:
    """Weighted matrix tuples whose combined trace functional is a moment
    sequence; the induced functional is tracial by construction."""

    nvars: int
    degree: int
    atoms: tuple[tuple[Fraction, MatrixTuple], ...]


def atom_for_class(w: Word, target: ScalarLike, nvars: int) -> tuple[MatrixTuple, Fraction]:
    """Tuple of (len(w))-sized matrices tracing out class ``w``.

    Letter u of the word contributes the shift unit e_{u,u+1} to its
    variable's matrix; the final letter instead contributes the closing
    entry at position (len(w), 1) with value target / primitive_period(w).
    The result's trace at ``w`` is exactly ``target`` (returned as
    ``achieved``), and its trace at every word of degree between 1 and
    len(w) outside the class of ``w`` is zero.
    """
    if not w:
        raise ValueError("cannot build an atom for the empty word")
    target = Fraction(target)
    size = len(w)
    closing = target / primitive_period(w)
    rows = [
        [[Fraction(0)] * size for _ in range(size)] for _ in range(nvars)
    ]
    for u, letter in enumerate(w):
        if u < size - 1:
            rows[letter - 1][u][u + 1] += 1
        else:
            rows[letter - 1][size - 1][0] += closing
    point = MatrixTuple.from_rows(rows)
    achieved = trace_eval(FreePoly.monomial(w, 1, nvars), point)
    return point, achieved


def realize(sequence: TracialMomentSequence) -> Realization:
    """Atoms whose weighted trace functionals reproduce the sequence exactly.

    Inductively over the degree: the residual of each class (its moment
    minus the contribution of atoms already emitted) becomes the closing
    value of one weight-1 atom; classes with zero residual are skipped.
    A weighted 1x1 zero tuple finally matches the empty-word moment.
    """
    g, d = sequence.nvars, sequence.degree
    atoms: list[tuple[Fraction, MatrixTuple]] = []
    for level in range(1, d + 1):
        for rep in class_representatives(g, level):
            monomial = FreePoly.monomial(rep, 1, g)
            current = sum(
                (weight * trace_eval(monomial, point) for weight, point in atoms),
                Fraction(0),
            )
            residual = sequence.values[rep] - current
            if residual:
                point, achieved = atom_for_class(rep, residual, g)
                if achieved != residual:
                    raise AssertionError(
                        f"atom for class {word_to_str(rep)} reached {achieved}, "
                        f"wanted {residual}"
                    )
                atoms.append((Fraction(1), point))
    constant_part = sum(
        (weight * point.n for weight, point in atoms), Fraction(0)
    )
    zero_weight = sequence.values[()] - constant_part
    if zero_weight:
        atoms.append((zero_weight, MatrixTuple.zeros(g, 1)))
    return Realization(g, d, tuple(atoms))


def extract_moments(realization: Realization) -> TracialMomentSequence:
    """The moment sequence of a realization's combined trace functional."""
    g, d = realization.nvars, realization.degree
    values: dict[Word, Fraction] = {}
    for rep in class_representatives_up_to(g, d):
        if rep:
            monomial = FreePoly.monomial(rep, 1, g)
            value = sum(
                (weight * trace_eval(monomial, point)
                 for weight, point in realization.atoms),
                Fraction(0),
            )
        else:
            value = sum(
                (weight * point.n for weight, point in realization.atoms),
                Fraction(0),
            )
        values[rep] = value
    return TracialMomentSequence(g, d, values)


def scale_weights(realization: Realization, factor: ScalarLike) -> Realization:
    factor = Fraction(factor)
    return Realization(
        realization.nvars,
        realization.degree,
        tuple((weight * factor, point) for weight, point in realization.atoms),
    )


def check_constraints(
    sequence: TracialMomentSequence, fs: Sequence[FreePoly]
) -> bool:
    """True iff the sequence is normalized (value 1 at the empty word) and
    annihilates every constraint through its cyclic coordinates."""
    for f in fs:
        if f.degree > sequence.degree:
            raise ValueError(
                f"constraint degree {f.degree} exceeds truncation degree "
                f"{sequence.degree}"
            )
    if sequence.values[()] != 1:
        return False
    for f in fs:
        total = sum(
            (coeff * sequence.value(word) for word, coeff in f.terms.items()),
            Fraction(0),
        )
        if total:
            return False
    return True


# ---------------------------------------------------------------------------
# JSON formats


def moments_to_json_dict(sequence: TracialMomentSequence) -> dict:
    return {
        "g": sequence.nvars,
        "d": sequence.degree,
        "moments": {
            word_to_str(rep): scalar_to_str(sequence.values[rep])
            for rep in class_representatives_up_to(sequence.nvars, sequence.degree)
        },
    }


def moments_from_json_dict(data: dict) -> TracialMomentSequence:
    try:
        g = int(data["g"])
        d = int(data["d"])
        raw = data["moments"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed moment record: {exc}") from exc
    return validate_sequence(raw, g, d)


def realization_to_json_dict(realization: Realization) -> dict:
    return {
        "g": realization.nvars,
        "d": realization.degree,
        "atoms": [
            {"weight": scalar_to_str(weight), "tuple": tuple_to_json_dict(point)}
            for weight, point in realization.atoms
        ],
    }


def realization_from_json_dict(data: dict) -> Realization:
    try:
        g = int(data["g"])
        d = int(data["d"])
        atoms = data["atoms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed realization record: {exc}") from exc
    parsed = tuple(
        (scalar_from_str(atom["weight"]), tuple_from_json_dict(atom["tuple"]))
        for atom in atoms
    )
    return Realization(g, d, parsed)
