"""Exact evaluation of free polynomials on tuples of rational matrices.

Words map to left-to-right matrix products, constants to multiples of the
identity; the trace of the evaluated polynomial gives the trace functional
attached to a matrix tuple.  A doubling construction turns a complex point
(given by its real and imaginary rational parts) into a real one with twice
the real part of every trace, which is how complex evaluations are reduced
to rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import FreePoly, ScalarLike, Word, scalar_from_str, scalar_to_str


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable square matrix with exact rational entries."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValueError("matrix must be square")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]]) -> RationalMatrix:
        return cls(tuple(tuple(Fraction(v) for v in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @classmethod
    def zeros(cls, n: int) -> RationalMatrix:
        return cls.from_rows([[0] * n for _ in range(n)])

    @property
    def n(self) -> int:
        return len(self.entries)

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        if self.n != other.n:
            raise ValueError("size mismatch")
        return RationalMatrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            )
        )

    def __mul__(self, other: object) -> RationalMatrix:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("size mismatch")
        n = self.n
        cols = tuple(zip(*other.entries))
        return RationalMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.entries
            )
        )

    def __rmul__(self, other: object) -> RationalMatrix:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, factor: ScalarLike) -> RationalMatrix:
        factor = Fraction(factor)
        return RationalMatrix(
            tuple(tuple(factor * v for v in row) for row in self.entries)
        )

    def trace(self) -> Fraction:
        return sum((self.entries[i][i] for i in range(self.n)), Fraction(0))


@dataclass(frozen=True)
class MatrixTuple:
    """A point A = (A_1, ..., A_g): matrices of one common size."""

    matrices: tuple[RationalMatrix, ...]

    def __post_init__(self) -> None:
        if self.matrices:
            n = self.matrices[0].n
            if any(m.n != n for m in self.matrices):
                raise ValueError("all matrices in a tuple must share one size")

    @classmethod
    def from_rows(
        cls, matrices: Sequence[Sequence[Sequence[ScalarLike]]]
    ) -> MatrixTuple:
        return cls(tuple(RationalMatrix.from_rows(rows) for rows in matrices))

    @classmethod
    def zeros(cls, g: int, n: int) -> MatrixTuple:
        return cls(tuple(RationalMatrix.zeros(n) for _ in range(g)))

    @property
    def g(self) -> int:
        return len(self.matrices)

    @property
    def n(self) -> int:
        if not self.matrices:
            raise ValueError("empty tuple has no size")
        return self.matrices[0].n


def eval_word(word: Word, point: MatrixTuple) -> RationalMatrix:
    """Left-to-right product of the matrices selected by the word's letters."""
    acc = RationalMatrix.identity(point.n)
    for letter in word:
        acc = acc * point.matrices[letter - 1]
    return acc


def eval_poly(f: FreePoly, point: MatrixTuple) -> RationalMatrix:
    """Substitution homomorphism: exact matrix value of f at the point.

    Word products share prefixes via memoization within one call.
    """
    if point.g != f.nvars:
        raise ValueError(
            f"tuple length {point.g} does not match nvars {f.nvars}"
        )
    n = point.n
    memo: dict[Word, RationalMatrix] = {(): RationalMatrix.identity(n)}

    def product(word: Word) -> RationalMatrix:
        cached = memo.get(word)
        if cached is None:
            cached = product(word[:-1]) * point.matrices[word[-1] - 1]
            memo[word] = cached
        return cached

    acc = RationalMatrix.zeros(n)
    for word, coeff in f.sorted_terms():
        acc = acc + product(word).scale(coeff)
    return acc


def trace_eval(f: FreePoly, point: MatrixTuple) -> Fraction:
    """Trace of f at the point; linear in f and constant on cyclic classes."""
    return eval_poly(f, point).trace()


def complexify_double(real: MatrixTuple, imag: MatrixTuple) -> MatrixTuple:
    """Real 2n-size tuple standing in for the complex point real + i*imag.

    Entry j becomes the block matrix [[b_j, c_j], [-c_j, b_j]]; for every f
    its trace at the result equals twice the real part of the trace of f at
    the complex point.
    """
    if real.g != imag.g:
        raise ValueError("tuples must have the same length")
    if real.g and real.n != imag.n:
        raise ValueError("tuples must have the same size")
    blocks = []
    for b, c in zip(real.matrices, imag.matrices):
        top = [list(rb) + list(rc) for rb, rc in zip(b.entries, c.entries)]
        bottom = [
            [-v for v in rc] + list(rb) for rb, rc in zip(b.entries, c.entries)
        ]
        blocks.append(RationalMatrix.from_rows(top + bottom))
    return MatrixTuple(tuple(blocks))


# ---------------------------------------------------------------------------
# JSON: {"n": int, "g": int, "matrices": [[["p/q", ...], ...], ...]}


def tuple_to_json_dict(point: MatrixTuple) -> dict:
    return {
        "n": point.n,
        "g": point.g,
        "matrices": [
            [[scalar_to_str(v) for v in row] for row in m.entries]
            for m in point.matrices
        ],
    }


def tuple_from_json_dict(data: dict) -> MatrixTuple:
    try:
        n = int(data["n"])
        g = int(data["g"])
        matrices = data["matrices"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix tuple record: {exc}") from exc
    if len(matrices) != g:
        raise ValueError(f"expected {g} matrices, found {len(matrices)}")
    point = MatrixTuple.from_rows(
        [[[scalar_from_str(v) for v in row] for row in rows] for rows in matrices]
    )
    if point.matrices and point.n != n:
        raise ValueError(f"declared size {n} does not match entries")
    return point
