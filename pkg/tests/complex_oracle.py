"""Exact complex-rational evaluation, used only as a test oracle.

Evaluates free polynomials on tuples of matrices whose entries are Gaussian
rationals (pairs of Fractions), independently of the package's evaluation
code, to check the real doubling construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from freetrace.mateval import MatrixTuple
from freetrace.poly import FreePoly


@dataclass(frozen=True)
class ComplexRational:
    re: Fraction
    im: Fraction

    def __add__(self, other: "ComplexRational") -> "ComplexRational":
        return ComplexRational(self.re + other.re, self.im + other.im)

    def __mul__(self, other: "ComplexRational") -> "ComplexRational":
        return ComplexRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def scale(self, factor: Fraction) -> "ComplexRational":
        return ComplexRational(self.re * factor, self.im * factor)


CZERO = ComplexRational(Fraction(0), Fraction(0))
CONE = ComplexRational(Fraction(1), Fraction(0))

Matrix = list[list[ComplexRational]]


def _combine(real: MatrixTuple, imag: MatrixTuple) -> list[Matrix]:
    out = []
    for b, c in zip(real.matrices, imag.matrices):
        out.append(
            [
                [ComplexRational(bv, cv) for bv, cv in zip(brow, crow)]
                for brow, crow in zip(b.entries, c.entries)
            ]
        )
    return out


def _identity(n: int) -> Matrix:
    return [[CONE if i == j else CZERO for j in range(n)] for i in range(n)]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    out = [[CZERO for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            aik = a[i][k]
            if aik == CZERO:
                continue
            for j in range(n):
                out[i][j] = out[i][j] + aik * b[k][j]
    return out


def trace_eval_complex(
    f: FreePoly, real: MatrixTuple, imag: MatrixTuple
) -> ComplexRational:
    """Exact trace of f at the complex point real + i*imag."""
    mats = _combine(real, imag)
    n = real.n
    total = CZERO
    for word, coeff in f.terms.items():
        acc = _identity(n)
        for letter in word:
            acc = _matmul(acc, mats[letter - 1])
        trace = CZERO
        for i in range(n):
            trace = trace + acc[i][i]
        total = total + trace.scale(coeff)
    return total
