"""Decision procedure for the dimension-free trace implication.

Whether tr(f(A)) vanishes whenever all tr(f_i(A)) vanish, over matrices of
every size, reduces to exact linear algebra on cyclic-class coordinates: the
implication holds iff f is a cyclic-coordinate linear combination of the
constraints, or some combination of the constraints has cyclic coordinates
equal to a nonzero scalar.  Both branches are solved over the rationals by
reduced row echelon form, so the answer is exact and comes with an explicit
coefficient vector as the certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cyclic import CyclicVector, cyclic_canonicalize
from .poly import FreePoly, Word, common_nvars, graded_lex_key, scalar_to_str


@dataclass(frozen=True)
class Certificate:
    """Outcome of the trace-implication decision.

    ``scalar_combination`` holds lambda with sum(lambda_i f_i) cyclically
    equivalent to 1; ``cyc_combination`` holds mu with f cyclically
    equivalent to sum(mu_i f_i).  Either may be present independently;
    ``implication_holds`` is true iff at least one is.
    """

    implication_holds: bool
    scalar_combination: tuple[Fraction, ...] | None
    cyc_combination: tuple[Fraction, ...] | None


@dataclass(frozen=True)
class LinearSystem:
    """Columns and target expressed over a shared ordered basis of classes."""

    basis: tuple[Word, ...]
    columns: tuple[CyclicVector, ...]
    target: CyclicVector


def build_system(columns: Sequence[CyclicVector], target: CyclicVector) -> LinearSystem:
    support: set[Word] = set(target.coords)
    for column in columns:
        support.update(column.coords)
    basis = tuple(sorted(support, key=graded_lex_key))
    return LinearSystem(basis, tuple(columns), target)


def solve_dense(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> list[Fraction] | None:
    """Any exact solution of rows * x = rhs, or None if inconsistent.

    Gauss-Jordan elimination over the rationals; pivots are chosen as the
    first remaining row with a nonzero entry, in input order, and free
    unknowns are set to zero, so the result is deterministic.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    aug = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivot_cols: list[int] = []
    pivot_row = 0
    for col in range(ncols):
        found = None
        for r in range(pivot_row, nrows):
            if aug[r][col]:
                found = r
                break
        if found is None:
            continue
        aug[pivot_row], aug[found] = aug[found], aug[pivot_row]
        scale = aug[pivot_row][col]
        aug[pivot_row] = [v / scale for v in aug[pivot_row]]
        for r in range(nrows):
            if r != pivot_row and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[pivot_row])]
        pivot_cols.append(col)
        pivot_row += 1
    for r in range(pivot_row, nrows):
        if aug[r][ncols]:
            return None
    solution = [Fraction(0)] * ncols
    for i, col in enumerate(pivot_cols):
        solution[col] = aug[i][ncols]
    return solution


def solve_exact(system: LinearSystem) -> list[Fraction] | None:
    """Coefficients c with sum(c_i * column_i) = target, if any exist."""
    if not system.columns:
        return [] if system.target.is_zero() else None
    rows = [
        [column.get(rep) for column in system.columns] for rep in system.basis
    ]
    rhs = [system.target.get(rep) for rep in system.basis]
    if not rows:
        # Empty basis: target and all columns are zero.
        return [Fraction(0)] * len(system.columns)
    return solve_dense(rows, rhs)


def certify_scalar(fs: Sequence[FreePoly]) -> list[Fraction] | None:
    """lambda with sum(lambda_i f_i) cyclically equivalent to 1, or None.

    A combination equivalent to any nonzero scalar c rescales to 1, so only
    target 1 is solved.
    """
    nvars = common_nvars(fs)
    columns = [cyclic_canonicalize(f) for f in fs]
    target = cyclic_canonicalize(FreePoly.one(nvars))
    return solve_exact(build_system(columns, target))


def certify_membership(
    fs: Sequence[FreePoly], f: FreePoly
) -> list[Fraction] | None:
    """mu with f cyclically equivalent to sum(mu_i f_i), or None."""
    columns = [cyclic_canonicalize(p) for p in fs]
    target = cyclic_canonicalize(f)
    return solve_exact(build_system(columns, target))


def certify(fs: Sequence[FreePoly], f: FreePoly) -> Certificate:
    """Decide the trace implication and report both certificate branches.

    The branches are not interchangeable (1 can be a combination of the
    constraints without f being one), so both are computed and reported.
    """
    scalar = certify_scalar(fs)
    membership = certify_membership(fs, f)
    return Certificate(
        implication_holds=scalar is not None or membership is not None,
        scalar_combination=None if scalar is None else tuple(scalar),
        cyc_combination=None if membership is None else tuple(membership),
    )


def certificate_to_json_dict(cert: Certificate) -> dict:
    def render(vec: tuple[Fraction, ...] | None) -> list[str] | None:
        return None if vec is None else [scalar_to_str(v) for v in vec]

    return {
        "implication_holds": cert.implication_holds,
        "scalar_combination": render(cert.scalar_combination),
        "cyc_combination": render(cert.cyc_combination),
    }
