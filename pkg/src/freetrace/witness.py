"""Numeric search for counterexamples to the trace implication.

When no certificate exists there is a complex matrix tuple on which every
constraint trace vanishes while the target trace does not.  This module
looks for such witnesses with a damped Gauss-Newton (Levenberg-Marquardt)
descent on the real and imaginary parts of the entries: first the constraint
traces are driven to zero, then a one-sided penalty pushes the target trace
away from zero while the constraints are kept pinned.  Failure to find a
witness proves nothing; the decision procedure lives in ``certify``.

The module also provides an exact generator of constraint-satisfying
rational tuples (used to cross-check positive certificates): it designates
one matrix entry per constraint, probes the trace for affine dependence on
the designated entries, solves the resulting exact linear system, and
verifies the result with rational arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .certify import solve_dense
from .mateval import MatrixTuple, trace_eval
from .poly import FreePoly, common_nvars

DEFAULT_SEED = 271828

Slot = tuple[int, int, int]  # (variable index 0-based, row, column)


class IsolationError(ValueError):
    """No designated-entry scheme made the constraints exactly solvable."""


@dataclass(frozen=True)
class CompiledPoly:
    """Packed word list of a polynomial for the kernel backends."""

    coeffs: np.ndarray  # complex128[nterms]
    offsets: np.ndarray  # int32[nterms + 1]
    letters: np.ndarray  # int32[total letters], 0-based


def compile_poly(f: FreePoly) -> CompiledPoly:
    terms = f.sorted_terms()
    coeffs = np.array([complex(c) for _, c in terms], dtype=np.complex128)
    letters: list[int] = []
    offsets = [0]
    for word, _ in terms:
        letters.extend(letter - 1 for letter in word)
        offsets.append(len(letters))
    return CompiledPoly(
        coeffs,
        np.array(offsets, dtype=np.int32),
        np.array(letters, dtype=np.int32),
    )


@dataclass
class WitnessReport:
    """A found witness; residuals are recomputed from the reported tuple."""

    matrices: np.ndarray  # complex128[g, n, n]
    constraint_residual: float
    target_value: float
    iterations: int
    restarts_used: int


def _pack(x: np.ndarray, g: int, n: int) -> np.ndarray:
    half = g * n * n
    return (x[:half] + 1j * x[half:]).reshape(g, n, n)


def _trace_rows(grad: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Real Jacobian rows of (Re T, Im T) from the holomorphic gradient."""
    gx = grad.reshape(-1)
    real_row = np.concatenate([gx.real, -gx.imag])
    imag_row = np.concatenate([gx.imag, gx.real])
    return real_row, imag_row


def _residual_function(
    constraints: Sequence[CompiledPoly],
    target: CompiledPoly | None,
    g: int,
    n: int,
) -> Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]:
    grad = np.empty((g, n, n), dtype=np.complex128)
    nparams = 2 * g * n * n

    def evaluate(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        mats = _pack(x, g, n)
        residuals: list[float] = []
        rows: list[np.ndarray] = []
        for poly in constraints:
            value = kernels.poly_trace_grad(
                poly.coeffs, poly.offsets, poly.letters, mats, grad
            )
            real_row, imag_row = _trace_rows(grad)
            residuals.extend((value.real, value.imag))
            rows.extend((real_row, imag_row))
        if target is not None:
            value = kernels.poly_trace_grad(
                target.coeffs, target.offsets, target.letters, mats, grad
            )
            magnitude = abs(value)
            if magnitude < 0.5:
                residuals.append(0.5 - magnitude)
                gx = grad.reshape(-1)
                if magnitude > 1e-12:
                    u = np.conj(value) / magnitude
                    da = np.concatenate([(u * gx).real, -(u * gx).imag])
                else:
                    # |T| is not smooth at 0; kick along the raw gradient.
                    da = np.concatenate([gx.real, gx.imag])
                rows.append(-da)
        if not residuals:
            return np.zeros(0), np.zeros((0, nparams))
        return np.array(residuals), np.array(rows)

    return evaluate


def _levmar(
    x0: np.ndarray,
    fn: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]],
    max_iter: int,
    cost_tol: float,
) -> tuple[np.ndarray, float, int]:
    x = x0.copy()
    res, jac = fn(x)
    if res.size == 0:
        return x, 0.0, 0
    cost = float(res @ res)
    lam = 1e-3
    eye = np.eye(x.size)
    iterations = 0
    while iterations < max_iter and cost > cost_tol:
        iterations += 1
        normal = jac.T @ jac
        gradient = jac.T @ res
        improved = False
        for _ in range(15):
            try:
                step = np.linalg.solve(normal + lam * eye, -gradient)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            candidate = x + step
            res_new, jac_new = fn(candidate)
            cost_new = float(res_new @ res_new)
            if np.isfinite(cost_new) and cost_new < cost:
                x, res, jac, cost = candidate, res_new, jac_new, cost_new
                lam = max(lam * 0.3, 1e-14)
                improved = True
                break
            lam *= 10.0
            if lam > 1e14:
                break
        if not improved:
            break
    return x, cost, iterations


def search_witness(
    fs: Sequence[FreePoly],
    f: FreePoly,
    n: int,
    tol: float = 1e-9,
    restarts: int = 20,
    seed: int = DEFAULT_SEED,
    max_iterations: int = 300,
) -> WitnessReport | None:
    """Best-effort witness with all |tr f_i| < tol and |tr f| > 1/2.

    Deterministic for a fixed seed; restarts are tried in index order and the
    first success is returned.  Returning None is inconclusive.
    """
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    g = max(common_nvars(fs), f.nvars)
    compiled_constraints = [compile_poly(p) for p in fs]
    compiled_target = compile_poly(f)
    phase1 = _residual_function(compiled_constraints, None, g, n)
    phase2 = _residual_function(compiled_constraints, compiled_target, g, n)
    settle_tol = (0.1 * tol) ** 2

    for restart in range(restarts):
        rng = np.random.default_rng([seed, restart])
        x = rng.normal(scale=1.0, size=2 * g * n * n)
        x, _, iters1 = _levmar(x, phase1, max_iterations, settle_tol)
        mats = _pack(x, g, n)
        residual = _max_constraint_residual(compiled_constraints, mats, n)
        if residual >= 10 * tol:
            continue
        x, _, iters2 = _levmar(x, phase2, max_iterations, settle_tol)
        mats = _pack(x, g, n)
        residual = _max_constraint_residual(compiled_constraints, mats, n)
        target_value = abs(
            kernels.poly_trace(
                compiled_target.coeffs,
                compiled_target.offsets,
                compiled_target.letters,
                mats,
            )
        )
        if residual < tol and target_value > 0.5 and np.all(np.isfinite(mats)):
            return WitnessReport(
                matrices=mats.copy(),
                constraint_residual=residual,
                target_value=target_value,
                iterations=iters1 + iters2,
                restarts_used=restart + 1,
            )
    return None


def _max_constraint_residual(
    constraints: Sequence[CompiledPoly], mats: np.ndarray, n: int
) -> float:
    worst = 0.0
    for poly in constraints:
        value = kernels.poly_trace(poly.coeffs, poly.offsets, poly.letters, mats)
        worst = max(worst, abs(value))
    return worst


def report_to_json_dict(report: WitnessReport) -> dict:
    g, n, _ = report.matrices.shape
    return {
        "n": n,
        "g": g,
        "matrices": [
            [[[entry.real, entry.imag] for entry in row] for row in matrix]
            for matrix in report.matrices
        ],
        "constraint_residual": report.constraint_residual,
        "target_value": report.target_value,
        "iterations": report.iterations,
        "restarts_used": report.restarts_used,
    }


# ---------------------------------------------------------------------------
# Exact constraint-satisfying tuples


def exact_constraint_tuples(
    fs: Sequence[FreePoly],
    n: int,
    count: int,
    seed: int = DEFAULT_SEED,
    attempts_per_tuple: int = 80,
) -> list[MatrixTuple]:
    """Rational tuples with trace_eval(f_i, A) = 0 exactly for every i.

    For each tuple, one entry per constraint is designated as an unknown;
    the constraint traces are probed for joint affine dependence on the
    designated entries, the affine system is solved exactly, and the result
    is verified by exact evaluation (nonaffine interference triggers a retry
    with fresh randomness).  Raises IsolationError when no scheme works.
    """
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    fs = list(fs)
    g = common_nvars(fs)
    fs = [f.promote(g) for f in fs]
    rng = random.Random(seed)
    points: list[MatrixTuple] = []
    for _ in range(count):
        point = _solve_one_tuple(fs, n, g, rng, attempts_per_tuple)
        if point is None:
            raise IsolationError(
                "cannot isolate affine entry: no designated-entry scheme "
                f"solved the constraints exactly at size {n}"
            )
        points.append(point)
    return points


def _tuple_from_entries(entries: dict[Slot, Fraction], g: int, n: int) -> MatrixTuple:
    rows = [
        [[entries[(k, p, q)] for q in range(n)] for p in range(n)]
        for k in range(g)
    ]
    return MatrixTuple.from_rows(rows)


def _solve_one_tuple(
    fs: list[FreePoly], n: int, g: int, rng: random.Random, attempts: int
) -> MatrixTuple | None:
    slots: list[Slot] = [
        (k, p, q) for k in range(g) for p in range(n) for q in range(n)
    ]
    if not fs:
        entries = {
            slot: Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for slot in slots
        }
        return _tuple_from_entries(entries, g, n)
    r = len(fs)
    if len(slots) < r:
        return None
    for _ in range(attempts):
        entries = {
            slot: Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for slot in slots
        }
        designated = rng.sample(slots, r)

        def at(values: Sequence[Fraction]) -> MatrixTuple:
            trial = dict(entries)
            for slot, value in zip(designated, values):
                trial[slot] = Fraction(value)
            return _tuple_from_entries(trial, g, n)

        zero = [Fraction(0)] * r
        base_point = at(zero)
        base_values = [trace_eval(f, base_point) for f in fs]
        slopes: list[list[Fraction]] = [[] for _ in range(r)]
        for j in range(r):
            probe = list(zero)
            probe[j] = Fraction(1)
            probe_point = at(probe)
            for i, f in enumerate(fs):
                slopes[i].append(trace_eval(f, probe_point) - base_values[i])
        solution = solve_dense(slopes, [-v for v in base_values])
        if solution is None:
            continue
        candidate = at(solution)
        if all(trace_eval(f, candidate) == 0 for f in fs):
            return candidate
    return None
