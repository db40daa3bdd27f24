"""Numeric witness search and the exact constraint-tuple generator."""

import random
from fractions import Fraction

import numpy as np
import pytest

from freetrace import kernels
from freetrace.bounds import matrix_size_bound
from freetrace.certify import certify
from freetrace.mateval import trace_eval
from freetrace.poly import FreePoly, parse
from freetrace.witness import (
    IsolationError,
    compile_poly,
    exact_constraint_tuples,
    search_witness,
)

from helpers import random_commutator_sum, random_fraction, random_poly


def numpy_poly_trace(f, mats):
    """Independent trace evaluation used to recheck reported residuals."""
    n = mats.shape[1]
    total = 0j
    for word, coeff in f.terms.items():
        acc = np.eye(n, dtype=complex)
        for letter in word:
            acc = acc @ mats[letter - 1]
        total += complex(coeff) * np.trace(acc)
    return total


# ---------------------------------------------------------------------------
# gradients


def test_gradient_matches_finite_differences():
    rng = random.Random(31)
    np_rng = np.random.default_rng(31)
    checked = 0
    while checked < 100:
        g = rng.randint(1, 3)
        n = rng.randint(1, 3)
        length = rng.randint(1, 4)
        word = tuple(rng.randint(1, g) for _ in range(length))
        f = FreePoly.monomial(word, 1, g)
        compiled = compile_poly(f)
        mats = np_rng.normal(size=(g, n, n)) + 1j * np_rng.normal(size=(g, n, n))
        grad = np.empty((g, n, n), dtype=np.complex128)
        kernels.poly_trace_grad(
            compiled.coeffs, compiled.offsets, compiled.letters, mats, grad
        )
        k = rng.randrange(g)
        p = rng.randrange(n)
        q = rng.randrange(n)
        h = 1e-6
        bumped = mats.copy()
        bumped[k, p, q] += h
        dipped = mats.copy()
        dipped[k, p, q] -= h
        fd = (
            kernels.poly_trace(compiled.coeffs, compiled.offsets, compiled.letters, bumped)
            - kernels.poly_trace(compiled.coeffs, compiled.offsets, compiled.letters, dipped)
        ) / (2 * h)
        analytic = grad[k, p, q]
        scale = max(abs(analytic), 1.0)
        assert abs(fd - analytic) / scale < 1e-6
        checked += 1


# ---------------------------------------------------------------------------
# search_witness


def test_witness_simple_separation():
    report = search_witness([parse("x1", 2)], parse("x2", 2), n=1, restarts=10)
    assert report is not None
    assert report.constraint_residual < 1e-9
    assert report.target_value > 0.5
    mats = report.matrices
    assert abs(numpy_poly_trace(parse("x1", 2), mats)) < 1e-9
    assert abs(numpy_poly_trace(parse("x2", 2), mats)) > 0.5


def test_witness_square_constraint_needs_size_two():
    fs = [parse("x1^2", 1)]
    f = parse("x1", 1)
    assert search_witness(fs, f, n=1, restarts=8) is None
    report = search_witness(fs, f, n=2, restarts=100)
    assert report is not None
    assert report.constraint_residual < 1e-9
    assert report.target_value > 0.5


def test_witness_unsatisfiable_constraint():
    assert search_witness([FreePoly.one(1)], parse("x1", 1), n=3, restarts=5) is None


def test_witness_no_constraints():
    report = search_witness([], parse("x1", 1), n=1, restarts=5)
    assert report is not None
    assert report.target_value > 0.5
    assert search_witness([], parse("x1*x2 - x2*x1", 2), n=2, restarts=5) is None


def test_witness_determinism():
    fs = [parse("x1^2", 1)]
    f = parse("x1", 1)
    first = search_witness(fs, f, n=2, restarts=20, seed=5)
    second = search_witness(fs, f, n=2, restarts=20, seed=5)
    assert first is not None and second is not None
    assert np.array_equal(first.matrices, second.matrices)
    assert first.constraint_residual == second.constraint_residual
    assert first.target_value == second.target_value
    assert first.iterations == second.iterations
    assert first.restarts_used == second.restarts_used


def test_witness_report_thresholds_recomputed():
    rng = random.Random(32)
    found = 0
    for trial in range(30):
        g = rng.randint(1, 2)
        fs = [random_poly(rng, g, max_degree=2, max_terms=2, span=2)]
        f = random_poly(rng, g, max_degree=2, max_terms=2, span=2)
        report = search_witness(fs, f, n=2, restarts=5, seed=trial)
        if report is None:
            continue
        found += 1
        residual = max(
            (abs(numpy_poly_trace(p, report.matrices)) for p in fs), default=0.0
        )
        assert residual < 1e-9
        assert abs(residual - report.constraint_residual) < 1e-12
        target = abs(numpy_poly_trace(f, report.matrices))
        assert target > 0.5
        assert abs(target - report.target_value) < 1e-12
        assert np.all(np.isfinite(report.matrices))
    assert found > 0


def test_witness_none_on_certified_instances():
    rng = random.Random(33)
    for _ in range(50):
        g = rng.randint(1, 3)
        r = rng.randint(1, 3)
        fs = [random_poly(rng, g, max_degree=3, max_terms=3) for _ in range(r)]
        f = FreePoly.zero(g)
        for fi in fs:
            f = f + fi.scale(random_fraction(rng, 5))
        f = f + random_commutator_sum(rng, g, count=2, total_degree=3)
        assert certify(fs, f).implication_holds
        degrees = tuple(
            sorted((max(fi.degree, 1) for fi in fs), reverse=True)
        )
        n = min(matrix_size_bound(degrees, max(f.degree, 1), g), 6)
        report = search_witness(
            fs, f, n=n, restarts=20, seed=rng.randint(0, 10**6), max_iterations=60
        )
        assert report is None


def test_witness_validates_arguments():
    with pytest.raises(ValueError):
        search_witness([], parse("x1", 1), n=0)
    with pytest.raises(ValueError):
        search_witness([], parse("x1", 1), n=1, tol=0.0)


# ---------------------------------------------------------------------------
# exact_constraint_tuples


def test_exact_tuples_trace_constraint():
    points = exact_constraint_tuples([parse("x1", 2)], n=2, count=5, seed=1)
    f = parse("x1", 2)
    for point in points:
        assert trace_eval(f, point) == 0
        a1 = point.matrices[0]
        assert a1.entries[0][0] + a1.entries[1][1] == 0


def test_exact_tuples_linear_combination():
    points = exact_constraint_tuples([parse("x1 + x2", 2)], n=1, count=5, seed=2)
    for point in points:
        a, b = point.matrices[0].entries[0][0], point.matrices[1].entries[0][0]
        assert a + b == 0


def test_exact_tuples_sandwich_word():
    f = parse("x1*x2*x1", 2)
    points = exact_constraint_tuples([f], n=2, count=5, seed=3)
    for point in points:
        assert trace_eval(f, point) == 0


def test_exact_tuples_multiple_constraints():
    rng = random.Random(34)
    produced = 0
    attempts = 0
    while produced < 15 and attempts < 60:
        attempts += 1
        g = rng.randint(1, 3)
        r = rng.randint(1, 3)
        fs = [random_poly(rng, g, max_degree=3, max_terms=3) for _ in range(r)]
        n = rng.randint(1, 3)
        try:
            points = exact_constraint_tuples(fs, n, 2, seed=attempts)
        except IsolationError:
            continue
        for point in points:
            for f in fs:
                assert trace_eval(f.promote(g), point) == 0
        produced += 1
    assert produced >= 15


def test_exact_tuples_determinism():
    fs = [parse("x1*x2", 2)]
    first = exact_constraint_tuples(fs, n=2, count=3, seed=9)
    second = exact_constraint_tuples(fs, n=2, count=3, seed=9)
    assert first == second


def test_exact_tuples_unsatisfiable():
    with pytest.raises(IsolationError):
        exact_constraint_tuples([FreePoly.one(1)], n=2, count=1, seed=4)


def test_exact_tuples_no_constraints():
    points = exact_constraint_tuples([], n=2, count=3, seed=5)
    assert len(points) == 3
    assert points[0].g == 1 and points[0].n == 2
