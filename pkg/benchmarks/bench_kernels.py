"""Benchmark the compiled kernels against the pure-Python fallback.

Times the two hot inner loops behind ``freetrace.kernels``: Booth minimal
rotation (run for every word during cyclic canonicalization) and the complex
word-trace/gradient evaluation (run every iteration of the witness search).

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from freetrace import _kernels_py

try:
    from freetrace import _kernels
except ImportError:
    _kernels = None


def time_call(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_min_rotation(backend, words) -> float:
    def body():
        for word in words:
            backend.min_rotation_index(word)

    return body


def bench_trace_grad(backend, problems) -> float:
    def body():
        for coeffs, offsets, letters, mats, grad in problems:
            backend.poly_trace_grad(coeffs, offsets, letters, mats, grad)

    return body


def make_words(rng: random.Random, count: int, max_len: int):
    return [
        tuple(rng.randint(1, 3) for _ in range(rng.randint(1, max_len)))
        for _ in range(count)
    ]


def make_problems(np_rng, count: int, g: int, n: int, terms: int, degree: int):
    problems = []
    for _ in range(count):
        coeffs = (np_rng.normal(size=terms) + 1j * np_rng.normal(size=terms)).astype(
            np.complex128
        )
        letters = []
        offsets = [0]
        for _ in range(terms):
            length = int(np_rng.integers(1, degree + 1))
            letters.extend(int(v) for v in np_rng.integers(0, g, size=length))
            offsets.append(len(letters))
        mats = np_rng.normal(size=(g, n, n)) + 1j * np_rng.normal(size=(g, n, n))
        grad = np.empty((g, n, n), dtype=np.complex128)
        problems.append(
            (
                coeffs,
                np.array(offsets, dtype=np.int32),
                np.array(letters, dtype=np.int32),
                mats,
                grad,
            )
        )
    return problems


def report(label: str, python_time: float, cython_time: float | None) -> None:
    line = f"{label:<42} python {python_time * 1e3:8.2f} ms"
    if cython_time is not None:
        line += f"   cython {cython_time * 1e3:8.2f} ms   speedup {python_time / cython_time:6.1f}x"
    print(line)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    if _kernels is None:
        print("compiled extension not built; timing the fallback only")

    rng = random.Random(0)
    np_rng = np.random.default_rng(0)

    cases = [
        ("min_rotation, 20000 words, len <= 8", bench_min_rotation, make_words(rng, 20000, 8)),
        ("min_rotation, 5000 words, len <= 64", bench_min_rotation, make_words(rng, 5000, 64)),
    ]
    for label, make_body, payload in cases:
        python_time = time_call(make_body(_kernels_py, payload), args.repeats)
        cython_time = (
            time_call(make_body(_kernels, payload), args.repeats)
            if _kernels is not None
            else None
        )
        report(label, python_time, cython_time)

    grad_cases = [
        ("trace+grad, 400 polys, g=2 n=3 deg<=4", make_problems(np_rng, 400, 2, 3, 4, 4)),
        ("trace+grad, 200 polys, g=3 n=6 deg<=5", make_problems(np_rng, 200, 3, 6, 6, 5)),
    ]
    for label, problems in grad_cases:
        python_time = time_call(bench_trace_grad(_kernels_py, problems), args.repeats)
        cython_time = (
            time_call(bench_trace_grad(_kernels, problems), args.repeats)
            if _kernels is not None
            else None
        )
        report(label, python_time, cython_time)


if __name__ == "__main__":
    main()
