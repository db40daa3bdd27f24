"""Effective degree bounds for Bezout cofactors and the matrix-size bound.

The two piecewise degree bounds take the ambient commutative variable count
n and a nonincreasing list of constraint degrees; the size bound gives a
single matrix size at which testing the trace implication suffices for all
sizes.  Everything is big-integer exact.
"""

from __future__ import annotations

from math import isqrt
from typing import Sequence


def _check_degrees(degrees: Sequence[int]) -> tuple[int, ...]:
    degrees = tuple(int(d) for d in degrees)
    if not degrees:
        raise ValueError("degrees must be nonempty")
    if any(d < 1 for d in degrees):
        raise ValueError("degrees must all be >= 1")
    if any(a < b for a, b in zip(degrees, degrees[1:])):
        raise ValueError("degrees must be nonincreasing")
    return degrees


def _product(values: Sequence[int]) -> int:
    out = 1
    for v in values:
        out *= v
    return out


def degree_bound(n: int, degrees: Sequence[int]) -> int:
    """Base cofactor degree bound; piecewise in r vs n."""
    degrees = _check_degrees(degrees)
    if n < 1:
        raise ValueError("n must be >= 1")
    r = len(degrees)
    if r <= n:
        return _product(degrees)
    if n > 1:
        return _product(degrees[: n - 1]) * degrees[-1]
    return degrees[0] + degrees[-1] - 1


def degree_bound_refined(n: int, degrees: Sequence[int]) -> int:
    """Refined bound; doubles (minus one) only when r > n and the smallest
    degree is at most 2."""
    degrees = _check_degrees(degrees)
    if n < 1:
        raise ValueError("n must be >= 1")
    r = len(degrees)
    base = degree_bound(n, degrees)
    if r <= n or degrees[-1] > 2:
        return base
    if n > 1:
        return 2 * base - 1
    return 2 * degrees[0] - 1


def _ceil_sqrt_ratio(p: int, q: int) -> int:
    """Smallest integer m with m*m >= p/q (p >= 0, q >= 1)."""
    m = isqrt(p // q)
    while m * m * q < p:
        m += 1
    return m


def matrix_size_bound(degrees: Sequence[int], target_degree: int, g: int) -> int:
    """Matrix size at which the trace implication becomes dimension-free.

    Ceiling of max(prod(degrees) * target_degree, sqrt(g/r), sqrt(r/g)); the
    two square-root variants are both taken, and the larger wins, since a
    larger test size is always sound.
    """
    degrees = _check_degrees(degrees)
    r = len(degrees)
    if g < 1:
        raise ValueError("g must be >= 1")
    if target_degree < 0:
        raise ValueError("target_degree must be >= 0")
    product_term = _product(degrees) * target_degree
    return max(product_term, _ceil_sqrt_ratio(g, r), _ceil_sqrt_ratio(r, g))
