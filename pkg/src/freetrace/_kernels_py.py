"""Pure-Python kernel fallback.

Mirrors the API of the compiled extension ``freetrace._kernels``; selected
automatically when the extension is not built (see ``freetrace.kernels``).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

IMPLEMENTATION = "python"


def min_rotation_index(word: Sequence[int]) -> int:
    """Start index of the lexicographically least rotation (Booth)."""
    n = len(word)
    if n < 2:
        return 0
    doubled = tuple(word) + tuple(word)
    failure = [-1] * (2 * n)
    best = 0
    for j in range(1, 2 * n):
        current = doubled[j]
        i = failure[j - best - 1]
        while i != -1 and current != doubled[best + i + 1]:
            if current < doubled[best + i + 1]:
                best = j - i - 1
            i = failure[i]
        if current != doubled[best + i + 1]:
            if current < doubled[best]:
                best = j
            failure[j - best] = -1
        else:
            failure[j - best] = i + 1
    return best


def poly_trace(
    coeffs: np.ndarray,
    offsets: np.ndarray,
    letters: np.ndarray,
    mats: np.ndarray,
) -> complex:
    """Sum of coeff * tr(word(mats)) over the packed word list.

    ``mats`` has shape (g, n, n); ``letters`` holds 0-based variable indices,
    word t occupying ``letters[offsets[t]:offsets[t+1]]``.  The empty word
    contributes coeff * n.
    """
    n = mats.shape[1]
    total = 0.0 + 0.0j
    for t in range(len(coeffs)):
        word = letters[offsets[t] : offsets[t + 1]]
        if len(word) == 0:
            total += coeffs[t] * n
            continue
        acc = mats[word[0]]
        for letter in word[1:]:
            acc = acc @ mats[letter]
        total += coeffs[t] * np.trace(acc)
    return complex(total)


def poly_trace_grad(
    coeffs: np.ndarray,
    offsets: np.ndarray,
    letters: np.ndarray,
    mats: np.ndarray,
    grad_out: np.ndarray,
) -> complex:
    """Like :func:`poly_trace`, also filling the holomorphic entry gradient.

    ``grad_out`` (shape (g, n, n)) receives d(total)/d(mats[k][p, q]): for a
    word u x_k v the derivative of tr(u x_k v) in the (p, q) entry of x_k is
    (v u)(mats) evaluated at (q, p), summed over occurrences of k.
    """
    g, n, _ = mats.shape
    grad_out[:] = 0
    identity = np.eye(n, dtype=np.complex128)
    total = 0.0 + 0.0j
    for t in range(len(coeffs)):
        word = letters[offsets[t] : offsets[t + 1]]
        m = len(word)
        coeff = coeffs[t]
        if m == 0:
            total += coeff * n
            continue
        prefix = [identity]
        for letter in word:
            prefix.append(prefix[-1] @ mats[letter])
        suffix = [identity] * (m + 1)
        for j in range(m - 1, -1, -1):
            suffix[j] = mats[word[j]] @ suffix[j + 1]
        total += coeff * np.trace(prefix[m])
        for j in range(m):
            grad_out[word[j]] += coeff * (suffix[j + 1] @ prefix[j]).T
    return complex(total)
