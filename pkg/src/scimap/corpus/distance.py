"""Optimal-string-alignment edit distance and percent title similarity."""
from __future__ import annotations

import re
import unicodedata

import numpy as np

from .._accel import kernel, pick

_WS = re.compile(r"\s+")


def _codes(s: str) -> np.ndarray:
    return np.frombuffer(s.encode("utf-32-le"), dtype=np.uint32)


@kernel
def _osa(a, b, bound):
    # Three rolling rows; returns bound + 1 once every cell of a row exceeds bound.
    n = a.shape[0]
    m = b.shape[0]
    if n < m:
        a, b = b, a
        n, m = m, n
    if n - m > bound:
        return bound + 1
    if m == 0:
        return n
    prev2 = np.empty(m + 1, dtype=np.int64)
    prev = np.empty(m + 1, dtype=np.int64)
    cur = np.empty(m + 1, dtype=np.int64)
    for j in range(m + 1):
        prev[j] = j
        prev2[j] = 0
    for i in range(1, n + 1):
        cur[0] = i
        row_min = i
        ai = a[i - 1]
        for j in range(1, m + 1):
            bj = b[j - 1]
            cost = 0 if ai == bj else 1
            best = prev[j - 1] + cost
            if prev[j] + 1 < best:
                best = prev[j] + 1
            if cur[j - 1] + 1 < best:
                best = cur[j - 1] + 1
            if i > 1 and j > 1 and ai == b[j - 2] and a[i - 2] == bj:
                if prev2[j - 2] + 1 < best:
                    best = prev2[j - 2] + 1
            cur[j] = best
            if best < row_min:
                row_min = best
        if row_min > bound:
            return bound + 1
        prev2, prev, cur = prev, cur, prev2
    return prev[m]


def damerau_levenshtein(a: str, b: str) -> int:
    """Restricted Damerau-Levenshtein (optimal string alignment) distance.

    Counts insertions, deletions, substitutions and transpositions of two
    adjacent characters, with no substring edited more than once.

    >>> damerau_levenshtein("kitten", "sitting")
    3
    >>> damerau_levenshtein("CA", "AC")
    1
    """
    if a == b:
        return 0
    return int(pick(_osa)(_codes(a), _codes(b), max(len(a), len(b))))


def bounded_distance(a: str, b: str, bound: int) -> int:
    """Like :func:`damerau_levenshtein` but returns ``bound + 1`` for anything larger."""
    if a == b:
        return 0
    return int(pick(_osa)(_codes(a), _codes(b), bound))


def normalize_title(text: str) -> str:
    text = unicodedata.normalize("NFKC", text).lower()
    text = "".join(ch for ch in text if not unicodedata.category(ch).startswith("P"))
    return _WS.sub(" ", text).strip()


def title_similarity(a: str, b: str) -> float:
    """Percent similarity ``100 * (1 - d / max(len))`` of normalised titles."""
    na, nb = normalize_title(a), normalize_title(b)
    longest = max(len(na), len(nb))
    if longest == 0:
        raise ValueError("nothing to compare")
    return 100.0 * (1.0 - damerau_levenshtein(na, nb) / longest)


def max_edits(longest: int, threshold_percent: float) -> int:
    """Largest distance that still reaches ``threshold_percent`` for this length."""
    # small epsilon keeps exact-boundary cases such as 95% of 20 chars on the inclusive side
    return int(np.floor(longest * (1.0 - threshold_percent / 100.0) + 1e-9))
