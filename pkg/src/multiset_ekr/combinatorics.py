"""Exact counting and lexicographic ranking of k-subsets and k-multisets.

Sets and multisets are handled as sorted tuples of elements drawn from
``1..n`` (resp. ``1..m``).  Ranks are positions in lexicographic order of
those tuples, which is also the order produced by
``itertools.combinations`` / ``itertools.combinations_with_replacement``.
"""

from __future__ import annotations

from math import comb
from typing import Sequence

__all__ = [
    "binomial",
    "multichoose",
    "rank_subset",
    "unrank_subset",
    "rank_multiset",
    "unrank_multiset",
    "multiset_to_subset",
    "subset_to_multiset",
]


def binomial(n: int, k: int) -> int:
    """n choose k, with 0 outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError(f"binomial: n must be non-negative, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def multichoose(m: int, k: int) -> int:
    """Number of k-multisets over an m-set, ``binomial(m + k - 1, k)``."""
    if k < 0:
        raise ValueError(f"multichoose: k must be non-negative, got {k}")
    if m < 0:
        raise ValueError(f"multichoose: m must be non-negative, got {m}")
    if m == 0:
        if k > 0:
            raise ValueError("multichoose: empty universe has no k-multisets for k > 0")
        return 1
    return comb(m + k - 1, k)


def _check_subset(s: Sequence[int], n: int) -> None:
    prev = 0
    for x in s:
        if x <= prev:
            raise ValueError(f"subset must be strictly increasing: {tuple(s)}")
        prev = x
    if s and s[-1] > n:
        raise ValueError(f"subset element {s[-1]} outside [1, {n}]")


def rank_subset(s: Sequence[int], n: int) -> int:
    """Lexicographic rank of the sorted k-subset ``s`` of ``[1, n]``."""
    _check_subset(s, n)
    k = len(s)
    r = 0
    prev = 0
    for i, x in enumerate(s):
        # every subset that agrees on s[:i] and has a smaller i-th element
        for y in range(prev + 1, x):
            r += comb(n - y, k - i - 1)
        prev = x
    return r


def unrank_subset(r: int, n: int, k: int) -> tuple[int, ...]:
    """Inverse of :func:`rank_subset`."""
    total = binomial(n, k)
    if not 0 <= r < total:
        raise ValueError(f"rank {r} out of range [0, {total}) for C({n},{k})")
    out = []
    x = 1
    for i in range(k):
        while True:
            block = comb(n - x, k - i - 1)
            if r < block:
                break
            r -= block
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def multiset_to_subset(a: Sequence[int]) -> tuple[int, ...]:
    """Stars and bars: nondecreasing ``a`` over [m] -> k-subset of [m+k-1]."""
    return tuple(x + j for j, x in enumerate(a))


def subset_to_multiset(s: Sequence[int]) -> tuple[int, ...]:
    return tuple(x - j for j, x in enumerate(s))


def rank_multiset(a: Sequence[int], m: int) -> int:
    """Lexicographic rank of a sorted k-multiset (element list) over ``[1, m]``."""
    if any(x > y for x, y in zip(a, a[1:])):
        raise ValueError(f"multiset element list must be nondecreasing: {tuple(a)}")
    if a and (a[0] < 1 or a[-1] > m):
        raise ValueError(f"multiset elements must lie in [1, {m}]: {tuple(a)}")
    return rank_subset(multiset_to_subset(a), m + len(a) - 1)


def unrank_multiset(r: int, m: int, k: int) -> tuple[int, ...]:
    total = multichoose(m, k)
    if not 0 <= r < total:
        raise ValueError(f"rank {r} out of range [0, {total}) for (({m},{k}))")
    return subset_to_multiset(unrank_subset(r, m + k - 1, k))
