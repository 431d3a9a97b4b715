"""Support exchange for intersecting families with ``m <= k``.

Given an intersecting family whose smallest support ``S`` has fewer than
``m/2`` elements, dropping every member with support ``S`` and adding
every k-multiset supported on ``[m] \\ S`` keeps the family intersecting
and makes it strictly larger.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .combinatorics import binomial
from .families import (
    Family,
    Multiset,
    complement,
    first_violation,
    level_family,
    support,
)


class ExchangeError(ValueError):
    pass


@dataclass(frozen=True)
class ExchangeTrace:
    chosen: Multiset
    support_size: int
    removed: int
    added: int

    @property
    def gain(self) -> int:
        return self.added - self.removed

    def to_json(self) -> dict:
        return {
            "chosen": list(self.chosen.elements),
            "support": sorted(support(self.chosen)),
            "support_size": self.support_size,
            "removed": self.removed,
            "added": self.added,
            "gain": self.gain,
        }


def min_support_member(f: Family) -> Multiset:
    """A member of smallest support size; ties go to the lowest rank."""
    if not len(f):
        raise ExchangeError("empty family has no minimum-support member")
    # members are already in rank order, and min() keeps the first minimum
    return min(f, key=lambda a: len(support(a)))


def exchange(f: Family, chosen: Multiset, check: bool = True) -> tuple[Family, ExchangeTrace]:
    """Swap the support class of ``chosen`` for the complementary support class.

    Requires ``2 < m <= k``, ``chosen`` in ``f`` with support smaller than
    m/2, and no member whose support is a proper subset of
    ``support(chosen)`` (automatic when ``chosen`` has minimum support).
    With ``check`` the family is also verified to be intersecting first.
    """
    m, k = f.m, f.k
    if m <= 2:
        raise ExchangeError("exchange needs m > 2")
    if m > k:
        raise ExchangeError(f"exchange needs m <= k, got m={m}, k={k}")
    if chosen not in f:
        raise ExchangeError(f"{chosen!r} is not a member of the family")
    s = support(chosen)
    i = len(s)
    if 2 * i >= m:
        raise ExchangeError(f"support size {i} is not below m/2 = {m / 2}")
    if any(support(a) < s for a in f):
        raise ExchangeError(f"some member has support strictly inside {sorted(s)}")
    if check and first_violation(f) is not None:
        raise ExchangeError("family is not intersecting")
    removed = f.filter(lambda a: support(a) == s)
    sc = complement(s, m)
    added = level_family(m, k, m - i).filter(lambda a: support(a) == sc)
    out = (f - removed) | added
    return out, ExchangeTrace(chosen, i, len(removed), len(added))


def support_class_size(k: int, i: int) -> int:
    """Number of k-multisets with one fixed support of size ``i``."""
    return binomial(k - 1, k - i)


def factorial_inequality_holds(m: int, k: int, i: int) -> bool:
    """Exact check of ``(k-i)!(i-1)! > (k-m+i)!(m-i-1)!``."""
    if not m <= k:
        raise ValueError(f"need m <= k, got m={m}, k={k}")
    if not (1 <= i and 2 * i < m):
        raise ValueError(f"need 1 <= i < m/2, got i={i}, m={m}")
    lhs = factorial(k - i) * factorial(i - 1)
    rhs = factorial(k - m + i) * factorial(m - i - 1)
    return lhs > rhs


def compress_to_fixpoint(f: Family) -> tuple[Family, list[ExchangeTrace]]:
    """Apply :func:`exchange` at a minimum-support member until every support has size >= m/2."""
    traces: list[ExchangeTrace] = []
    if f.m <= 2 or not len(f):
        return f, traces
    if first_violation(f) is not None:
        raise ExchangeError("family is not intersecting")
    budget = len(f) * f.m + 1
    while len(f):
        chosen = min_support_member(f)
        if 2 * len(support(chosen)) >= f.m:
            break
        if len(traces) >= budget:
            raise RuntimeError("compression did not terminate within |f|*m steps")
        f, trace = exchange(f, chosen, check=False)
        traces.append(trace)
    return f, traces
