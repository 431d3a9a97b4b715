"""Multisets, intersecting families and the extremal constructions.

A k-multiset over ``[m]`` is stored as its multiplicity vector ``counts``
(``counts[i]`` is the number of copies of ``i + 1``).  Families are
immutable, deduplicated and kept in lexicographic (rank) order so equal
families compare equal regardless of how they were built.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Callable, Iterable, Iterator, Sequence

from .combinatorics import binomial, rank_multiset


@dataclass(frozen=True)
class Multiset:
    m: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"universe size must be positive, got m={self.m}")
        if len(self.counts) != self.m:
            raise ValueError(f"counts has length {len(self.counts)}, expected m={self.m}")
        if any(c < 0 for c in self.counts):
            raise ValueError(f"negative multiplicity in {self.counts}")
        if sum(self.counts) < 1:
            raise ValueError("a multiset must have at least one element")

    @classmethod
    def from_elements(cls, elements: Iterable[int], m: int) -> "Multiset":
        counts = [0] * m
        for x in elements:
            if not 1 <= x <= m:
                raise ValueError(f"element {x} outside [1, {m}]")
            counts[x - 1] += 1
        return cls(m, tuple(counts))

    @property
    def k(self) -> int:
        return sum(self.counts)

    @property
    def elements(self) -> tuple[int, ...]:
        """Sorted element list with repetitions, e.g. ``(1, 2, 2, 4)``."""
        return tuple(i + 1 for i, c in enumerate(self.counts) for _ in range(c))

    @property
    def support_mask(self) -> int:
        """Support as a bitmask; bit ``i`` stands for element ``i + 1``."""
        mask = 0
        for i, c in enumerate(self.counts):
            if c:
                mask |= 1 << i
        return mask

    @property
    def rank(self) -> int:
        return rank_multiset(self.elements, self.m)

    def __str__(self) -> str:
        return " ".join(map(str, self.elements))

    def __repr__(self) -> str:
        return f"Multiset({{{','.join(map(str, self.elements))}}}, m={self.m})"


def support(a: Multiset) -> frozenset[int]:
    """The distinct elements of ``a``."""
    return frozenset(i + 1 for i, c in enumerate(a.counts) if c)


def complement(s: Iterable[int], m: int) -> frozenset[int]:
    return frozenset(range(1, m + 1)) - frozenset(s)


def intersection_size(a: Multiset, b: Multiset) -> int:
    """Cardinality of the multiset intersection (pointwise minimum)."""
    if a.m != b.m or a.k != b.k:
        raise ValueError(f"context mismatch: (m,k)=({a.m},{a.k}) vs ({b.m},{b.k})")
    return sum(min(x, y) for x, y in zip(a.counts, b.counts))


def all_multisets(m: int, k: int) -> Iterator[Multiset]:
    """Every k-multiset over [m], in rank order."""
    for elems in combinations_with_replacement(range(1, m + 1), k):
        yield Multiset.from_elements(elems, m)


@dataclass(frozen=True)
class Family:
    m: int
    k: int
    members: tuple[Multiset, ...] = field(default=())

    def __post_init__(self) -> None:
        for a in self.members:
            if a.m != self.m or a.k != self.k:
                raise ValueError(f"{a!r} does not live in (m,k)=({self.m},{self.k})")
        canon = tuple(sorted(set(self.members), key=lambda a: a.elements))
        object.__setattr__(self, "members", canon)

    @classmethod
    def of(cls, m: int, k: int, members: Iterable[Multiset | Sequence[int]] = ()) -> "Family":
        """Build a family; plain element lists are accepted for members."""
        ms = [a if isinstance(a, Multiset) else Multiset.from_elements(a, m) for a in members]
        return cls(m, k, tuple(ms))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Multiset]:
        return iter(self.members)

    def __contains__(self, a: object) -> bool:
        return a in set(self.members)

    def _same_context(self, other: "Family") -> None:
        if (self.m, self.k) != (other.m, other.k):
            raise ValueError("families live in different (m,k) contexts")

    def __or__(self, other: "Family") -> "Family":
        self._same_context(other)
        return Family(self.m, self.k, self.members + other.members)

    def __sub__(self, other: "Family") -> "Family":
        self._same_context(other)
        drop = set(other.members)
        return Family(self.m, self.k, tuple(a for a in self.members if a not in drop))

    def filter(self, pred: Callable[[Multiset], bool]) -> "Family":
        return Family(self.m, self.k, tuple(a for a in self.members if pred(a)))

    def ranks(self) -> list[int]:
        return [a.rank for a in self.members]

    # serialization

    def to_json(self) -> list[list[int]]:
        return [list(a.counts) for a in self.members]

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def to_text(self) -> str:
        return "".join(f"{a}\n" for a in self.members)


def family_from_json(data: str | list, m: int | None = None, k: int | None = None) -> Family:
    """Parse the JSON family format (array of counts vectors).

    ``m`` and ``k`` are inferred from the first member; they must be
    given explicitly for an empty family.
    """
    if isinstance(data, str):
        data = json.loads(data)
    if not data:
        if m is None or k is None:
            raise ValueError("empty family: m and k must be supplied")
        return Family(m, k)
    members = [Multiset(len(row), tuple(int(c) for c in row)) for row in data]
    m = members[0].m if m is None else m
    k = members[0].k if k is None else k
    return Family(m, k, tuple(members))


def family_from_text(text: str, m: int) -> Family:
    """Parse one multiset per line, elements separated by whitespace."""
    members = [Multiset.from_elements(map(int, line.split()), m)
               for line in text.splitlines() if line.strip()]
    if not members:
        raise ValueError("empty text family")
    return Family(m, members[0].k, tuple(members))


def is_t_intersecting_family(f: Family | Iterable[Multiset], t: int = 1) -> bool:
    return first_violation(f, t) is None


def first_violation(f: Family | Iterable[Multiset], t: int = 1) -> tuple[Multiset, Multiset] | None:
    """First pair (in member order) whose intersection is smaller than ``t``."""
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    members = list(f)
    if t == 1:
        # 1-intersection only depends on supports; check each distinct support once
        seen: dict[int, Multiset] = {}
        for a in members:
            seen.setdefault(a.support_mask, a)
        for (x, a), (y, b) in combinations(seen.items(), 2):
            if not x & y:
                return a, b
        return None
    for a, b in combinations(members, 2):
        if intersection_size(a, b) < t:
            return a, b
    return None


def common_elements(f: Family) -> frozenset[int]:
    """Elements contained in every member (all of [m] for the empty family)."""
    out = frozenset(range(1, f.m + 1))
    for a in f:
        out &= support(a)
    return out


# constructions


def star_family(m: int, k: int, x: int) -> Family:
    if not 1 <= x <= m:
        raise ValueError(f"fixed element {x} outside [1, {m}]")
    return Family(m, k, tuple(a for a in all_multisets(m, k) if a.counts[x - 1] >= 1))


def t_star_family(m: int, k: int, fixed: Multiset | Sequence[int]) -> Family:
    """All k-multisets containing the multiset ``fixed`` (pointwise dominance)."""
    if not isinstance(fixed, Multiset):
        fixed = Multiset.from_elements(fixed, m)
    if fixed.m != m:
        raise ValueError(f"fixed multiset lives over [{fixed.m}], expected [{m}]")
    if fixed.k > k:
        raise ValueError(f"fixed multiset has size {fixed.k} > k={k}")
    return Family(m, k, tuple(
        a for a in all_multisets(m, k)
        if all(x >= y for x, y in zip(a.counts, fixed.counts))
    ))


def level_family(m: int, k: int, j: int) -> Family:
    """All k-multisets with exactly ``j`` distinct elements."""
    if not 1 <= j <= min(m, k):
        raise ValueError(f"level j={j} outside [1, min(m,k)={min(m, k)}]")
    return Family(m, k, tuple(a for a in all_multisets(m, k) if len(support(a)) == j))


def above_half_family(m: int, k: int) -> Family:
    """All k-multisets with more than m/2 distinct elements."""
    lo = (m + 2) // 2  # ceil((m+1)/2)
    return Family(m, k, tuple(a for a in all_multisets(m, k) if len(support(a)) >= lo))


def contains_one(s: frozenset[int]) -> bool:
    return 1 in s


def half_selection_family(m: int, k: int,
                          chooser: Callable[[frozenset[int]], bool] = contains_one) -> Family:
    """Members of level m/2 whose support is selected by ``chooser``.

    ``chooser`` must accept exactly one support from each complementary
    pair of (m/2)-subsets of [m]; two such subsets are disjoint exactly
    when they are complementary, so any valid selection is intersecting.
    """
    if m % 2:
        raise ValueError(f"half selection needs even m, got m={m}")
    half = m // 2
    chosen = set()
    for s in map(frozenset, combinations(range(1, m + 1), half)):
        keep, keep_c = chooser(s), chooser(complement(s, m))
        if keep == keep_c:
            raise ValueError(f"chooser must pick exactly one of {sorted(s)} and its complement")
        if keep:
            chosen.add(s)
    if half > k:
        return Family(m, k)
    return level_family(m, k, half).filter(lambda a: support(a) in chosen)


def frankl_plus_family(m: int, k: int, t: int, fixed_set: Iterable[int] | None = None) -> Family:
    """All k-multisets with at least t+1 distinct elements from a (t+2)-set.

    ``fixed_set`` defaults to ``{1, ..., t+2}``.
    """
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    if t + 2 > m:
        raise ValueError(f"need t+2 <= m, got t={t}, m={m}")
    if t + 1 > k:
        raise ValueError(f"need t+1 <= k, got t={t}, k={k}")
    F = frozenset(range(1, t + 3)) if fixed_set is None else frozenset(fixed_set)
    if len(F) != t + 2 or not F <= frozenset(range(1, m + 1)):
        raise ValueError(f"fixed set must be a ({t + 2})-subset of [{m}], got {sorted(F)}")
    return Family(m, k, tuple(a for a in all_multisets(m, k) if len(support(a) & F) >= t + 1))


# closed-form bounds


@dataclass(frozen=True)
class BoundReport:
    formula_name: str
    formula_value: int
    parameters: tuple[int, int, int]
    in_regime: bool
    regime: str

    def to_json(self) -> dict:
        m, k, t = self.parameters
        return {
            "formula": self.formula_name,
            "value": self.formula_value,
            "m": m, "k": k, "t": t,
            "regime": self.regime,
            "in_regime": self.in_regime,
        }


def level_size(m: int, k: int, j: int) -> int:
    return binomial(m, j) * binomial(k - 1, k - j)


def above_half_size(m: int, k: int) -> int:
    return sum(level_size(m, k, j) for j in range((m + 2) // 2, m + 1))


def theorem1_bound(m: int, k: int) -> BoundReport:
    """Largest intersecting family for ``m >= k + 1``: C(m+k-2, k-1)."""
    return BoundReport("star", binomial(m + k - 2, k - 1), (m, k, 1), m >= k + 1, "m >= k+1")


def theorem2_bound(m: int, k: int) -> BoundReport:
    """Largest intersecting family for ``m <= k``.

    Odd m: every multiset with more than m/2 distinct elements.  Even m:
    additionally half of the level m/2.
    """
    value = above_half_size(m, k)
    if m % 2 == 0:
        value += level_size(m, k, m // 2) // 2
    return BoundReport("above-half", value, (m, k, 1), m <= k, "m <= k")


def conjecture_bound(m: int, k: int, t: int) -> BoundReport:
    """Size of a t-star, C(m+k-t-1, k-t), flagged with ``m >= t(k-t)+2``."""
    if not 1 <= t <= k:
        raise ValueError(f"t must satisfy 1 <= t <= k, got t={t}, k={k}")
    return BoundReport("t-star", binomial(m + k - t - 1, k - t), (m, k, t),
                       m >= t * (k - t) + 2, "m >= t(k-t)+2")


def applicable_bound(m: int, k: int, t: int = 1) -> BoundReport:
    """The bound whose regime covers (m, k, t)."""
    if t > 1:
        return conjecture_bound(m, k, t)
    return theorem1_bound(m, k) if m >= k + 1 else theorem2_bound(m, k)
