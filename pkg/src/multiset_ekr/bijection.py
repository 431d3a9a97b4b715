"""An explicit bijection from k-subsets of [m+k-1] onto k-multisets of [m].

For ``B`` a k-subset of ``[n]`` with ``n = m + k - 1``, write ``A = B ∩ [m]``
(never empty, since at most ``k - 1`` elements exceed ``m``) and
``T = B \\ [m] = {t_1 < ... < t_r}``.  ``phi(B)`` takes one copy of each
element of ``A`` and, for every ``j``, one extra copy of the ``d_j``-th
smallest element of ``A`` where ``d_j = (t_j - m) - (j - 1)``.  The shifts
``d_j`` form a nondecreasing sequence in ``[1, |A|]``, so the map restricted
to a fixed ``A`` is the usual strictly-increasing/nondecreasing
correspondence and ``support(phi(B)) == A``.

Because disjoint subsets have disjoint traces on ``[m]``, ``phi`` carries
edges of K(n,k) to edges of M(m,k).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .combinatorics import binomial, multichoose, rank_multiset, rank_subset
from .families import Multiset, support
from .kneser import GraphSpec, GraphTooLarge, build_graph


@dataclass(frozen=True)
class KSubset:
    n: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        e = self.elements
        if any(x >= y for x, y in zip(e, e[1:])):
            raise ValueError(f"k-subset must be strictly increasing: {e}")
        if e and (e[0] < 1 or e[-1] > self.n):
            raise ValueError(f"k-subset elements must lie in [1, {self.n}]: {e}")

    @property
    def k(self) -> int:
        return len(self.elements)

    @property
    def rank(self) -> int:
        return rank_subset(self.elements, self.n)


def phi(b: KSubset | Sequence[int], m: int) -> Multiset:
    """Image of a k-subset of [m+k-1] under the bijection."""
    if not isinstance(b, KSubset):
        b = KSubset(m + len(b) - 1, tuple(b))
    k = b.k
    if b.n != m + k - 1:
        raise ValueError(f"subset lives over [{b.n}], expected n = m+k-1 = {m + k - 1}")
    head = [x for x in b.elements if x <= m]
    tail = [x for x in b.elements if x > m]
    counts = [0] * m
    for x in head:
        counts[x - 1] = 1
    for j, tj in enumerate(tail):
        d = (tj - m) - j  # 1-based position in head
        counts[head[d - 1] - 1] += 1
    return Multiset(m, tuple(counts))


def phi_inverse(a: Multiset) -> KSubset:
    m, k = a.m, a.k
    head = sorted(support(a))
    tail = []
    for pos, x in enumerate(head, 1):
        tail += [pos] * (a.counts[x - 1] - 1)
    # tail holds the nondecreasing shifts d_j
    return KSubset(m + k - 1, tuple(head) + tuple(d + j + m for j, d in enumerate(tail)))


def subsets(n: int, k: int) -> Iterator[KSubset]:
    for e in combinations(range(1, n + 1), k):
        yield KSubset(n, e)


def rank_map(m: int, k: int) -> list[tuple[int, int]]:
    """``(rank of B, rank of phi(B))`` for every k-subset B of [m+k-1]."""
    return [(r, rank_multiset(phi(b, m).elements, m))
            for r, b in enumerate(subsets(m + k - 1, k))]


def dump_map(m: int, k: int) -> str:
    return "".join(f"{r} {s}\n" for r, s in rank_map(m, k))


@dataclass(frozen=True)
class HomomorphismReport:
    m: int
    k: int
    vertices: int
    bijective: bool
    support_ok: bool
    edge_preserving: bool
    counterexample: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    @property
    def ok(self) -> bool:
        return self.bijective and self.support_ok and self.edge_preserving

    def to_json(self) -> dict:
        return {
            "m": self.m, "k": self.k, "vertices": self.vertices,
            "bijective": self.bijective, "support_ok": self.support_ok,
            "edge_preserving": self.edge_preserving,
            "counterexample": None if self.counterexample is None
            else [list(x) for x in self.counterexample],
        }


def _mask(elems: Sequence[int]) -> int:
    out = 0
    for x in elems:
        out |= 1 << (x - 1)
    return out


def check_homomorphism(m: int, k: int, limit: int = 5_000) -> HomomorphismReport:
    """Exhaustively check that phi is a bijective homomorphism K(m+k-1,k) -> M(m,k).

    The counterexample, if any, is the first disjoint pair (B, B') in rank
    order whose images intersect.
    """
    n = m + k - 1
    total = binomial(n, k)
    if total > limit:
        raise GraphTooLarge(f"C({n},{k}) = {total} subsets exceeds the check limit {limit}")
    subs = list(subsets(n, k))
    images = [phi(b, m) for b in subs]
    bijective = (len(set(images)) == total == multichoose(m, k))
    low = (1 << m) - 1
    dtype = np.int64 if n < 63 else object
    set_masks = np.array([_mask(b.elements) for b in subs], dtype=dtype)
    img_masks = np.array([a.support_mask for a in images], dtype=dtype)
    support_ok = bool(np.all(img_masks == (set_masks & low)))
    disjoint = (set_masks[:, None] & set_masks[None, :]) == 0
    meets = (img_masks[:, None] & img_masks[None, :]) != 0
    bad = np.argwhere(disjoint & meets)
    counterexample = None
    if len(bad):
        u, v = bad[0]
        counterexample = (subs[u].elements, subs[v].elements)
    return HomomorphismReport(m, k, total, bijective, support_ok, not len(bad), counterexample)


def t_edge_failures(m: int, k: int, t: int, limit: int = 5_000) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Edges of K(n,k,t) that phi does not carry to edges of M(m,k,t).

    For t >= 2 the support condition alone does not force edge
    preservation; this lists the empirical failures (empty means phi
    happens to be a homomorphism at these parameters).
    """
    n = m + k - 1
    K = build_graph(GraphSpec.set(n, k, t), limit=limit)
    M = build_graph(GraphSpec.multiset(m, k, t), limit=limit)
    img = [rank_multiset(phi(b, m).elements, m) for b in subsets(n, k)]
    subs = [b.elements for b in subsets(n, k)]
    return [(subs[u], subs[v]) for u, v in K.edges() if not M.has_edge(img[u], img[v])]


def search_homomorphism(m: int, k: int, t: int, max_vertices: int = 12) -> list[int] | None:
    """Backtracking search for any bijective homomorphism K(n,k,t) -> M(m,k,t).

    Returns ``mapping`` with ``mapping[u]`` the multiset rank assigned to
    subset rank ``u``, or None if no such bijection exists.  Only meant for
    tiny parameters.
    """
    n = m + k - 1
    K = build_graph(GraphSpec.set(n, k, t))
    M = build_graph(GraphSpec.multiset(m, k, t))
    if K.n > max_vertices:
        raise GraphTooLarge(f"{K.n} vertices exceeds search limit {max_vertices}")
    # high-degree vertices first: they are the most constrained
    order = sorted(range(K.n), key=lambda u: -K.degree(u))
    mapping = [-1] * K.n
    used = [False] * M.n

    def extend(i: int) -> bool:
        if i == K.n:
            return True
        u = order[i]
        for x in range(M.n):
            if used[x] or M.degree(x) < K.degree(u):
                continue
            if all(M.has_edge(x, mapping[w]) for w in order[:i] if K.has_edge(u, w)):
                mapping[u], used[x] = x, True
                if extend(i + 1):
                    return True
                mapping[u], used[x] = -1, False
        return False

    return mapping if extend(0) else None
