"""Exact maximum t-intersecting families via maximum independent set.

An independent set of M(m,k,t) (or K(n,k,t)) is a t-intersecting family,
which is a clique in the complementary "intersects in >= t" graph.  The
search is a colour-bounded branch and bound on that complement (greedy
sequential colouring gives the bound, as in MCQ-style clique solvers),
with vertex sets held as Python int bitsets.

The witness is deterministic: vertex order, colouring and branching
depend only on the graph.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .families import (
    Family,
    Multiset,
    above_half_family,
    common_elements,
    first_violation,
    intersection_size,
    level_family,
    support,
)
from .kneser import Graph, GraphSpec, GraphTooLarge, build_graph, vertex_count, vertices

SOLVE_LIMIT = 5_000
CENSUS_CAP = 10_000


class _Stop(Exception):
    pass


@dataclass(frozen=True)
class SolveResult:
    optimum: int
    vertices: tuple[int, ...]
    proved_optimal: bool
    nodes: int
    seconds: float
    spec: GraphSpec | None = None

    @property
    def members(self) -> list[tuple[int, ...]]:
        """Element lists of the witness (requires a spec)."""
        if self.spec is None:
            raise ValueError("result was computed on a bare graph")
        table = list(vertices(self.spec))
        return [table[v] for v in self.vertices]

    @property
    def witness(self) -> Family:
        if self.spec is None or self.spec.kind != "multiset":
            raise ValueError("family witness is only defined for multiset graphs")
        return Family.of(self.spec.universe, self.spec.k, self.members)

    def to_json(self) -> dict:
        out = {
            "spec": None if self.spec is None else self.spec.to_json(),
            "optimum": self.optimum,
            "proved_optimal": self.proved_optimal,
            "witness_ranks": list(self.vertices),
            "nodes": self.nodes,
        }
        if self.spec is not None:
            out["witness"] = [list(x) for x in self.members]
        return out


class _CliqueSearch:
    """Colour-bounded clique search on the complement of ``g``."""

    def __init__(self, g: Graph, node_limit: int | None, deadline: float | None):
        n = g.n
        full = (1 << n) - 1
        comp = [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)]
        # high complement-degree first; stable on rank for ties
        self.order = sorted(range(n), key=lambda v: -comp[v].bit_count())
        pos = {v: i for i, v in enumerate(self.order)}
        self.nbrs = []
        for v in self.order:
            row, bits = comp[v], 0
            while row:
                low = row & -row
                bits |= 1 << pos[low.bit_length() - 1]
                row ^= low
            self.nbrs.append(bits)
        self.n = n
        self.nodes = 0
        self.node_limit = node_limit
        self.deadline = deadline

    def _colour(self, P: int) -> tuple[list[int], list[int]]:
        nbrs = self.nbrs
        order: list[int] = []
        bounds: list[int] = []
        colour = 0
        while P:
            colour += 1
            Q = P
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                P ^= low
                Q &= ~nbrs[v]
                Q ^= low
                order.append(v)
                bounds.append(colour)
        return order, bounds

    def _tick(self) -> None:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise _Stop
        if self.deadline is not None and not self.nodes & 1023 and time.monotonic() > self.deadline:
            raise _Stop

    def maximum(self, initial: Sequence[int] = ()) -> tuple[list[int], bool]:
        pos = {v: i for i, v in enumerate(self.order)}
        self.best = [pos[v] for v in initial]
        cur: list[int] = []

        def expand(P: int) -> None:
            self._tick()
            order, bounds = self._colour(P)
            for idx in range(len(order) - 1, -1, -1):
                if len(cur) + bounds[idx] <= len(self.best):
                    return
                v = order[idx]
                cur.append(v)
                NP = P & self.nbrs[v]
                if NP:
                    expand(NP)
                elif len(cur) > len(self.best):
                    self.best = cur.copy()
                cur.pop()
                P &= ~(1 << v)

        proved = True
        try:
            if self.n:
                expand((1 << self.n) - 1)
        except _Stop:
            proved = False
        return sorted(self.order[i] for i in self.best), proved

    def all_of_size(self, target: int, cap: int) -> tuple[list[list[int]], bool]:
        """Every clique of size ``target`` (assumed maximum), up to ``cap``."""
        found: list[list[int]] = []
        cur: list[int] = []

        def expand(P: int) -> None:
            self._tick()
            order, bounds = self._colour(P)
            for idx in range(len(order) - 1, -1, -1):
                if len(cur) + bounds[idx] < target:
                    return
                v = order[idx]
                cur.append(v)
                NP = P & self.nbrs[v]
                if NP:
                    expand(NP)
                elif len(cur) == target:
                    found.append(sorted(self.order[i] for i in cur))
                    if len(found) > cap:
                        raise _Stop
                cur.pop()
                P &= ~(1 << v)

        complete = True
        try:
            if target == 0:
                found.append([])
            elif self.n:
                expand((1 << self.n) - 1)
        except _Stop:
            complete = False
        found = sorted(found)[:cap]
        return found, complete


def _graph_for(spec_or_graph: GraphSpec | Graph, limit: int) -> tuple[Graph, GraphSpec | None]:
    if isinstance(spec_or_graph, Graph):
        g = spec_or_graph
        if g.n > limit:
            raise GraphTooLarge(f"graph has {g.n} vertices, above the solver limit {limit}")
        return g, g.spec
    n = vertex_count(spec_or_graph)
    if n > limit:
        raise GraphTooLarge(
            f"{spec_or_graph} has {n} vertices, above the solver limit {limit}; "
            "export it with `export_graph` and use an external solver")
    return build_graph(spec_or_graph), spec_or_graph


def max_family(spec: GraphSpec | Graph, limit: int = SOLVE_LIMIT, node_limit: int | None = None,
               time_limit: float | None = None, initial: Iterable[int] = ()) -> SolveResult:
    """Maximum independent set of the graph, i.e. a largest t-intersecting family.

    ``initial`` may seed the search with a known independent set (vertex
    ranks).  If ``node_limit`` or ``time_limit`` stops the search early the
    result carries the best set found and ``proved_optimal=False``.
    """
    g, gspec = _graph_for(spec, limit)
    initial = sorted(set(initial))
    for i, u in enumerate(initial):
        for v in initial[i + 1:]:
            if g.has_edge(u, v):
                raise ValueError(f"initial set is not independent: {u} ~ {v}")
    start = time.monotonic()
    deadline = None if time_limit is None else start + time_limit
    search = _CliqueSearch(g, node_limit, deadline)
    best, proved = search.maximum(initial)
    return SolveResult(len(best), tuple(best), proved, search.nodes,
                       time.monotonic() - start, gspec)


def classify(f: Family) -> tuple[str, ...]:
    """Structural labels for an intersecting family.

    ``star``: some element lies in every member.  ``above-half``: exactly
    the multisets with more than m/2 distinct elements.
    ``above-half-plus-selection`` (even m): those plus an intersecting half
    of level m/2.  ``other`` when nothing applies.
    """
    labels = []
    m, k = f.m, f.k
    if len(f) and common_elements(f):
        labels.append("star")
    if m <= k:
        upper = above_half_family(m, k)
        if f == upper:
            labels.append("above-half")
        elif m % 2 == 0 and len(f - upper) + len(upper) == len(f):
            rest = f - upper
            level = level_family(m, k, m // 2)
            if (len(rest) * 2 == len(level) and all(len(support(a)) == m // 2 for a in rest)
                    and first_violation(rest) is None):
                labels.append("above-half-plus-selection")
    return tuple(labels) or ("other",)


@dataclass(frozen=True)
class MaximumCensus:
    spec: GraphSpec
    optimum: int
    families: tuple[tuple[int, ...], ...]
    complete: bool
    labels: tuple[tuple[str, ...], ...] = field(default=())

    def family(self, i: int) -> Family:
        table = list(vertices(self.spec))
        return Family.of(self.spec.universe, self.spec.k, [table[v] for v in self.families[i]])

    def all_families(self) -> list[Family]:
        table = list(vertices(self.spec))
        return [Family.of(self.spec.universe, self.spec.k, [table[v] for v in fam])
                for fam in self.families]

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "optimum": self.optimum,
            "count": len(self.families),
            "complete": self.complete,
            "families": [list(f) for f in self.families],
            "labels": [list(x) for x in self.labels],
        }


def enumerate_maximum_families(spec: GraphSpec, cap: int = CENSUS_CAP, optimum: int | None = None,
                               limit: int = SOLVE_LIMIT) -> MaximumCensus:
    """All maximum independent sets of the spec's graph, up to ``cap``.

    No symmetry reduction is applied.  ``complete`` is False when more
    than ``cap`` maxima exist.
    """
    g, _ = _graph_for(spec, limit)
    if optimum is None:
        res = max_family(g, limit=limit)
        optimum = res.optimum
    search = _CliqueSearch(g, None, None)
    fams, complete = search.all_of_size(optimum, cap)
    labels: tuple[tuple[str, ...], ...] = ()
    if spec.kind == "multiset":
        table = list(vertices(spec))
        labels = tuple(classify(Family.of(spec.universe, spec.k, [table[v] for v in fam]))
                       for fam in fams)
    return MaximumCensus(spec, optimum, tuple(map(tuple, fams)), complete, labels)


# certificates


@dataclass(frozen=True)
class Certificate:
    family: Family
    t: int = 1
    claimed_size: int | None = None


@dataclass(frozen=True)
class Verdict:
    valid: bool
    reason: str
    pair: tuple[Multiset, Multiset] | None = None

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "reason": self.reason,
            "pair": None if self.pair is None else [list(a.elements) for a in self.pair],
        }


def verify_certificate(c: Certificate) -> Verdict:
    """Re-check a claimed t-intersecting family pair by pair."""
    members = list(c.family)
    if c.claimed_size is not None and c.claimed_size != len(members):
        return Verdict(False, f"claimed size {c.claimed_size} but family has {len(members)} members")
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            s = intersection_size(a, b)
            if s < c.t:
                return Verdict(False, f"intersection of size {s} < t={c.t}", (a, b))
    return Verdict(True, f"{len(members)} members, pairwise intersections >= {c.t}")


def certified_lower_bound(spec: GraphSpec, family: Family, node_limit: int | None = 200_000,
                          time_limit: float | None = None) -> tuple[Verdict, SolveResult]:
    """Certify ``family`` as a lower bound on alpha and run a bounded search above it.

    The search is seeded with the family so any improvement it reports is
    strictly larger; ``proved_optimal`` is only True if the search finishes.
    """
    if spec.kind != "multiset" or (family.m, family.k) != (spec.universe, spec.k):
        raise ValueError("family does not match the multiset spec")
    verdict = verify_certificate(Certificate(family, spec.t, len(family)))
    if not verdict:
        raise ValueError(f"seed family is not {spec.t}-intersecting: {verdict.reason}")
    res = max_family(spec, node_limit=node_limit, time_limit=time_limit, initial=family.ranks())
    return verdict, res
