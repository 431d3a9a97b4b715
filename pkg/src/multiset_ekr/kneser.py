"""Generalized Kneser graphs on k-sets and k-multisets.

``GraphSpec("set", n, k, t)`` is K(n,k,t) and ``GraphSpec("multiset", m,
k, t)`` is M(m,k,t): vertices are the k-subsets (k-multisets), and two
vertices are adjacent when their intersection has fewer than ``t``
elements.  Vertex ``i`` is always the object of lexicographic rank ``i``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Iterator

import numpy as np

from .combinatorics import binomial, multichoose, unrank_multiset, unrank_subset

DENSE_LIMIT = 50_000


class GraphTooLarge(ValueError):
    """The instance exceeds a dense-construction or solver vertex limit."""


@dataclass(frozen=True)
class GraphSpec:
    kind: str
    universe: int
    k: int
    t: int = 1

    def __post_init__(self) -> None:
        if self.kind not in ("set", "multiset"):
            raise ValueError(f"kind must be 'set' or 'multiset', got {self.kind!r}")
        if self.universe < 1 or self.k < 1:
            raise ValueError(f"universe and k must be positive: {self}")
        if not 1 <= self.t <= self.k:
            raise ValueError(f"threshold must satisfy 1 <= t <= k: {self}")
        if self.kind == "set" and self.k > self.universe:
            raise ValueError(f"K(n,k) needs k <= n: {self}")

    @classmethod
    def multiset(cls, m: int, k: int, t: int = 1) -> "GraphSpec":
        return cls("multiset", m, k, t)

    @classmethod
    def set(cls, n: int, k: int, t: int = 1) -> "GraphSpec":
        return cls("set", n, k, t)

    def __str__(self) -> str:
        letter = "M" if self.kind == "multiset" else "K"
        return f"{letter}({self.universe},{self.k},{self.t})"

    def to_json(self) -> dict:
        return {"kind": self.kind, "universe": self.universe, "k": self.k, "t": self.t}


def vertex_count(spec: GraphSpec) -> int:
    if spec.kind == "set":
        return binomial(spec.universe, spec.k)
    return multichoose(spec.universe, spec.k)


def vertices(spec: GraphSpec) -> Iterator[tuple[int, ...]]:
    """Sorted element lists of all vertices, in rank order."""
    pool = range(1, spec.universe + 1)
    if spec.kind == "set":
        return combinations(pool, spec.k)
    return combinations_with_replacement(pool, spec.k)


def unrank_vertex(spec: GraphSpec, r: int) -> tuple[int, ...]:
    if spec.kind == "set":
        return unrank_subset(r, spec.universe, spec.k)
    return unrank_multiset(r, spec.universe, spec.k)


def common_count(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Size of the (multi)set intersection of two sorted element lists."""
    i = j = n = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            n += 1
            i += 1
            j += 1
        elif a[i] < b[j]:
            i += 1
        else:
            j += 1
    return n


def adjacent(spec: GraphSpec, u: int, v: int) -> bool:
    """Lazy adjacency oracle on vertex ranks."""
    if u == v:
        raise ValueError("adjacency is only defined for distinct vertices")
    return common_count(unrank_vertex(spec, u), unrank_vertex(spec, v)) < spec.t


@dataclass(frozen=True)
class Graph:
    """Dense adjacency: ``adj[v]`` is the bitset of neighbours of ``v``."""

    n: int
    adj: tuple[int, ...]
    spec: GraphSpec | None = None

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each undirected edge once as ``(u, v)`` with ``u < v``."""
        for u, row in enumerate(self.adj):
            row >>= u + 1
            v = u + 1
            while row:
                if row & 1:
                    yield u, v
                row >>= 1
                v += 1

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2


def _count_matrix(spec: GraphSpec) -> np.ndarray:
    rows = list(vertices(spec))
    mat = np.zeros((len(rows), spec.universe), dtype=np.int64)
    for i, elems in enumerate(rows):
        for x in elems:
            mat[i, x - 1] += 1
    return mat


def build_graph(spec: GraphSpec, limit: int = DENSE_LIMIT) -> Graph:
    n = vertex_count(spec)
    if n > limit:
        raise GraphTooLarge(
            f"{spec} has {n} vertices, above the dense limit {limit}; "
            "use the lazy `adjacent` oracle or `export_graph` for external solvers")
    counts = _count_matrix(spec)
    adj = []
    for i in range(n):
        inter = np.minimum(counts[i], counts).sum(axis=1)
        hit = inter < spec.t
        hit[i] = False
        bits = np.packbits(hit, bitorder="little").tobytes()
        adj.append(int.from_bytes(bits, "little"))
    return Graph(n, tuple(adj), spec)


def export_graph(g: Graph | GraphSpec, fmt: str = "dimacs") -> bytes:
    """DIMACS ("p edge V E" / "e u v", 1-based) or 0-based "u v" edge list."""
    if isinstance(g, GraphSpec):
        g = build_graph(g)
    if fmt == "dimacs":
        lines = [f"p edge {g.n} {g.edge_count}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    elif fmt in ("edge_list", "edgelist"):
        lines = [f"{u} {v}" for u, v in g.edges()]
    else:
        raise ValueError(f"unknown export format {fmt!r}")
    return ("\n".join(lines) + "\n").encode() if lines else b""


def manifest(spec: GraphSpec) -> dict:
    """Sidecar mapping rank -> element list for exported graphs."""
    return {
        "spec": spec.to_json(),
        "vertex_count": vertex_count(spec),
        "vertices": {str(r): list(v) for r, v in enumerate(vertices(spec))},
    }


def write_export(spec: GraphSpec, path: str, fmt: str = "dimacs") -> str:
    """Write the graph and a ``<path>.manifest.json`` sidecar; returns the sidecar path."""
    with open(path, "wb") as fh:
        fh.write(export_graph(spec, fmt))
    side = f"{path}.manifest.json"
    with open(side, "w") as fh:
        json.dump(manifest(spec), fh, indent=1)
    return side


def parse_dimacs(text: str) -> Graph:
    n = None
    adj: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) < 3 or parts[1] not in ("edge", "col"):
                raise ValueError(f"line {lineno}: bad problem line {line!r}")
            n = int(parts[2])
            adj = [0] * n
        elif parts[0] == "e":
            if n is None:
                raise ValueError(f"line {lineno}: edge before problem line")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"line {lineno}: bad edge {line!r}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        else:
            raise ValueError(f"line {lineno}: unrecognised line {line!r}")
    if n is None:
        raise ValueError("no problem line in DIMACS input")
    return Graph(n, tuple(adj))
