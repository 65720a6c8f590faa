"""Harary and consecutive circulant graph construction.

Vertices are labelled ``0..n-1`` around a circle. Graphs are immutable and
stored as sorted adjacency tuples, so every traversal order is deterministic.
"""

from __future__ import annotations

import enum
import json
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Iterator


class ParameterError(ValueError):
    """Raised for out-of-range or inconsistent graph parameters."""


class ParityCase(enum.Enum):
    EVEN_K = "EvenK"
    ODD_K_EVEN_N = "OddKEvenN"
    ODD_K_ODD_N = "OddKOddN"


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError(f"graph needs at least one vertex, got n={self.n}")
        if len(self.adjacency) != self.n:
            raise ParameterError("adjacency length does not match n")
        for u, nbrs in enumerate(self.adjacency):
            prev = -1
            for v in nbrs:
                if not 0 <= v < self.n:
                    raise ParameterError(f"neighbor {v} of {u} out of range")
                if v == u:
                    raise ParameterError(f"self-loop at {u}")
                if v <= prev:
                    raise ParameterError(f"neighbors of {u} not strictly ascending")
                prev = v
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if not _contains(self.adjacency[v], u):
                    raise ParameterError(f"edge {u}-{v} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ParameterError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as ``(u, v)`` with ``u < v``, lexicographically."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if v > u:
                    yield u, v


def _contains(sorted_seq: tuple[int, ...], x: int) -> bool:
    i = bisect_left(sorted_seq, x)
    return i < len(sorted_seq) and sorted_seq[i] == x


@dataclass(frozen=True)
class HararyParams:
    k: int
    n: int

    def __post_init__(self) -> None:
        if not (isinstance(self.k, int) and isinstance(self.n, int)):
            raise ParameterError("k and n must be integers")
        if self.k < 2:
            raise ParameterError(f"k must be at least 2, got k={self.k}")
        if self.k >= self.n:
            raise ParameterError(f"k must be less than n, got k={self.k}, n={self.n}")

    @property
    def parity_case(self) -> ParityCase:
        if self.k % 2 == 0:
            return ParityCase.EVEN_K
        if self.n % 2 == 0:
            return ParityCase.ODD_K_EVEN_N
        return ParityCase.ODD_K_ODD_N


def _ring_edges(n: int, reach: int) -> Iterator[tuple[int, int]]:
    for i in range(n):
        for s in range(1, reach + 1):
            j = (i + s) % n
            if i != j:
                yield i, j


def build_harary(params: HararyParams) -> Graph:
    """Build the Harary graph H(k, n).

    Even k joins each vertex to its k/2 nearest neighbours on each side.
    Odd k starts from H(k-1, n) and adds a chord per vertex: to the
    diametrically opposite vertex when n is even, otherwise
    ``{i, i + (n-1)/2}`` for ``0 <= i <= (n-1)/2``, which leaves vertex
    ``(n-1)/2`` with degree k+1.
    """
    k, n = params.k, params.n
    edges = list(_ring_edges(n, k // 2))
    if k % 2 == 1:
        if n % 2 == 0:
            half = n // 2
            edges.extend((i, i + half) for i in range(half))
        else:
            half = (n - 1) // 2
            edges.extend((i, (i + half) % n) for i in range(half + 1))
    return Graph.from_edges(n, edges)


def build_circulant(n: int, l: int) -> Graph:
    """Consecutive circulant graph: v adjacent to v +/- i (mod n) for i in 1..l."""
    if n < 2 or not 1 <= l <= n // 2:
        raise ParameterError(f"step bound l must satisfy 1 <= l <= n//2, got n={n}, l={l}")
    return Graph.from_edges(n, _ring_edges(n, l))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(tuple(j for j in range(n) if j != i) for i in range(n)))


def edge_count(g: Graph) -> int:
    return sum(len(a) for a in g.adjacency) // 2


def export_graph(g: Graph, fmt: str = "edgelist") -> str:
    edges = list(g.edges())
    if fmt == "edgelist":
        return "".join(f"{u} {v}\n" for u, v in edges)
    if fmt == "dot":
        lines = ["graph G {"]
        lines.extend(f"  {v};" for v in range(g.n))
        lines.extend(f"  {u} -- {v};" for u, v in edges)
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps({"n": g.n, "edges": [[u, v] for u, v in edges]}) + "\n"
    raise ParameterError(f"unknown export format {fmt!r}")


def parse_edgelist(text: str, n: int | None = None) -> Graph:
    """Inverse of the edgelist export; ``n`` defaults to max label + 1."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParameterError(f"line {lineno}: expected 'u v', got {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return Graph.from_edges(n, edges)
