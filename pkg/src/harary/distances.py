"""Unweighted shortest paths: reference BFS, a batched bit-parallel BFS, graph stats.

``bfs_distances`` / ``bfs_excluding`` are the plain single-source reference.
``level_census`` runs BFS from every source at once using one bitset per vertex
(bit ``s`` of row ``v`` set once source ``s`` has reached ``v``); a batch axis
carries independent vertex-deleted copies of the graph so that all removals of
a residual computation advance together.  Both paths are exact integer
computations and are cross-checked in the test suite.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .graphs import Graph, ParameterError

#: Distance entry for a vertex with no path from the source.
UNREACHABLE = None

# Upper bound on uint64 words materialised per BFS level (batch x n x words).
_CHUNK_WORDS = 1 << 19


@dataclass(frozen=True)
class DistanceRow:
    source: int
    dist: tuple[Optional[int], ...]


@dataclass(frozen=True)
class GraphStats:
    eccentricities: tuple[int, ...]
    diameter: int
    radius: int
    connected: bool


def _check_vertex(g: Graph, v: int, what: str) -> None:
    if not 0 <= v < g.n:
        raise ParameterError(f"{what} {v} out of range for n={g.n}")


def _bfs(g: Graph, source: int, removed: Optional[int]) -> DistanceRow:
    dist: list[Optional[int]] = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if v != removed and dist[v] is UNREACHABLE:
                dist[v] = du
                queue.append(v)
    return DistanceRow(source, tuple(dist))


def bfs_distances(g: Graph, source: int) -> DistanceRow:
    _check_vertex(g, source, "source")
    return _bfs(g, source, None)


def bfs_excluding(g: Graph, source: int, removed: int) -> DistanceRow:
    """BFS in ``g`` with ``removed`` and its edges deleted; ``removed`` stays unreachable."""
    _check_vertex(g, source, "source")
    _check_vertex(g, removed, "removed vertex")
    if source == removed:
        raise ParameterError("source and removed vertex must differ")
    return _bfs(g, source, removed)


def _neighbor_table(g: Graph) -> np.ndarray:
    # Rows padded with the index n, which addresses an all-zero bitset row.
    width = max((len(a) for a in g.adjacency), default=0)
    table = np.full((g.n, max(width, 1)), g.n, dtype=np.intp)
    for v, nbrs in enumerate(g.adjacency):
        table[v, : len(nbrs)] = nbrs
    return table


def _bit_bfs(
    g: Graph, removed: Sequence[Optional[int]], per_vertex: bool
) -> Iterator[np.ndarray]:
    # Yields, for levels 1, 2, ..., the number of newly reached (source, vertex)
    # pairs: shape (batch, n) if per_vertex else (batch,).
    n = g.n
    words = (n + 63) // 64
    batch = len(removed)
    table = _neighbor_table(g)
    cur = np.zeros((n + 1, batch, words), dtype=np.uint64)
    idx = np.arange(n)
    cur[idx, :, idx >> 6] = np.left_shift(np.uint64(1), (idx & 63).astype(np.uint64))[:, None]
    v_idx = np.array([v for v in removed if v is not None], dtype=np.intp)
    b_idx = np.array([b for b, v in enumerate(removed) if v is not None], dtype=np.intp)
    cur[v_idx, b_idx] = 0
    nxt = np.zeros_like(cur)

    def counts(bits: np.ndarray) -> np.ndarray:
        pc = np.bitwise_count(bits[:n])
        if per_vertex:
            return pc.sum(axis=-1, dtype=np.int64).T
        return pc.reshape(n, batch * words).sum(axis=0, dtype=np.int64).reshape(batch, words).sum(axis=1)

    reached = counts(cur)
    while True:
        body = nxt[:n]
        np.copyto(body, cur[:n])
        for col in range(table.shape[1]):
            body |= cur[table[:, col]]
        body[v_idx, b_idx] = 0
        now = counts(nxt)
        delta = now - reached
        if not delta.any():
            return
        yield delta
        cur, nxt = nxt, cur
        reached = now


def _checked(g: Graph, removed: Sequence[Optional[int]]) -> list[Optional[int]]:
    for v in removed:
        if v is not None:
            _check_vertex(g, v, "removed vertex")
    return list(removed)


def _chunks(g: Graph, removed: list[Optional[int]]) -> Iterator[list[Optional[int]]]:
    words = (g.n + 63) // 64
    width = max((len(a) for a in g.adjacency), default=1)
    chunk = max(1, _CHUNK_WORDS // max(1, g.n * words * max(width, 4)))
    for start in range(0, len(removed), chunk):
        yield removed[start : start + chunk]


def level_census(g: Graph, removed: Optional[int] = None) -> np.ndarray:
    """Per-vertex distance histogram of ``g`` (optionally with one vertex deleted).

    Returns an ``(n, L + 1)`` integer array whose ``[v, d]`` cell counts the
    vertices at distance exactly ``d >= 1`` from ``v``.  Column 0 is zero and a
    deleted vertex has an all-zero row.  Pairs with no connecting path are
    absent, which is how unreachable vertices show up.
    """
    _checked(g, [removed])
    layers = [np.zeros(g.n, dtype=np.int64)]
    layers.extend(delta[0] for delta in _bit_bfs(g, [removed], per_vertex=True))
    return np.stack(layers, axis=-1)


def removal_census(g: Graph, removed: Sequence[Optional[int]]) -> list[np.ndarray]:
    """Whole-graph distance histograms, one per entry of ``removed``.

    Entry ``b`` is a 1-D array whose ``[d]`` cell counts ordered pairs
    ``(i, j)`` at distance ``d >= 1`` in ``g`` minus vertex ``removed[b]``
    (``None`` deletes nothing).  Every removal in a chunk advances in lockstep.
    """
    out: list[np.ndarray] = []
    for part in _chunks(g, _checked(g, removed)):
        layers = [np.zeros(len(part), dtype=np.int64)]
        layers.extend(_bit_bfs(g, part, per_vertex=False))
        hist = np.stack(layers, axis=-1)
        out.extend(hist[b] for b in range(len(part)))
    return out


def graph_stats(g: Graph) -> GraphStats:
    hist = level_census(g)
    reached = hist.sum(axis=1)
    connected = bool((reached == g.n - 1).all())
    ecc = []
    for row in hist:
        nz = np.nonzero(row)[0]
        ecc.append(int(nz[-1]) if nz.size else 0)
    return GraphStats(
        eccentricities=tuple(ecc),
        diameter=max(ecc),
        radius=min(ecc),
        connected=connected,
    )
