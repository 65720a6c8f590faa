"""Brute-force closeness and vertex residual closeness.

Closeness of a vertex is ``sum_j 2**-d(i, j)`` over the other vertices, with
unreachable vertices contributing nothing.  Every quantity here is a sum of
dyadic terms; the BFS layer hands back exact integer distance histograms and
each value is formed with a correctly rounded ``math.fsum``, so results do not
depend on summation order or on how work was split across processes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .distances import bfs_distances, level_census, removal_census
from .graphs import Graph, ParameterError


@dataclass(frozen=True)
class ClosenessReport:
    per_vertex: tuple[float, ...]
    total: float


@dataclass(frozen=True)
class ResidualReport:
    per_removal: tuple[float, ...]
    r_value: float
    argmin: tuple[int, ...]
    #: vertices whose removal disconnects the rest of the graph
    cut_vertices: tuple[int, ...] = ()


def dyadic_sum(hist: Iterable[int]) -> float:
    """``sum_d hist[d] * 2**-d`` for ``d >= 1``, correctly rounded."""
    return math.fsum(math.ldexp(float(c), -d) for d, c in enumerate(hist) if d and c)


def vertex_closeness(g: Graph, v: int) -> float:
    row = bfs_distances(g, v)
    return math.fsum(math.ldexp(1.0, -d) for d in row.dist if d)


def graph_closeness(g: Graph) -> ClosenessReport:
    hist = level_census(g)
    per_vertex = tuple(dyadic_sum(row) for row in hist)
    total = dyadic_sum(hist.sum(axis=0))
    return ClosenessReport(per_vertex, total)


def closeness_after_removal(g: Graph, v: int) -> float:
    if not 0 <= v < g.n:
        raise ParameterError(f"vertex {v} out of range for n={g.n}")
    (hist,) = removal_census(g, [v])
    return dyadic_sum(hist)


def residual_closeness(g: Graph) -> ResidualReport:
    if g.n < 2:
        raise ParameterError("residual closeness needs at least two vertices")
    hists = removal_census(g, list(range(g.n)))
    per_removal = tuple(dyadic_sum(h) for h in hists)
    r_value = min(per_removal)
    argmin = tuple(int(v) for v in np.flatnonzero(np.array(per_removal) == r_value))
    full = (g.n - 1) * (g.n - 2)
    cut = tuple(v for v, h in enumerate(hists) if int(h.sum()) != full)
    return ResidualReport(per_removal, r_value, argmin, cut)
