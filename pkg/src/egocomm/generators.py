"""Synthetic graphs: forest-fire growth, clique unions, Erdős–Rényi samples."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import Graph


@dataclass(frozen=True)
class ForestFireParams:
    """Parameters of the forest-fire growth model.

    ``p`` is the probability of following an edge while burning; each new
    node starts a fire at a uniformly chosen ambassador.
    """

    n: int
    p: float
    k: int = 2
    rng_seed: int | None = None

    def __post_init__(self):
        if not self.n >= self.k >= 1:
            raise ValueError("need n >= k >= 1")
        if not 0.0 <= self.p < 1.0:
            raise ValueError("burn probability must lie in [0, 1)")


def forest_fire(params: ForestFireParams | None = None, *, n: int | None = None,
                p: float | None = None, k: int = 2, rng_seed: int | None = None) -> Graph:
    """Grow a forest-fire graph: burn outward from an ambassador, link to
    every burned node.

    Burning is breadth-first; at each burned node the number of additional
    neighbors to burn is geometric with mean p/(1-p), drawn over the
    not-yet-burned neighbors.  The result is connected and simple, and
    identical runs share a seed bit for bit.
    """
    if params is None:
        params = ForestFireParams(n=n, p=p, k=k, rng_seed=rng_seed)
    rng = np.random.default_rng(params.rng_seed)
    adjacency: list[set[int]] = [set() for _ in range(params.n)]
    edges: list[tuple[int, int]] = []

    def link(a: int, b: int) -> None:
        adjacency[a].add(b)
        adjacency[b].add(a)
        edges.append((a, b))

    for i in range(params.k):
        for j in range(i):
            link(j, i)
    for i in range(params.k, params.n):
        ambassador = int(rng.integers(0, i))
        burned = {ambassador}
        frontier = deque([ambassador])
        while frontier:
            u = frontier.popleft()
            extra = int(rng.geometric(1.0 - params.p)) - 1
            if extra <= 0:
                continue
            candidates = sorted(adjacency[u] - burned)
            if not candidates:
                continue
            if extra >= len(candidates):
                chosen = candidates
            else:
                picks = rng.choice(len(candidates), size=extra, replace=False)
                chosen = [candidates[int(c)] for c in picks]
            for w in chosen:
                burned.add(w)
                frontier.append(w)
        for w in sorted(burned):
            link(w, i)
    return Graph.from_edges(np.asarray(edges, dtype=np.int64), n=params.n)


def clique_union(sizes, bridges=None) -> Graph:
    """Disjoint cliques of the given sizes, optionally joined by bridges.

    ``bridges`` is a list of (i, j) clique-index pairs, or the string
    "chain" for a path of bridges.  Repeated bridges at a clique attach to
    successive vertices so no endpoint is reused while spare vertices
    remain.
    """
    sizes = [int(s) for s in sizes]
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError("clique sizes must be positive")
    offsets = np.concatenate(([0], np.cumsum(sizes)))
    edges: list[tuple[int, int]] = []
    for ci, size in enumerate(sizes):
        base = int(offsets[ci])
        for a in range(size):
            for b in range(a + 1, size):
                edges.append((base + a, base + b))
    if bridges == "chain":
        bridges = [(i, i + 1) for i in range(len(sizes) - 1)]
    used = [0] * len(sizes)
    for i, j in bridges or []:
        if not (0 <= i < len(sizes) and 0 <= j < len(sizes)) or i == j:
            raise ValueError(f"invalid bridge ({i}, {j})")
        u = int(offsets[i]) + used[i] % sizes[i]
        v = int(offsets[j]) + used[j] % sizes[j]
        used[i] += 1
        used[j] += 1
        edges.append((u, v))
    return Graph.from_edges(np.asarray(edges, dtype=np.int64), n=int(offsets[-1]))


def random_graph(n: int, p: float, rng_seed: int | None = None) -> Graph:
    """Erdős–Rényi G(n, p): each pair independently with probability p."""
    if n < 1:
        raise ValueError("need n >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    rng = np.random.default_rng(rng_seed)
    rows = []
    for i in range(n - 1):
        hits = np.flatnonzero(rng.random(n - i - 1) < p) + i + 1
        if hits.size:
            rows.append(np.column_stack((np.full(hits.size, i, dtype=np.int64), hits)))
    if rows:
        edges = np.concatenate(rows, axis=0)
    else:
        edges = np.empty((0, 2), dtype=np.int64)
    return Graph.from_edges(edges, n=n)
