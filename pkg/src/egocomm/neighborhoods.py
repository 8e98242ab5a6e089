"""Triangle counting, clustering coefficients and neighborhood-ball cuts.

The per-vertex ball statistics use the triangle shortcut: the internal edge
volume of the ball around v is twice the spokes plus twice the edges among
neighbors, so the cut follows from degree sums alone once triangles are
counted.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import IO

import numpy as np

from . import _kernels
from .graph import Graph, conductance_from_counts


@dataclass(frozen=True, eq=False)
class NeighborhoodStats:
    """Per-vertex degree, wedge, triangle and ball-cut statistics.

    ``local_cc`` and ``ball_conductance`` are NaN where undefined (degree
    below 2, or a ball covering the full graph).
    """

    degree: np.ndarray
    wedges: np.ndarray
    triangles: np.ndarray
    local_cc: np.ndarray
    ball_size: np.ndarray
    ball_cut: np.ndarray
    ball_vol: np.ndarray
    ball_conductance: np.ndarray

    @property
    def n(self) -> int:
        return int(self.degree.size)


@dataclass(frozen=True, eq=False)
class GlobalClustering:
    """Whole-graph wedge statistics.

    ``kappa`` is the fraction of closed wedges (None when the graph has no
    wedge at all); ``mean_local`` averages the local coefficient over
    wedge-bearing vertices only.
    """

    total_wedges: int
    closed_wedges: int
    kappa: float | None
    mean_local: float | None
    wedge_weights: np.ndarray


@dataclass(frozen=True)
class IdentityCheck:
    """Two independently computed integer sides of a combinatorial identity."""

    name: str
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class BoundsReport:
    """Observed core depth and best ball conductance next to their
    clustering-based bounds.  Reported, never asserted: the bounds only
    bind under heavy-tailed degrees and large clustering."""

    kappa: float | None
    beta: float
    max_degree: int
    core_lower_bound: float | None
    max_core: int
    core_bound_met: bool | None
    ball_conductance_bound: float | None
    min_ball_conductance: float | None
    ball_bound_met: bool | None


def triangle_counts(graph: Graph) -> np.ndarray:
    """Number of edges among the neighbors of each vertex; exact.

    Uses degree-ordered adjacency intersection, so each triangle is
    enumerated once at its lowest-degree corner.
    """
    n = graph.n
    if n == 0:
        return np.empty(0, dtype=np.int64)
    order = np.lexsort((np.arange(n), graph.degrees))
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n, dtype=np.int64)
    src = np.repeat(np.arange(n, dtype=np.int64), graph.degrees)
    rs = rank[src]
    rd = rank[graph.indices]
    keep = rd > rs
    rs, rd = rs[keep], rd[keep]
    perm = np.lexsort((rd, rs))
    rs, rd = rs[perm], rd[perm]
    optr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(rs, minlength=n), out=optr[1:])
    by_rank = _kernels.oriented_triangle_counts(optr, rd)
    return by_rank[rank]


def closed_wedge_total(graph: Graph) -> int:
    """Closed wedge count via per-edge common-neighbor intersection.

    Independent of :func:`triangle_counts`; equals three times the number
    of triangles.
    """
    return int(_kernels.closed_wedge_total(graph.indptr, graph.indices))


def wedge_counts(graph: Graph) -> np.ndarray:
    """Wedges centered at each vertex: d choose 2."""
    d = graph.degrees
    return d * (d - 1) // 2


def global_clustering(graph: Graph, triangles: np.ndarray | None = None) -> GlobalClustering:
    """Global and mean-local clustering coefficients with wedge weights."""
    if triangles is None:
        triangles = triangle_counts(graph)
    wedges = wedge_counts(graph)
    total = int(wedges.sum())
    closed = int(triangles.sum())
    weights = np.zeros(graph.n, dtype=np.float64)
    if total > 0:
        weights = wedges / total
        kappa = closed / total
    else:
        kappa = None
    defined = wedges > 0
    if np.any(defined):
        mean_local = float(np.mean(triangles[defined] / wedges[defined]))
    else:
        mean_local = None
    return GlobalClustering(
        total_wedges=total,
        closed_wedges=closed,
        kappa=kappa,
        mean_local=mean_local,
        wedge_weights=weights,
    )


def ball_members(graph: Graph, v: int) -> np.ndarray:
    """The distance-1 ball around v: v plus its neighbors, sorted."""
    nbrs = graph.neighbors(v)
    return np.insert(nbrs, np.searchsorted(nbrs, v), v)


def neighborhood_stats(graph: Graph, triangles: np.ndarray | None = None) -> NeighborhoodStats:
    """Degree, triangles, local clustering and ball cut stats for every vertex."""
    if triangles is None:
        triangles = triangle_counts(graph)
    d = graph.degrees
    wedges = wedge_counts(graph)
    with np.errstate(invalid="ignore"):
        local_cc = np.where(wedges > 0, triangles / np.maximum(wedges, 1), np.nan)
    # neighbor degree sums via prefix sums over the concatenated adjacency
    cs = np.concatenate(([0], np.cumsum(d[graph.indices])))
    nbr_deg_sum = cs[graph.indptr[1:]] - cs[graph.indptr[:-1]]
    ball_vol = d + nbr_deg_sum
    ball_internal = 2 * (d + triangles)
    ball_cut = ball_vol - ball_internal
    ball_size = d + 1
    smaller = np.minimum(ball_vol, graph.total_volume - ball_vol)
    with np.errstate(invalid="ignore"):
        ball_phi = np.where(smaller > 0, ball_cut / np.maximum(smaller, 1), np.nan)
    return NeighborhoodStats(
        degree=d,
        wedges=wedges,
        triangles=triangles,
        local_cc=local_cc,
        ball_size=ball_size,
        ball_cut=ball_cut,
        ball_vol=ball_vol,
        ball_conductance=ball_phi,
    )


def check_closed_wedge_identity(graph: Graph,
                                triangles: np.ndarray | None = None) -> IdentityCheck:
    """Check that per-vertex triangle counts sum to the closed wedge count.

    Both sides are integers from independent counters, so the comparison is
    exact: the left side sums corner counts, the right intersects adjacency
    lists edge by edge.
    """
    if triangles is None:
        triangles = triangle_counts(graph)
    return IdentityCheck(
        name="closed-wedges",
        lhs=int(triangles.sum()),
        rhs=closed_wedge_total(graph),
    )


def check_ball_cut_identity(graph: Graph,
                            stats: NeighborhoodStats | None = None) -> IdentityCheck:
    """Check that ball cuts sum to exactly twice the open wedge count."""
    if stats is None:
        stats = neighborhood_stats(graph)
    total_wedges = int(stats.wedges.sum())
    closed = closed_wedge_total(graph)
    return IdentityCheck(
        name="ball-cuts",
        lhs=int(stats.ball_cut.sum()),
        rhs=2 * (total_wedges - closed),
    )


def bound_diagnostics(graph: Graph, beta: float = 2.0 / 3.0,
                      stats: NeighborhoodStats | None = None) -> BoundsReport:
    """Compare the clustering-implied core and ball-conductance bounds
    against what the graph actually contains.

    The core side predicts a core of order kappa * d_max^beta / 2; the ball
    side bounds the best neighborhood conductance by 4(1-kappa)/(3-2kappa).
    """
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0, 1)")
    from .cores import core_decomposition

    if stats is None:
        stats = neighborhood_stats(graph)
    clustering = global_clustering(graph, stats.triangles)
    kappa = clustering.kappa
    d_max = int(stats.degree.max()) if graph.n else 0
    max_core = int(core_decomposition(graph).core_number.max()) if graph.n else 0
    defined = ~np.isnan(stats.ball_conductance)
    min_ball = float(stats.ball_conductance[defined].min()) if np.any(defined) else None
    if kappa is None:
        return BoundsReport(kappa, beta, d_max, None, max_core, None, None, min_ball, None)
    core_bound = kappa * d_max ** beta / 2.0
    ball_bound = 4.0 * (1.0 - kappa) / (3.0 - 2.0 * kappa)
    return BoundsReport(
        kappa=kappa,
        beta=beta,
        max_degree=d_max,
        core_lower_bound=core_bound,
        max_core=max_core,
        core_bound_met=bool(max_core >= core_bound),
        ball_conductance_bound=ball_bound,
        min_ball_conductance=min_ball,
        ball_bound_met=None if min_ball is None else bool(min_ball <= ball_bound + 1e-12),
    )


def write_stats_csv(stats: NeighborhoodStats, handle: IO[str], delimiter: str = ",") -> None:
    """Emit one row per vertex with degree, triangle and ball columns."""
    writer = csv.writer(handle, delimiter=delimiter, lineterminator="\n")
    writer.writerow(["vertex", "degree", "triangles", "local_cc", "ball_size",
                     "ball_cut", "ball_vol", "ball_conductance"])
    for v in range(stats.n):
        cc = "" if np.isnan(stats.local_cc[v]) else f"{stats.local_cc[v]:.6g}"
        phi = "" if np.isnan(stats.ball_conductance[v]) else f"{stats.ball_conductance[v]:.6g}"
        writer.writerow([v, stats.degree[v], stats.triangles[v], cc,
                         stats.ball_size[v], stats.ball_cut[v], stats.ball_vol[v], phi])
