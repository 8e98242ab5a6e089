"""Compressed sparse graph representation and cut/conductance primitives."""

from __future__ import annotations

import io
import os
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np
from scipy.sparse import csgraph, csr_matrix


class EdgeListFormatError(ValueError):
    """Raised when an edge-list stream cannot be parsed."""


class Graph:
    """Immutable undirected simple graph with sorted compressed adjacency.

    Vertices are the contiguous ids ``0..n-1``.  ``labels``, when present,
    maps each contiguous id back to the original vertex label of the input
    the graph was built from.  All arrays are read-only, so a Graph can be
    shared freely across threads.
    """

    __slots__ = ("indptr", "indices", "degrees", "labels")

    def __init__(self, indptr, indices, labels=None):
        indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        indices = np.ascontiguousarray(indices, dtype=np.int64)
        if indptr.ndim != 1 or indptr.size == 0 or indptr[0] != 0:
            raise ValueError("indptr must be 1-d, nonempty and start at 0")
        if indptr[-1] != indices.size:
            raise ValueError("indptr and indices disagree on edge count")
        self.indptr = indptr
        self.indices = indices
        self.degrees = np.diff(indptr)
        if labels is not None:
            labels = np.ascontiguousarray(labels, dtype=np.int64)
            if labels.size != self.n:
                raise ValueError("labels must have one entry per vertex")
            labels.setflags(write=False)
        self.labels = labels
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)
        self.degrees.setflags(write=False)

    @property
    def n(self) -> int:
        """Number of vertices."""
        return self.indptr.size - 1

    @property
    def m(self) -> int:
        """Number of undirected edges."""
        return self.indices.size // 2

    @property
    def total_volume(self) -> int:
        """Sum of all degrees, i.e. 2m."""
        return int(self.indices.size)

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbor ids of ``v`` (a read-only view)."""
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def edge_array(self) -> np.ndarray:
        """All undirected edges as a (m, 2) array with u < v per row."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keep = src < self.indices
        return np.column_stack((src[keep], self.indices[keep]))

    def to_csr(self, dtype=np.float64) -> csr_matrix:
        """Adjacency matrix as a scipy CSR matrix."""
        data = np.ones(self.indices.size, dtype=dtype)
        return csr_matrix(
            (data, self.indices.astype(np.int32, copy=False), self.indptr),
            shape=(self.n, self.n),
        )

    def validate(self) -> None:
        """Check structural invariants; raises ValueError on violation."""
        n = self.n
        if self.indices.size and (self.indices.min() < 0 or self.indices.max() >= n):
            raise ValueError("neighbor id out of range")
        src = np.repeat(np.arange(n, dtype=np.int64), self.degrees)
        if np.any(src == self.indices):
            raise ValueError("self-loop present")
        for v in range(n):
            row = self.neighbors(v)
            if row.size > 1 and np.any(np.diff(row) <= 0):
                raise ValueError(f"adjacency of {v} not sorted/duplicate-free")
        # symmetry: the set of (u,v) pairs equals the set of (v,u) pairs
        fwd = src * n + self.indices
        rev = self.indices * n + src
        if not np.array_equal(np.sort(fwd), np.sort(rev)):
            raise ValueError("adjacency not symmetric")
        if int(self.degrees.sum()) != self.total_volume:
            raise ValueError("degree sum does not match volume")

    @classmethod
    def from_edges(cls, edges, n: int | None = None, labels=None) -> "Graph":
        """Build a graph from an iterable/array of (u, v) pairs.

        Self-loops are dropped; duplicate and reversed edges are merged.
        """
        edges = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                           dtype=np.int64)
        edges = edges.reshape(-1, 2)
        edges = edges[edges[:, 0] != edges[:, 1]]
        if n is None:
            n = int(edges.max()) + 1 if edges.size else 0
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise ValueError("vertex id out of range")
        both = np.concatenate((edges, edges[:, ::-1]), axis=0)
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        if both.shape[0]:
            keep = np.empty(both.shape[0], dtype=bool)
            keep[0] = True
            keep[1:] = np.any(both[1:] != both[:-1], axis=1)
            both = both[keep]
        counts = np.bincount(both[:, 0], minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return cls(indptr, both[:, 1].copy(), labels=labels)


@dataclass(frozen=True, eq=False)
class VertexSet:
    """A vertex set with its boundary statistics.

    ``internal`` follows the doubled-edge convention: it equals
    ``vol - cut``, i.e. twice the number of edges inside the set.
    """

    members: np.ndarray
    cut: int
    vol: int
    internal: int

    @property
    def size(self) -> int:
        return int(self.members.size)


@dataclass(frozen=True, eq=False)
class SweepCurve:
    """Conductance of every prefix of a scored vertex ordering.

    ``prefix_conductance[i]`` is the conductance of the first ``i + 1``
    vertices; prefixes whose complement has zero volume are NaN and are
    excluded from the argmin.
    """

    order: np.ndarray
    prefix_cut: np.ndarray
    prefix_vol: np.ndarray
    prefix_conductance: np.ndarray
    best_index: int | None
    best_conductance: float | None

    def best_prefix(self) -> np.ndarray:
        """Members of the best-conductance prefix (empty if none defined)."""
        if self.best_index is None:
            return np.empty(0, dtype=np.int64)
        return self.order[: self.best_index + 1]


def _concat_rows(graph: Graph, vertices: np.ndarray):
    """Concatenate adjacency rows of ``vertices``.

    Returns ``(dst, row)`` where ``dst`` holds the neighbor ids of each
    vertex in order and ``row[k]`` is the position within ``vertices`` the
    k-th neighbor belongs to.
    """
    counts = graph.degrees[vertices]
    total = int(counts.sum())
    row = np.repeat(np.arange(vertices.size, dtype=np.int64), counts)
    if total == 0:
        return np.empty(0, dtype=np.int64), row
    starts = graph.indptr[vertices]
    offsets = np.arange(total, dtype=np.int64) - np.repeat(
        np.cumsum(counts) - counts, counts
    )
    dst = graph.indices[np.repeat(starts, counts) + offsets]
    return dst, row


def set_metrics(graph: Graph, members) -> VertexSet:
    """Cut, volume and internal edge volume of a vertex set, by direct count."""
    members = np.unique(np.asarray(members, dtype=np.int64))
    if members.size and (members[0] < 0 or members[-1] >= graph.n):
        raise ValueError("vertex id out of range")
    vol = int(graph.degrees[members].sum())
    dst, _ = _concat_rows(graph, members)
    in_set = np.zeros(graph.n, dtype=bool)
    in_set[members] = True
    internal = int(np.count_nonzero(in_set[dst]))
    return VertexSet(members=members, cut=vol - internal, vol=vol, internal=internal)


def conductance(graph: Graph, subset) -> float | None:
    """Conductance cut/min(vol, 2m - vol); None when the minimum is zero.

    ``subset`` may be a VertexSet or any iterable of vertex ids.  The empty
    set and the full vertex set are undefined, not 0 or 1.
    """
    vs = subset if isinstance(subset, VertexSet) else set_metrics(graph, subset)
    return conductance_from_counts(vs.cut, vs.vol, graph.total_volume)


def conductance_from_counts(cut: int, vol: int, total_volume: int) -> float | None:
    smaller = min(vol, total_volume - vol)
    if smaller <= 0:
        return None
    return cut / smaller


def sweep(graph: Graph, order) -> SweepCurve:
    """Evaluate the conductance of every prefix of ``order`` incrementally.

    The update adds one vertex at a time: cut grows by the vertex degree
    minus twice its edges into the current prefix.  Vectorized by bucketing
    each internal edge at the step where its later endpoint arrives.
    """
    order = np.asarray(order, dtype=np.int64)
    if np.unique(order).size != order.size:
        raise ValueError("sweep ordering contains duplicates")
    if order.size and (order.min() < 0 or order.max() >= graph.n):
        raise ValueError("vertex id out of range")
    length = order.size
    if length == 0:
        empty_f = np.empty(0, dtype=np.float64)
        empty_i = np.empty(0, dtype=np.int64)
        return SweepCurve(order, empty_i, empty_i.copy(), empty_f, None, None)
    pos = np.full(graph.n, -1, dtype=np.int64)
    pos[order] = np.arange(length, dtype=np.int64)
    dst, row = _concat_rows(graph, order)
    dpos = pos[dst]
    inside = dpos >= 0
    # each internal undirected edge shows up twice with the same max position
    step = np.maximum(row[inside], dpos[inside])
    closing = np.bincount(step, minlength=length)
    internal = np.cumsum(closing)
    vol = np.cumsum(graph.degrees[order])
    cut = vol - internal
    smaller = np.minimum(vol, graph.total_volume - vol)
    with np.errstate(invalid="ignore"):
        phi = np.where(smaller > 0, cut / np.maximum(smaller, 1), np.nan)
    if np.all(np.isnan(phi)):
        best_index, best_phi = None, None
    else:
        best_index = int(np.nanargmin(phi))
        best_phi = float(phi[best_index])
    return SweepCurve(
        order=order,
        prefix_cut=cut,
        prefix_vol=vol,
        prefix_conductance=phi,
        best_index=best_index,
        best_conductance=best_phi,
    )


def connected_components(graph: Graph):
    """Component label per vertex and the number of components."""
    if graph.n == 0:
        return np.empty(0, dtype=np.int64), 0
    count, labels = csgraph.connected_components(graph.to_csr(), directed=False)
    return labels.astype(np.int64), int(count)


def is_connected(graph: Graph) -> bool:
    return connected_components(graph)[1] <= 1


def induced_subgraph(graph: Graph, vertices) -> tuple[Graph, np.ndarray]:
    """Subgraph induced on ``vertices``, relabeled contiguously.

    Returns the subgraph and the old-to-new id map (-1 for dropped
    vertices).  Original labels are carried through when present.
    """
    vertices = np.unique(np.asarray(vertices, dtype=np.int64))
    old_to_new = np.full(graph.n, -1, dtype=np.int64)
    old_to_new[vertices] = np.arange(vertices.size, dtype=np.int64)
    dst, row = _concat_rows(graph, vertices)
    keep = old_to_new[dst] >= 0
    new_dst = old_to_new[dst[keep]]
    counts = np.bincount(row[keep], minlength=vertices.size)
    indptr = np.zeros(vertices.size + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    labels = graph.labels[vertices] if graph.labels is not None else None
    return Graph(indptr, new_dst, labels=labels), old_to_new


def largest_connected_component(graph: Graph) -> tuple[Graph, np.ndarray]:
    """Induced subgraph on the largest component plus the old-to-new map.

    Ties between equally large components go to the one containing the
    smallest original label.
    """
    if graph.n == 0:
        raise ValueError("empty graph has no components")
    labels, count = connected_components(graph)
    if count <= 1:
        return graph, np.arange(graph.n, dtype=np.int64)
    sizes = np.bincount(labels, minlength=count)
    first = np.full(count, graph.n, dtype=np.int64)
    np.minimum.at(first, labels, np.arange(graph.n, dtype=np.int64))
    candidates = np.flatnonzero(sizes == sizes.max())
    if graph.labels is not None:
        tie_key = graph.labels[first[candidates]]
    else:
        tie_key = first[candidates]
    winner = candidates[np.argmin(tie_key)]
    keep = np.flatnonzero(labels == winner)
    return induced_subgraph(graph, keep)


def _iter_lines(source) -> Iterable[tuple[int, str]]:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rt", encoding="utf-8") as handle:
            yield from enumerate(handle, start=1)
        return
    if isinstance(source, (bytes, bytearray)):
        source = io.StringIO(source.decode("utf-8"))
    if hasattr(source, "read"):
        first = source.read(0)
        if isinstance(first, bytes):
            source = io.TextIOWrapper(source, encoding="utf-8")
        yield from enumerate(source, start=1)
        return
    yield from enumerate(source, start=1)


def load_edge_list(source) -> Graph:
    """Parse a whitespace-separated edge list into a Graph.

    Lines starting with ``#`` or ``%`` are comments.  The first data line
    may be a three-token size header, which is skipped.  Vertex labels are
    remapped to contiguous ids; the original labels are kept on
    ``Graph.labels``.  Self-loops are discarded and duplicate or reversed
    edges merged.
    """
    endpoints: list[int] = []
    first_data_line = True
    for lineno, raw in _iter_lines(source):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        tokens = line.split()
        if len(tokens) == 3 and first_data_line:
            first_data_line = False
            continue
        first_data_line = False
        if len(tokens) != 2:
            raise EdgeListFormatError(
                f"line {lineno}: expected two vertex tokens, got {len(tokens)}"
            )
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError as exc:
            raise EdgeListFormatError(f"line {lineno}: non-integer vertex token") from exc
        if u < 0 or v < 0:
            raise EdgeListFormatError(f"line {lineno}: negative vertex id")
        if u == v:
            continue
        endpoints.append(u)
        endpoints.append(v)
    if not endpoints:
        raise EdgeListFormatError("edge list holds no edges after cleaning")
    flat = np.asarray(endpoints, dtype=np.int64)
    labels = np.unique(flat)
    remapped = np.searchsorted(labels, flat).reshape(-1, 2)
    return Graph.from_edges(remapped, n=labels.size, labels=labels)


def write_label_map(graph: Graph, handle: IO[str]) -> None:
    """Write the two-column "original new" label map for ``graph``."""
    labels = graph.labels
    if labels is None:
        labels = np.arange(graph.n, dtype=np.int64)
    for new_id, original in enumerate(labels):
        handle.write(f"{original} {new_id}\n")
