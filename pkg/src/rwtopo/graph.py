"""Compact undirected graphs with CSR adjacency, edge ids, and BFS oracles.

Node ids are dense integers ``0..n-1`` and every undirected edge carries a
stable id ``0..m-1``, so visited-node sets and covered-edge sets can be flat
boolean arrays.  Graphs are immutable after construction and safe to share
across threads or worker processes.
"""

from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass
from typing import IO, Union

import numpy as np

# Sentinel for "no path" in hop-distance arrays.  Distinct from every valid
# hop count; callers must compare against the constant, never against 0/n.
UNREACHABLE = -1


class EdgeListParseError(ValueError):
    """Malformed edge-list input (bad token, wrong arity, or no edges)."""


def _canonical_edges(n: int, edges: np.ndarray) -> np.ndarray:
    """Drop self-loops, deduplicate, and return edges as sorted (lo, hi) pairs."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if edges.size == 0:
        return edges
    if edges.min() < 0 or edges.max() >= n:
        raise ValueError("edge endpoint out of range 0..n-1")
    edges = edges[edges[:, 0] != edges[:, 1]]
    if edges.size == 0:
        return edges.reshape(-1, 2)
    lo = np.minimum(edges[:, 0], edges[:, 1])
    hi = np.maximum(edges[:, 0], edges[:, 1])
    code = np.unique(lo * np.int64(n) + hi)
    return np.stack([code // n, code % n], axis=1)


class Graph:
    """Immutable simple undirected graph.

    Parameters
    ----------
    n : int
        Number of nodes; ids are ``0..n-1``.
    edges : array-like of shape (k, 2)
        Endpoint pairs.  Self-loops are dropped and duplicates (in either
        orientation) are merged, so the stored graph is always simple.
    original_ids : array-like of length n, optional
        External labels for nodes, kept for reporting when the graph was
        remapped from an arbitrary id space.
    """

    __slots__ = ("n", "m", "edges", "indptr", "adj", "adj_edge_ids", "original_ids")

    def __init__(self, n: int, edges, original_ids=None):
        if n < 1:
            raise ValueError("graph needs at least one node")
        self.n = int(n)
        self.edges = _canonical_edges(self.n, edges)
        self.m = int(self.edges.shape[0])
        if original_ids is not None:
            original_ids = np.asarray(original_ids, dtype=np.int64)
            if original_ids.shape != (self.n,):
                raise ValueError("original_ids must have one entry per node")
        self.original_ids = original_ids

        deg = np.bincount(self.edges.ravel(), minlength=self.n)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        eid = np.arange(self.m, dtype=np.int64)
        src = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
        dst = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
        order = np.lexsort((dst, src))
        self.indptr = indptr
        self.adj = dst[order]
        self.adj_edge_ids = np.concatenate([eid, eid])[order]

    # -- read-only accessors -------------------------------------------------

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        """Neighbor ids of ``v``, sorted ascending."""
        return self.adj[self.indptr[v] : self.indptr[v + 1]]

    def incident_edge_ids(self, v: int) -> np.ndarray:
        return self.adj_edge_ids[self.indptr[v] : self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.neighbors(u)
        i = int(np.searchsorted(nbrs, v))
        return i < nbrs.size and nbrs[i] == v

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DegreeMoments:
    """First and second degree moments of a graph.

    ``q = (<k^2> - <k>) / <k>`` is the expected number of *new* edges a walker
    gains per newly visited node (the inspection-biased mean degree minus the
    arrival edge); it is the quantity that makes heavy-tailed graphs easy to
    cover.
    """

    mean_degree: float
    second_moment: float

    def __post_init__(self):
        if self.mean_degree <= 0:
            raise ValueError("mean degree must be positive (graph has no edges?)")
        if self.second_moment < self.mean_degree**2 * (1 - 1e-12):
            raise ValueError("second moment below squared mean violates Jensen")

    @property
    def q(self) -> float:
        return (self.second_moment - self.mean_degree) / self.mean_degree


def degree_moments(g: Graph) -> DegreeMoments:
    """Exact degree moments over all ``n`` nodes of ``g``."""
    deg = g.degrees.astype(np.float64)
    if g.m == 0:
        raise ValueError("degree moments undefined for an edgeless graph")
    return DegreeMoments(float(deg.mean()), float((deg**2).mean()))


# -- ingestion / serialization ------------------------------------------------

Source = Union[str, os.PathLike, bytes, IO]


def _read_text(source: Source) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            return fh.read().decode("utf-8")
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def load_edge_list(source: Source) -> Graph:
    """Parse a whitespace-separated edge list into a simple undirected Graph.

    One edge per line, two integer node ids; lines starting with ``#`` are
    comments and blank lines are ignored.  Duplicate edges (in either
    orientation) and self-loops are dropped.  Node ids are remapped to dense
    ``0..n-1`` in first-appearance order; the original labels are kept on the
    returned graph's ``original_ids``.

    Raises
    ------
    EdgeListParseError
        On a malformed line (with its line number) or if the input contains
        no edge lines at all.
    """
    text = _read_text(source)
    remap: dict[int, int] = {}
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(
                f"line {lineno}: expected two node ids, got {len(parts)} tokens"
            )
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"line {lineno}: non-integer node id") from None
        for label in (a, b):
            if label not in remap:
                remap[label] = len(remap)
        pairs.append((remap[a], remap[b]))
    if not pairs:
        raise EdgeListParseError("empty input: no edge lines found")
    originals = np.fromiter(remap.keys(), dtype=np.int64, count=len(remap))
    return Graph(len(remap), np.asarray(pairs, dtype=np.int64), original_ids=originals)


def write_edge_list(g: Graph, dest: Union[str, os.PathLike, IO], use_original_ids: bool = False) -> None:
    """Write ``g`` as a canonical edge list (one ``u v`` line per edge).

    Isolated nodes are not representable in this format and are lost on a
    round trip.
    """
    edges = g.edges
    if use_original_ids and g.original_ids is not None:
        edges = g.original_ids[edges]
    lines = "".join(f"{u} {v}\n" for u, v in edges.tolist())
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(lines)
    else:
        dest.write(lines)


# -- traversal ------------------------------------------------------------------


def bfs_tree(g: Graph, source: int, edge_mask: np.ndarray | None = None):
    """Breadth-first hop distances and predecessors from ``source``.

    When ``edge_mask`` (a boolean array over edge ids) is given, only edges
    with a true mask entry are traversed, i.e. the search runs on a subgraph
    of ``g`` sharing its node ids.

    Returns
    -------
    (dist, parent) : pair of int64 arrays of length n
        ``dist`` holds hop counts with UNREACHABLE for nodes not reached;
        ``parent`` holds the BFS predecessor (-1 for the source and for
        unreached nodes).  Parent choice is deterministic: the smallest-id
        frontier node at the previous level wins ties.
    """
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range")
    dist = np.full(g.n, UNREACHABLE, dtype=np.int64)
    parent = np.full(g.n, -1, dtype=np.int64)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    depth = 0
    while frontier.size:
        starts = g.indptr[frontier]
        counts = g.indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        base = np.cumsum(counts) - counts
        arc_idx = np.repeat(starts - base, counts) + np.arange(total)
        nbrs = g.adj[arc_idx]
        srcs = np.repeat(frontier, counts)
        if edge_mask is not None:
            keep = edge_mask[g.adj_edge_ids[arc_idx]]
            nbrs = nbrs[keep]
            srcs = srcs[keep]
        fresh = dist[nbrs] == UNREACHABLE
        nbrs = nbrs[fresh]
        srcs = srcs[fresh]
        uniq, first = np.unique(nbrs, return_index=True)
        if uniq.size == 0:
            break
        depth += 1
        dist[uniq] = depth
        parent[uniq] = srcs[first]
        frontier = uniq
    return dist, parent


def bfs_distances(g: Graph, source: int, edge_mask: np.ndarray | None = None) -> np.ndarray:
    """Hop distances from ``source`` (UNREACHABLE where no path exists)."""
    dist, _ = bfs_tree(g, source, edge_mask)
    return dist


def component_labels(g: Graph) -> tuple[np.ndarray, list[int]]:
    """Label connected components in discovery order; returns (labels, sizes)."""
    labels = np.full(g.n, -1, dtype=np.int64)
    sizes: list[int] = []
    for seed in range(g.n):
        if labels[seed] >= 0:
            continue
        comp = len(sizes)
        labels[seed] = comp
        frontier = np.array([seed], dtype=np.int64)
        size = 1
        while frontier.size:
            starts = g.indptr[frontier]
            counts = g.indptr[frontier + 1] - starts
            total = int(counts.sum())
            if total == 0:
                break
            base = np.cumsum(counts) - counts
            arc_idx = np.repeat(starts - base, counts) + np.arange(total)
            nbrs = g.adj[arc_idx]
            nbrs = np.unique(nbrs[labels[nbrs] < 0])
            labels[nbrs] = comp
            size += int(nbrs.size)
            frontier = nbrs
        sizes.append(size)
    return labels, sizes


def giant_component(g: Graph) -> tuple[Graph, np.ndarray]:
    """Induced subgraph on the largest connected component.

    Ties on size are broken by the smallest minimum original node id (dense
    ids double as original ids when the graph was never remapped).  Returns
    the subgraph plus an old-to-new id mapping (-1 for nodes outside it).
    """
    labels, sizes = component_labels(g)
    best = max(range(len(sizes)), key=lambda c: (sizes[c], -_min_original(g, labels, c)))
    members = np.flatnonzero(labels == best)
    mapping = np.full(g.n, -1, dtype=np.int64)
    mapping[members] = np.arange(members.size)
    keep = labels[g.edges[:, 0]] == best
    sub_edges = mapping[g.edges[keep]]
    originals = g.original_ids[members] if g.original_ids is not None else members
    return Graph(members.size, sub_edges, original_ids=originals.copy()), mapping


def _min_original(g: Graph, labels: np.ndarray, comp: int) -> int:
    members = np.flatnonzero(labels == comp)
    if g.original_ids is not None:
        return int(g.original_ids[members].min())
    return int(members.min())


def path_stretch(d_sub, d_true) -> float:
    """Ratio of a subgraph path length to the true shortest-path length.

    ``d_sub`` may be UNREACHABLE, in which case the stretch is ``inf`` (the
    INF bucket of the evaluation matrices).  ``d_true`` must be a finite hop
    count of at least 1: a value of 0 means identical endpoints, for which
    stretch is undefined.
    """
    if d_true == 0:
        raise ValueError("stretch undefined for identical endpoints (d_true = 0)")
    if d_true == UNREACHABLE or d_true < 1:
        raise ValueError("d_true must be a finite hop count >= 1")
    if d_sub == UNREACHABLE:
        return math.inf
    if d_sub < 0:
        raise ValueError("d_sub must be a hop count or UNREACHABLE")
    return d_sub / d_true


def stats_report(g: Graph) -> dict:
    """Summary statistics as a JSON-ready dict."""
    mom = degree_moments(g)
    _, sizes = component_labels(g)
    return {
        "n": g.n,
        "m": g.m,
        "mean_degree": mom.mean_degree,
        "second_moment": mom.second_moment,
        "q": mom.q,
        "giant_component_fraction": max(sizes) / g.n,
    }
