"""Undirected simple graphs with contiguous integer node ids.

The graph type here is deliberately small: static topology, numpy edge
storage, adjacency lists built on demand.  Everything downstream (attack
simulation, centrality scoring, dataset generation) assumes node ids run
0..n-1 with no gaps, so ingestion relabels arbitrary node labels and keeps
the mapping around for provenance.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse


class Graph:
    """Immutable undirected simple graph.

    Parameters
    ----------
    n : int
        Number of nodes; ids are 0..n-1.  Isolated nodes are allowed.
    edges : iterable of (int, int)
        Unordered pairs.  Self loops and duplicates are rejected here;
        callers that ingest dirty data should clean it first (see
        ``load_edge_list``).
    """

    __slots__ = ("n", "_edges", "_adj", "_deg", "_csr")

    def __init__(self, n, edges):
        if n < 1:
            raise ValueError("graph needs at least one node")
        if isinstance(edges, np.ndarray):
            arr = edges.astype(np.int64, copy=True)
        else:
            arr = np.asarray(list(edges), dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("edges must be pairs")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError("edge endpoint out of range")
        if arr.size and (arr[:, 0] == arr[:, 1]).any():
            raise ValueError("self loops are not allowed")
        lo = arr.min(axis=1)
        hi = arr.max(axis=1)
        arr = np.column_stack([lo, hi])
        if arr.size:
            order = np.lexsort((arr[:, 1], arr[:, 0]))
            arr = arr[order]
            if len(arr) > 1 and (np.diff(arr, axis=0) == 0).all(axis=1).any():
                raise ValueError("duplicate edges are not allowed")
        self.n = int(n)
        self._edges = arr
        self._edges.setflags(write=False)
        self._adj = None
        self._deg = None
        self._csr = None

    @property
    def m(self) -> int:
        """Number of edges."""
        return len(self._edges)

    @property
    def edges(self) -> np.ndarray:
        """Canonical (m, 2) edge array, each row (u, v) with u < v, sorted."""
        return self._edges

    @property
    def degrees(self) -> np.ndarray:
        if self._deg is None:
            deg = np.zeros(self.n, dtype=np.int64)
            if self.m:
                np.add.at(deg, self._edges[:, 0], 1)
                np.add.at(deg, self._edges[:, 1], 1)
            deg.setflags(write=False)
            self._deg = deg
        return self._deg

    @property
    def adjacency(self):
        """Sorted neighbor lists (plain Python lists, one per node)."""
        if self._adj is None:
            adj = [[] for _ in range(self.n)]
            for u, v in self._edges.tolist():
                adj[u].append(v)
                adj[v].append(u)
            for lst in adj:
                lst.sort()
            self._adj = adj
        return self._adj

    def neighbors(self, v: int):
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return int(self.degrees[v])

    def csr(self) -> sparse.csr_matrix:
        """Symmetric adjacency matrix in CSR form (float64 entries of 1.0)."""
        if self._csr is None:
            if self.m:
                u = self._edges[:, 0]
                v = self._edges[:, 1]
                row = np.concatenate([u, v])
                col = np.concatenate([v, u])
                data = np.ones(2 * self.m, dtype=np.float64)
            else:
                row = col = np.zeros(0, dtype=np.int64)
                data = np.zeros(0, dtype=np.float64)
            self._csr = sparse.csr_matrix(
                (data, (row, col)), shape=(self.n, self.n)
            )
        return self._csr

    def edge_set(self):
        """Edges as a set of (u, v) tuples with u < v."""
        return {(int(u), int(v)) for u, v in self._edges}

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        a, b = (u, v) if u < v else (v, u)
        idx = np.searchsorted(self._edges[:, 0], a, side="left")
        while idx < self.m and self._edges[idx, 0] == a:
            if self._edges[idx, 1] == b:
                return True
            idx += 1
        return False

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass
class LoadReport:
    """What ingestion did to a raw edge list."""

    duplicates_dropped: int = 0
    self_loops_dropped: int = 0
    relabel_map: dict = field(default_factory=dict)


def _relabel(labels):
    """Map raw labels to contiguous ids.

    If every label parses as an integer the mapping follows numeric order,
    so a file already using 0..n-1 loads back unchanged.  Otherwise labels
    are ordered lexicographically.  Either way the result is deterministic
    for a given file.
    """
    try:
        ordered = sorted(labels, key=int)
    except ValueError:
        ordered = sorted(labels)
    return {lab: i for i, lab in enumerate(ordered)}


def load_edge_list(path) -> tuple[Graph, LoadReport]:
    """Read a whitespace-separated edge list.

    Lines starting with ``#`` and blank lines are ignored.  Every other
    line must hold exactly two tokens.  Duplicate edges and self loops are
    dropped (counted in the report); nodes mentioned only on dropped lines
    still enter the graph, which is also how isolated nodes round-trip
    through ``save_edge_list``.
    """
    labels = set()
    raw_edges = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected two tokens")
            labels.update(parts)
            raw_edges.append((parts[0], parts[1]))
    if not labels:
        raise ValueError(f"{path}: no nodes found")
    mapping = _relabel(labels)
    report = LoadReport(relabel_map=mapping)
    seen = set()
    edges = []
    for a, b in raw_edges:
        u, v = mapping[a], mapping[b]
        if u == v:
            report.self_loops_dropped += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            report.duplicates_dropped += 1
            continue
        seen.add(key)
        edges.append(key)
    return Graph(len(mapping), edges), report


def save_edge_list(g: Graph, path) -> None:
    """Write a graph as an edge list that reloads to an identical graph.

    Isolated nodes have no incident edge to mention them, so they are
    written as self-loop lines; the loader drops the loop but keeps the
    node, preserving n across a round trip.
    """
    deg = g.degrees
    with open(path, "w") as fh:
        for u, v in g.edges.tolist():
            fh.write(f"{u} {v}\n")
        for v in np.nonzero(deg == 0)[0].tolist():
            fh.write(f"{v} {v}\n")


def save_relabel_map(report: LoadReport, path) -> None:
    """Persist the label -> id mapping as two whitespace columns."""
    with open(path, "w") as fh:
        fh.write("# original contiguous\n")
        for lab, idx in sorted(report.relabel_map.items(), key=lambda kv: kv[1]):
            fh.write(f"{lab} {idx}\n")


def component_sizes(g: Graph, removed=None) -> list[int]:
    """Sizes of connected components after deleting ``removed`` nodes.

    ``removed`` is either an iterable of node ids or a boolean mask of
    length n.
    """
    gone = bytearray(g.n)
    if removed is not None:
        arr = np.asarray(removed)
        if arr.dtype == bool:
            if arr.shape != (g.n,):
                raise ValueError("boolean removal mask must have length n")
            for v in np.nonzero(arr)[0].tolist():
                gone[v] = 1
        else:
            for v in arr.reshape(-1).tolist():
                gone[int(v)] = 1
    adj = g.adjacency
    seen = bytearray(g.n)
    sizes = []
    for start in range(g.n):
        if seen[start] or gone[start]:
            continue
        stack = [start]
        seen[start] = 1
        count = 0
        while stack:
            v = stack.pop()
            count += 1
            for w in adj[v]:
                if not seen[w] and not gone[w]:
                    seen[w] = 1
                    stack.append(w)
        sizes.append(count)
    return sizes


def gcc_relative_size(g: Graph, removed=None) -> float:
    """Largest component size divided by the ORIGINAL node count.

    The denominator stays g.n no matter how many nodes are removed, which
    is what makes attack curves comparable along the removal sequence.
    """
    sizes = component_sizes(g, removed)
    return max(sizes, default=0) / g.n


def largest_component_nodes(g: Graph) -> list[int]:
    """Node ids of one largest connected component."""
    gone = bytearray(g.n)
    adj = g.adjacency
    best = []
    for start in range(g.n):
        if gone[start]:
            continue
        stack = [start]
        gone[start] = 1
        comp = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not gone[w]:
                    gone[w] = 1
                    comp.append(w)
                    stack.append(w)
        if len(comp) > len(best):
            best = comp
    return best


def induced_subgraph(g: Graph, nodes) -> tuple[Graph, dict]:
    """Subgraph on ``nodes``, relabeled 0..len(nodes)-1 in sorted id order.

    Returns the subgraph and the old-id -> new-id mapping.
    """
    keep = sorted(set(int(v) for v in nodes))
    mapping = {old: new for new, old in enumerate(keep)}
    member = set(keep)
    edges = []
    for u, v in g.edges.tolist():
        if u in member and v in member:
            edges.append((mapping[u], mapping[v]))
    return Graph(len(keep), edges), mapping


def sample_connected_subgraph(g: Graph, size: int, seed: int) -> tuple[Graph, dict]:
    """Random-walk frontier sample of an exact-size connected subgraph.

    Starts at a node chosen uniformly among components large enough to
    supply ``size`` nodes, then repeatedly absorbs a uniformly chosen
    frontier node (a non-sampled neighbor of the sampled set).  The
    induced subgraph on the sampled set is returned along with the
    old -> new id mapping.
    """
    if size < 1:
        raise ValueError("sample size must be positive")
    sizes = component_sizes(g)
    if max(sizes, default=0) < size:
        raise ValueError(
            f"no connected component has {size} nodes (largest: {max(sizes, default=0)})"
        )
    rng = np.random.default_rng(seed)
    # find nodes whose component is big enough, then start uniformly there
    comp_id = np.full(g.n, -1, dtype=np.int64)
    adj = g.adjacency
    cid = 0
    comp_size = []
    for start in range(g.n):
        if comp_id[start] >= 0:
            continue
        stack = [start]
        comp_id[start] = cid
        count = 0
        while stack:
            v = stack.pop()
            count += 1
            for w in adj[v]:
                if comp_id[w] < 0:
                    comp_id[w] = cid
                    stack.append(w)
        comp_size.append(count)
        cid += 1
    eligible = [v for v in range(g.n) if comp_size[comp_id[v]] >= size]
    start = eligible[int(rng.integers(len(eligible)))]

    sampled = {start}
    frontier = []
    in_frontier = set()
    for w in adj[start]:
        frontier.append(w)
        in_frontier.add(w)
    while len(sampled) < size:
        pick_at = int(rng.integers(len(frontier)))
        v = frontier[pick_at]
        frontier[pick_at] = frontier[-1]
        frontier.pop()
        in_frontier.discard(v)
        sampled.add(v)
        for w in adj[v]:
            if w not in sampled and w not in in_frontier:
                frontier.append(w)
                in_frontier.add(w)
    return induced_subgraph(g, sampled)
