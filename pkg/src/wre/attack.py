"""Node-removal attack curves.

An attack curve records the giant connected component size after each
single-node removal in a prescribed order.  Two routes compute it:

* ``simulate_removal`` runs the process backwards, inserting nodes in
  reverse order into a union-find forest while tracking the running
  largest component.  One pass, near-linear time.
* ``naive_curve_oracle`` deletes nodes forward and recomputes components
  from scratch by BFS after every removal.  Quadratic and slow, kept as
  an independent check on the fast path.
"""

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph


@dataclass
class AttackCurve:
    """GCC sizes along one removal order.

    gcc_sizes[i] is the largest component size after removing
    order[0..i]; the final entry is always 0.
    """

    strategy: str
    order: np.ndarray
    gcc_sizes: np.ndarray
    n: int

    def relative(self) -> np.ndarray:
        """Curve scaled by the original node count."""
        return self.gcc_sizes / self.n

    def validate(self) -> None:
        if len(self.order) != self.n or len(self.gcc_sizes) != self.n:
            raise ValueError("curve arrays must have length n")
        if sorted(int(v) for v in self.order) != list(range(self.n)):
            raise ValueError("order must be a permutation of 0..n-1")
        sizes = np.asarray(self.gcc_sizes)
        if (np.diff(sizes) > 0).any():
            raise ValueError("gcc sizes must be non-increasing")
        if sizes[-1] != 0:
            raise ValueError("curve must end at 0")


def _check_order(g: Graph, order) -> list[int]:
    order = [int(v) for v in order]
    if len(order) != g.n or sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of all node ids")
    return order


def simulate_removal(g: Graph, order, strategy: str = "custom") -> AttackCurve:
    """Attack curve via reverse union-find insertion.

    Nodes are inserted in reverse removal order; inserting node v merges
    it with every already-present neighbor.  The running maximum component
    size after inserting order[i..] equals the GCC size after removing
    order[0..i-1], so reading the record backwards yields the curve.
    """
    order = _check_order(g, order)
    n = g.n
    adj = g.adjacency
    parent = list(range(n))
    size = [1] * n
    present = bytearray(n)
    out = [0] * n
    best = 0
    for idx in range(n - 1, 0, -1):
        v = order[idx]
        present[v] = 1
        rv = v
        while parent[rv] != rv:
            parent[rv] = parent[parent[rv]]
            rv = parent[rv]
        for w in adj[v]:
            if not present[w]:
                continue
            rw = w
            while parent[rw] != rw:
                parent[rw] = parent[parent[rw]]
                rw = parent[rw]
            if rw == rv:
                continue
            if size[rv] < size[rw]:
                rv, rw = rw, rv
            parent[rw] = rv
            size[rv] += size[rw]
        if size[rv] > best:
            best = size[rv]
        out[idx - 1] = best
    return AttackCurve(
        strategy=strategy,
        order=np.asarray(order, dtype=np.int64),
        gcc_sizes=np.asarray(out, dtype=np.int64),
        n=n,
    )


def naive_curve_oracle(g: Graph, order) -> AttackCurve:
    """Attack curve by full BFS recomputation after every removal.

    Deliberately artless: delete a node, rescan all surviving nodes,
    measure every component, take the max.  Used to certify the
    union-find path on small and medium graphs.
    """
    order = _check_order(g, order)
    n = g.n
    adj = g.adjacency
    gone = bytearray(n)
    out = []
    for v in order:
        gone[v] = 1
        seen = bytearray(gone)
        best = 0
        for start in range(n):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = 1
            count = 0
            while stack:
                x = stack.pop()
                count += 1
                for w in adj[x]:
                    if not seen[w]:
                        seen[w] = 1
                        stack.append(w)
            if count > best:
                best = count
        out.append(best)
    return AttackCurve(
        strategy="oracle",
        order=np.asarray(order, dtype=np.int64),
        gcc_sizes=np.asarray(out, dtype=np.int64),
        n=n,
    )


def attack_by_strategy(g: Graph, metric: str, tie_rule: str = "id",
                       seed=None, **params) -> AttackCurve:
    """Score the intact graph with ``metric``, rank, remove in rank order."""
    from .centrality import compute_centrality, rank

    scores = compute_centrality(g, metric, **params)
    ranking = rank(scores, tie_rule=tie_rule, seed=seed)
    curve = simulate_removal(g, ranking.order, strategy=metric)
    return curve


@dataclass
class CurveRecord:
    """A curve as read from (or written to) the curve CSV format."""

    n: int
    strategy: str
    graph_id: str
    relative: np.ndarray
    nodes: np.ndarray
    gcc_sizes: np.ndarray
    provenance: list = field(default_factory=list)


def write_curve_csv(path, n, strategy, graph_id, relative,
                    nodes=None, gcc_sizes=None, provenance=None) -> None:
    """Write one curve.

    Layout: a comment line carrying n/strategy/graph id, a column header,
    then one row per removal step (1-based).  Rows where the removed node
    or the raw GCC size is unknown (predicted curves) carry -1.  The
    optional provenance column tags rows, e.g. simulated / predicted-raw /
    predicted-filtered.
    """
    relative = np.asarray(relative, dtype=np.float64)
    steps = len(relative)
    if nodes is None:
        nodes = np.full(steps, -1, dtype=np.int64)
    if gcc_sizes is None:
        gcc_sizes = np.full(steps, -1, dtype=np.int64)
    with open(path, "w") as fh:
        fh.write(f"# n={n} strategy={strategy} graph={graph_id}\n")
        if provenance is None:
            fh.write("step,node,gcc_size,relative\n")
            for i in range(steps):
                fh.write(f"{i + 1},{int(nodes[i])},{int(gcc_sizes[i])},"
                         f"{relative[i]:.12g}\n")
        else:
            fh.write("step,node,gcc_size,relative,provenance\n")
            for i in range(steps):
                fh.write(f"{i + 1},{int(nodes[i])},{int(gcc_sizes[i])},"
                         f"{relative[i]:.12g},{provenance}\n")


def curve_to_csv(curve: AttackCurve, path, graph_id="g", provenance=None) -> None:
    write_curve_csv(path, curve.n, curve.strategy, graph_id,
                    curve.relative(), curve.order, curve.gcc_sizes,
                    provenance=provenance)


def read_curve_csv(path) -> CurveRecord:
    """Parse a curve CSV written by this package (or the evaluator)."""
    meta = {}
    nodes, gcc, rel, prov = [], [], [], []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for token in line[1:].split():
                    if "=" in token:
                        key, val = token.split("=", 1)
                        meta[key] = val
                continue
            if line.startswith("step,"):
                continue
            parts = line.split(",")
            if len(parts) < 4:
                raise ValueError(f"{path}: malformed curve row {line!r}")
            nodes.append(int(parts[1]))
            gcc.append(int(parts[2]))
            rel.append(float(parts[3]))
            prov.append(parts[4] if len(parts) > 4 else "")
    if "n" not in meta:
        raise ValueError(f"{path}: missing curve metadata line")
    return CurveRecord(
        n=int(meta["n"]),
        strategy=meta.get("strategy", "unknown"),
        graph_id=meta.get("graph", "g"),
        relative=np.asarray(rel, dtype=np.float64),
        nodes=np.asarray(nodes, dtype=np.int64),
        gcc_sizes=np.asarray(gcc, dtype=np.int64),
        provenance=_fold_provenance(prov),
    )


def _fold_provenance(per_row):
    """Collapse the optional provenance column to one tag when uniform."""
    tags = {p for p in per_row if p}
    if not tags:
        return None
    if len(tags) == 1:
        return tags.pop()
    return per_row
