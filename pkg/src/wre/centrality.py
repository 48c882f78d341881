"""Node centrality metrics and rankings.

Twelve metrics are exposed through one dispatcher, ``compute_centrality``.
The first eight (degree, hindex, coreness, closeness, betweenness,
eigenvector, pagerank, cycleratio) form the standard attack-strategy set;
hits, subgraph, load and ci extend it to twelve for the larger strategy
pool experiments.

Distance-based metrics run on a block-synchronous BFS kernel that pushes
whole source blocks through sparse matrix products, which keeps the
all-pairs work in compiled code.  Everything returns plain float arrays
indexed by node id.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import eigsh

from .graph import Graph

STANDARD_STRATEGY_SET = (
    "degree", "hindex", "coreness", "closeness",
    "betweenness", "eigenvector", "pagerank", "cycleratio",
)
EXTENDED_STRATEGY_SET = STANDARD_STRATEGY_SET + ("hits", "subgraph", "load", "ci")
METRICS = EXTENDED_STRATEGY_SET


class ConvergenceError(RuntimeError):
    """Raised when a power-iteration metric fails to converge."""


@dataclass
class CentralityScores:
    metric: str
    values: np.ndarray
    params: dict = field(default_factory=dict)


@dataclass
class Ranking:
    metric: str
    order: np.ndarray
    tie_rule: str


def compute_centrality(g: Graph, metric: str, **params) -> CentralityScores:
    """Score every node of ``g`` under one metric.

    Unknown keyword parameters raise; each metric accepts only its own
    knobs (damping for pagerank, radius for ci, and so on).
    """
    name = metric.lower()
    try:
        fn = _DISPATCH[name]
    except KeyError:
        raise ValueError(f"unknown centrality metric {metric!r}") from None
    values, used = fn(g, **params)
    return CentralityScores(metric=name, values=values, params=used)


def rank(scores: CentralityScores, tie_rule: str = "id", seed=None) -> Ranking:
    """Order nodes by descending score.

    tie_rule "id" breaks equal scores by ascending node id; "random"
    shuffles inside tie blocks using ``seed``.  Rankings are invariant
    under positive rescaling of the scores because only comparisons are
    used.
    """
    vals = np.asarray(scores.values, dtype=np.float64)
    n = len(vals)
    if tie_rule == "id":
        tiebreak = np.arange(n)
        label = "id"
    elif tie_rule == "random":
        rng = np.random.default_rng(seed)
        tiebreak = rng.permutation(n)
        label = f"random:{seed}"
    else:
        raise ValueError(f"unknown tie rule {tie_rule!r}")
    order = np.lexsort((tiebreak, -vals))
    return Ranking(metric=scores.metric, order=order, tie_rule=label)


def scores_to_csv(scores: CentralityScores, path) -> None:
    """node_id,score rows with the metric and its parameters up top."""
    bits = " ".join(f"{k}={v}" for k, v in sorted(scores.params.items()))
    with open(path, "w") as fh:
        fh.write(f"# metric={scores.metric}" + (f" {bits}" if bits else "") + "\n")
        fh.write("node_id,score\n")
        for v, s in enumerate(scores.values):
            fh.write(f"{v},{s:.12g}\n")


# ---------------------------------------------------------------------------
# local metrics


def _degree(g, **kw):
    _reject(kw, "degree")
    return g.degrees.astype(np.float64), {}


def _hindex(g, **kw):
    """Largest h such that the node has >= h neighbors of degree >= h."""
    _reject(kw, "hindex")
    deg = g.degrees
    out = np.zeros(g.n, dtype=np.float64)
    for v, nbrs in enumerate(g.adjacency):
        nd = sorted((int(deg[w]) for w in nbrs), reverse=True)
        h = 0
        for i, d in enumerate(nd, start=1):
            if d >= i:
                h = i
            else:
                break
        out[v] = h
    return out, {}


def _coreness(g, **kw):
    """k-core number by iterative peeling (bucket variant, O(n + m))."""
    _reject(kw, "coreness")
    n = g.n
    deg = [int(d) for d in g.degrees]
    adj = g.adjacency
    maxdeg = max(deg) if n else 0
    bins = [0] * (maxdeg + 1)
    for d in deg:
        bins[d] += 1
    start = 0
    for d in range(maxdeg + 1):
        count = bins[d]
        bins[d] = start
        start += count
    pos = [0] * n
    vert = [0] * n
    for v in range(n):
        pos[v] = bins[deg[v]]
        vert[pos[v]] = v
        bins[deg[v]] += 1
    for d in range(maxdeg, 0, -1):
        bins[d] = bins[d - 1]
    bins[0] = 0
    core = list(deg)
    for i in range(n):
        v = vert[i]
        for w in adj[v]:
            if core[w] > core[v]:
                dw = core[w]
                pw = pos[w]
                ps = bins[dw]
                u = vert[ps]
                if u != w:
                    vert[ps], vert[pw] = w, u
                    pos[w], pos[u] = ps, pw
                bins[dw] += 1
                core[w] -= 1
    return np.asarray(core, dtype=np.float64), {}


def _collective_influence(g, radius=2, **kw):
    """(k_i - 1) times the summed (k_j - 1) over the radius-``radius`` shell.

    The shell holds nodes at exactly the given distance.  Computed with
    sparse boolean frontier products so big graphs stay cheap.
    """
    _reject(kw, "ci")
    radius = int(radius)
    if radius < 1:
        raise ValueError("ci radius must be >= 1")
    n = g.n
    A = g.csr().copy()
    if A.nnz:
        A.data[:] = 1.0
    ball = (sparse.identity(n, format="csr") + A).tocsr()
    ball.data[:] = 1.0
    shell = A.copy()
    for _ in range(radius - 1):
        reached = (A @ shell).tocsr()
        if reached.nnz:
            reached.data[:] = 1.0
        shell = (reached - reached.multiply(ball)).tocsr()
        shell.eliminate_zeros()
        if shell.nnz:
            shell.data[:] = 1.0
        ball = (ball + shell).tocsr()
        ball.data[:] = 1.0
    excess = (g.degrees - 1).astype(np.float64)
    shell_sum = shell @ excess if shell.nnz else np.zeros(n)
    return excess * shell_sum, {"radius": radius}


# ---------------------------------------------------------------------------
# BFS-kernel metrics (closeness, betweenness, load)

_BLOCK = 128


def _forward_bfs(A, src, want_sigma=False, want_npred=False):
    """Level-synchronous BFS for a block of sources.

    Returns (dist, levels, sigma, npred); dist is (B, n) with -1 for
    unreachable, levels is a list of boolean frontier masks, sigma counts
    shortest paths, npred counts predecessor neighbors.
    """
    n = A.shape[0]
    B = len(src)
    dist = np.full((B, n), -1, dtype=np.int32)
    rows = np.arange(B)
    dist[rows, src] = 0
    cur = np.zeros((B, n), dtype=bool)
    cur[rows, src] = True
    sigma = None
    npred = None
    if want_sigma:
        sigma = np.zeros((B, n), dtype=np.float64)
        sigma[rows, src] = 1.0
    if want_npred:
        npred = np.zeros((B, n), dtype=np.float64)
    levels = []
    depth = 0
    while cur.any():
        levels.append(cur)
        if want_sigma:
            contrib = (A @ (sigma * cur).T).T
        else:
            contrib = (A @ cur.T.astype(np.float64)).T
        unseen = dist < 0
        new = (contrib > 0) & unseen
        if want_sigma:
            sigma[new] = contrib[new]
        if want_npred:
            counts = (A @ cur.T.astype(np.float64)).T if want_sigma else contrib
            npred[new] = counts[new]
        depth += 1
        dist[new] = depth
        cur = new
    return dist, levels, sigma, npred


def _closeness(g, **kw):
    """Harmonic closeness: sum over other nodes of 1 / distance.

    Unreachable pairs contribute nothing, which handles disconnected
    graphs without special cases.
    """
    _reject(kw, "closeness")
    A = g.csr()
    out = np.zeros(g.n, dtype=np.float64)
    for lo in range(0, g.n, _BLOCK):
        src = np.arange(lo, min(lo + _BLOCK, g.n))
        dist, _, _, _ = _forward_bfs(A, src)
        d = dist.astype(np.float64)
        with np.errstate(divide="ignore"):
            inv = np.where(dist > 0, 1.0 / d, 0.0)
        out[src] = inv.sum(axis=1)
    return out, {}


def _betweenness(g, **kw):
    """Shortest-path betweenness, unordered pairs, endpoints excluded.

    Brandes dependency accumulation, pushed through the block BFS kernel:
    a whole block of sources shares each sparse product.
    """
    _reject(kw, "betweenness")
    A = g.csr()
    n = g.n
    out = np.zeros(n, dtype=np.float64)
    for lo in range(0, n, _BLOCK):
        src = np.arange(lo, min(lo + _BLOCK, n))
        dist, levels, sigma, _ = _forward_bfs(A, src, want_sigma=True)
        B = len(src)
        delta = np.zeros((B, n), dtype=np.float64)
        for depth in range(len(levels) - 1, 0, -1):
            mask = levels[depth]
            coeff = np.zeros((B, n), dtype=np.float64)
            ok = mask & (sigma > 0)
            coeff[ok] = (1.0 + delta[ok]) / sigma[ok]
            spread = (A @ coeff.T).T
            prev = levels[depth - 1]
            delta[prev] += (sigma * spread)[prev]
        delta[np.arange(B), src] = 0.0
        out += delta.sum(axis=0)
    return out / 2.0, {}


def _load(g, **kw):
    """Load centrality: unit packets split equally at each branching.

    For every source, each reachable node receives one packet that flows
    back along shortest-path predecessors, dividing evenly among them (not
    by path counts, which is what separates load from betweenness).  The
    through-traffic summed over sources is the score.
    """
    _reject(kw, "load")
    A = g.csr()
    n = g.n
    out = np.zeros(n, dtype=np.float64)
    for lo in range(0, n, _BLOCK):
        src = np.arange(lo, min(lo + _BLOCK, n))
        dist, levels, _, npred = _forward_bfs(A, src, want_npred=True)
        B = len(src)
        amount = (dist >= 0).astype(np.float64)
        for depth in range(len(levels) - 1, 1, -1):
            mask = levels[depth]
            share = np.zeros((B, n), dtype=np.float64)
            ok = mask & (npred > 0)
            share[ok] = amount[ok] / npred[ok]
            received = (A @ share.T).T
            prev = levels[depth - 1]
            amount[prev] += received[prev]
        through = amount - 1.0
        through[dist < 0] = 0.0
        through[np.arange(B), src] = 0.0
        out += through.sum(axis=0)
    return out, {}


# ---------------------------------------------------------------------------
# spectral metrics


def _lanczos_polish(A, x):
    """Refine a stalled power iterate toward the Perron direction.

    Near-regular graphs (rings, lattices, lightly rewired WS) have a slim
    spectral gap that plain power iteration cannot close in any sensible
    iteration budget, so a stalled run gets handed to ARPACK seeded with
    the current iterate.  Returns a unit-norm non-negative vector, or
    None when the solve is unavailable or degenerate.
    """
    if A.shape[0] < 3:
        return None
    try:
        _, vec = eigsh(A.astype(np.float64), k=1, which="LA", v0=x, tol=0)
    except Exception:  # noqa: BLE001 - ARPACK failure just means no rescue
        return None
    v = vec[:, 0]
    if v[int(np.argmax(np.abs(v)))] < 0:
        v = -v
    v = np.clip(v, 0.0, None)
    norm = np.linalg.norm(v)
    if norm == 0:
        return None
    return v / norm


def _eigenvector(g, tol=1e-6, max_iter=1000, **kw):
    """Principal eigenvector of the adjacency matrix.

    Power iteration on (I + A) from a uniform start; the shift keeps
    bipartite graphs from oscillating.  Convergence is declared on the
    eigen-residual itself: max |A x - lambda x| <= tol with x unit length.
    A run that exhausts max_iter is polished by a Lanczos solve before
    the convergence error is raised.
    """
    _reject(kw, "eigenvector")
    A = g.csr()
    x = np.full(g.n, 1.0 / math.sqrt(g.n))
    for _ in range(int(max_iter)):
        y = A @ x
        lam = float(x @ y)
        if np.abs(y - lam * x).max() <= tol:
            return x, {"tol": tol, "max_iter": int(max_iter)}
        z = x + y
        norm = np.linalg.norm(z)
        if norm == 0:
            break
        x = z / norm
    polished = _lanczos_polish(A, x)
    if polished is not None:
        y = A @ polished
        lam = float(polished @ y)
        if np.abs(y - lam * polished).max() <= tol:
            return polished, {"tol": tol, "max_iter": int(max_iter)}
    raise ConvergenceError(f"eigenvector power iteration did not reach {tol}")


def _pagerank(g, damping=0.85, tol=1e-10, max_iter=200, **kw):
    """PageRank on the undirected graph (each edge walks both ways).

    Isolated nodes act as dangling pages whose mass is spread uniformly.
    The result sums to one.
    """
    _reject(kw, "pagerank")
    d = float(damping)
    if not 0 < d < 1:
        raise ValueError("damping must sit strictly between 0 and 1")
    A = g.csr()
    n = g.n
    deg = g.degrees.astype(np.float64)
    dangling = deg == 0
    safe_deg = np.where(dangling, 1.0, deg)
    x = np.full(n, 1.0 / n)
    for _ in range(int(max_iter)):
        spread = A @ (x / safe_deg)
        lost = x[dangling].sum()
        new = (1.0 - d) / n + d * (spread + lost / n)
        if np.abs(new - x).sum() < tol:
            x = new
            break
        x = new
    else:
        raise ConvergenceError(f"pagerank did not converge within {max_iter} iterations")
    return x / x.sum(), {"damping": d, "tol": tol, "max_iter": int(max_iter)}


def _hits(g, tol=1e-10, max_iter=1000, **kw):
    """HITS scores; on an undirected graph hubs equal authorities.

    Power iteration on A @ A with L1 normalization (uniform start), so the
    score is the stationary direction of two-step walks.
    """
    _reject(kw, "hits")
    A = g.csr()
    x = np.full(g.n, 1.0 / g.n)
    for _ in range(int(max_iter)):
        y = A @ (A @ x)
        total = y.sum()
        if total == 0:
            # no two-step walks anywhere (empty or matching-like graph)
            return x, {"tol": tol, "max_iter": int(max_iter)}
        y /= total
        if np.abs(y - x).max() < tol:
            return y, {"tol": tol, "max_iter": int(max_iter)}
        x = y
    # same slim-gap stall as the eigenvector metric, squared spectrum
    polished = _lanczos_polish(A, x)
    if polished is not None and polished.sum() > 0:
        x = polished / polished.sum()
        y = A @ (A @ x)
        total = y.sum()
        if total > 0:
            y /= total
            if np.abs(y - x).max() < tol:
                return y, {"tol": tol, "max_iter": int(max_iter)}
    raise ConvergenceError(f"hits did not converge within {max_iter} iterations")


def _subgraph(g, terms=20, backend="auto", **kw):
    """Truncated closed-walk series: sum_k (A^k)_ii / k! for k <= terms.

    The "eigh" backend evaluates the same polynomial through a dense
    eigendecomposition; "series" multiplies matrix powers directly,
    pairing half powers so the diagonal of A^(a+b) never needs the full
    product.  "auto" picks eigh up to n=2000 and series beyond.
    """
    _reject(kw, "subgraph")
    K = int(terms)
    if K < 1:
        raise ValueError("terms must be >= 1")
    if backend == "auto":
        backend = "eigh" if g.n <= 2000 else "series"
    A = g.csr().toarray()
    if backend == "eigh":
        w, V = np.linalg.eigh(A)
        poly = np.zeros_like(w)
        fact = 1.0
        powr = np.ones_like(w)
        for k in range(K + 1):
            if k > 0:
                fact *= k
                powr = powr * w
            poly += powr / fact
        vals = (V * V) @ poly
        return vals, {"terms": K, "backend": "eigh"}
    if backend != "series":
        raise ValueError(f"unknown subgraph backend {backend!r}")
    n = g.n
    out = np.ones(n, dtype=np.float64)  # k = 0
    out += np.diag(A)  # k = 1, zero on simple graphs
    half = (K + 1) // 2
    min_store = max(1, (half + 1) // 2)
    stored = {}
    if min_store <= 1 <= half:
        stored[1] = A
    P = A
    fact = 1.0
    for k in range(2, half + 1):
        P = P @ A
        fact *= k
        out += np.diag(P) / fact
        if k >= min_store:
            stored[k] = P
    facts = {}
    for k in range(half + 1, K + 1):
        fact *= k
        facts[k] = fact
    for k in range(half + 1, K + 1):
        a = k // 2
        b = k - a
        diag = np.einsum("ij,ij->i", stored[a], stored[b])
        out += diag / facts[k]
    return out, {"terms": K, "backend": "series"}


# ---------------------------------------------------------------------------
# cycle ratio


def _girth_through(adj, start, cap):
    """Length of the shortest cycle through ``start`` (or None beyond cap).

    BFS labels every visited node with its level-1 branch; an edge joining
    two branches closes a cycle through the root of combined length
    dist(u) + dist(w) + 1.  Also returns the BFS distances for reuse by
    the enumeration step.
    """
    dist = {start: 0}
    branch = {start: -1}
    frontier = [start]
    best = None
    depth = 0
    limit = cap // 2
    while frontier and depth <= limit:
        nxt = []
        for u in frontier:
            du = dist[u]
            bu = branch[u]
            for w in adj[u]:
                if w not in dist:
                    dist[w] = du + 1
                    branch[w] = w if u == start else bu
                    nxt.append(w)
                elif w != start and branch[w] != bu:
                    length = du + dist[w] + 1
                    if best is None or length < best:
                        best = length
        depth += 1
        if best is not None and best <= 2 * depth:
            break
        frontier = nxt
    if best is not None and best > cap:
        best = None
    return best, dist


def _cycles_through(adj, start, length, dist):
    """All simple cycles of exactly ``length`` through ``start``.

    Depth-first path extension pruned by the BFS distance back to the
    root; each cycle is reported once as a canonical node tuple (minimal
    rotation, then the smaller of the two directions).
    """
    found = []
    path = [start]
    on_path = {start}

    def extend(v, steps_left):
        for w in adj[v]:
            if steps_left == 1:
                if w == start and path[1] < path[-1]:
                    found.append(_canonical_cycle(path))
            else:
                if w in on_path or w == start:
                    continue
                if dist.get(w, length + 1) > steps_left - 1:
                    continue
                path.append(w)
                on_path.add(w)
                extend(w, steps_left - 1)
                path.pop()
                on_path.discard(w)

    # a two-node "cycle" cannot exist on a simple graph; lengths >= 3 only
    for first in adj[start]:
        path.append(first)
        on_path.add(first)
        extend(first, length - 1)
        path.pop()
        on_path.discard(first)
    return found


def _canonical_cycle(path):
    k = len(path)
    at = path.index(min(path))
    fwd = tuple(path[(at + i) % k] for i in range(k))
    bwd = tuple(path[(at - i) % k] for i in range(k))
    return min(fwd, bwd)


def cycle_ratio(g: Graph, max_cycle_len: int = 10) -> np.ndarray:
    """Cycle-ratio scores from the pool of shortest per-node cycles.

    The pool S gathers, for every node, all shortest cycles through it (up
    to ``max_cycle_len``), deduplicated.  With c_jj the number of pooled
    cycles through j, a node's score is the sum over its cycles C of
    sum_{j in C} 1 / c_jj, equivalently sum_j c_ij / c_jj.  Nodes on no
    pooled cycle score 0.
    """
    adj = g.adjacency
    pool = set()
    for v in range(g.n):
        if len(adj[v]) < 2:
            continue
        length, dist = _girth_through(adj, v, max_cycle_len)
        if length is None:
            continue
        for cyc in _cycles_through(adj, v, length, dist):
            pool.add(cyc)
    counts = np.zeros(g.n, dtype=np.int64)
    for cyc in pool:
        for j in cyc:
            counts[j] += 1
    out = np.zeros(g.n, dtype=np.float64)
    for cyc in pool:
        weight = sum(1.0 / counts[j] for j in cyc)
        for j in cyc:
            out[j] += weight
    return out


def _cycle_ratio_metric(g, max_cycle_len=10, **kw):
    _reject(kw, "cycleratio")
    return cycle_ratio(g, max_cycle_len=int(max_cycle_len)), {
        "max_cycle_len": int(max_cycle_len)
    }


def _reject(kw, metric):
    if kw:
        raise ValueError(f"unknown parameters for {metric}: {sorted(kw)}")


_DISPATCH = {
    "degree": _degree,
    "hindex": _hindex,
    "coreness": _coreness,
    "closeness": _closeness,
    "betweenness": _betweenness,
    "eigenvector": _eigenvector,
    "pagerank": _pagerank,
    "cycleratio": _cycle_ratio_metric,
    "hits": _hits,
    "subgraph": _subgraph,
    "load": _load,
    "ci": _collective_influence,
}
