"""Centrality metrics against hand values and brute-force oracles."""

import math
from collections import deque
from itertools import combinations

import numpy as np
import pytest

from wre.centrality import (
    ConvergenceError,
    EXTENDED_STRATEGY_SET,
    STANDARD_STRATEGY_SET,
    compute_centrality,
    cycle_ratio,
    rank,
    scores_to_csv,
)
from wre.generators import GeneratorConfig, generate
from wre.graph import Graph


def make(model, n, k, seed):
    return generate(GeneratorConfig(model=model, n=n, mean_degree=k, seed=seed))


def star(leaves=4):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph(n, list(combinations(range(n), 2)))


def two_triangles():
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def scores(g, metric, **params):
    return compute_centrality(g, metric, **params).values


# ---------------------------------------------------------------------------
# pure-python oracles, written from the definitions
# ---------------------------------------------------------------------------

def adj_lists(g):
    out = [[] for _ in range(g.n)]
    for u, v in g.edges:
        out[u].append(v)
        out[v].append(u)
    return out


def bfs_dist(adj, s):
    dist = {s: 0}
    q = deque([s])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def oracle_closeness(g):
    adj = adj_lists(g)
    out = []
    for s in range(g.n):
        dist = bfs_dist(adj, s)
        out.append(sum(1.0 / d for v, d in dist.items() if v != s))
    return np.array(out)


def path_counts(adj, s, n):
    """Shortest-path distance and count from s to every node."""
    dist = [-1] * n
    sigma = [0] * n
    dist[s] = 0
    sigma[s] = 1
    q = deque([s])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
            if dist[w] == dist[u] + 1:
                sigma[w] += sigma[u]
    return dist, sigma


def oracle_betweenness(g):
    """Pair-sum formula b(v) = sum over s<t of sigma_sv * sigma_vt / sigma_st."""
    n = g.n
    adj = adj_lists(g)
    dist = []
    sigma = []
    for s in range(n):
        d, sg = path_counts(adj, s, n)
        dist.append(d)
        sigma.append(sg)
    b = np.zeros(n)
    for s in range(n):
        for t in range(s + 1, n):
            if sigma[s][t] == 0:
                continue
            for v in range(n):
                if v in (s, t):
                    continue
                if dist[s][v] >= 0 and dist[s][v] + dist[v][t] == dist[s][t]:
                    b[v] += sigma[s][v] * sigma[v][t] / sigma[s][t]
    return b


def oracle_load(g):
    """Unit packages from every source, split equally among predecessors."""
    n = g.n
    adj = adj_lists(g)
    total = np.zeros(n)
    for s in range(n):
        dist, _ = path_counts(adj, s, n)
        amount = {v: 1.0 for v in range(n) if dist[v] >= 0}
        for v in sorted(amount, key=lambda x: -dist[x]):
            preds = [w for w in adj[v] if dist[w] == dist[v] - 1]
            if not preds:
                continue
            share = amount[v] / len(preds)
            for w in preds:
                amount[w] += share
        for v, a in amount.items():
            if v != s:
                total[v] += a - 1.0
    return total


def oracle_subgraph(g, terms=20):
    """Closed-walk series from exact integer matrix powers."""
    n = g.n
    a = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        a[u][v] = 1
        a[v][u] = 1
    power = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    out = [1.0] * n
    for k in range(1, terms + 1):
        power = [
            [sum(power[i][m] * a[m][j] for m in range(n)) for j in range(n)]
            for i in range(n)
        ]
        f = math.factorial(k)
        for i in range(n):
            out[i] += power[i][i] / f
    return np.array(out)


def oracle_ci(g, radius=2):
    adj = adj_lists(g)
    deg = np.array([len(a) for a in adj])
    out = np.zeros(g.n)
    for v in range(g.n):
        dist = bfs_dist(adj, v)
        shell = [u for u, d in dist.items() if d == radius]
        out[v] = (deg[v] - 1) * sum(deg[u] - 1 for u in shell)
    return out


def all_simple_cycles(g, max_len):
    """Every simple cycle up to max_len as a frozenset of nodes, with length."""
    adj = adj_lists(g)
    found = {}
    for start in range(g.n):
        stack = [(start, [start])]
        while stack:
            u, trail = stack.pop()
            for w in adj[u]:
                if w == start and len(trail) >= 3:
                    found.setdefault(frozenset(trail), len(trail))
                elif w > start and w not in trail and len(trail) < max_len:
                    stack.append((w, trail + [w]))
    return found


def oracle_cycle_ratio(g, max_len=10):
    cycles = all_simple_cycles(g, max_len)
    girth = {}
    for nodes, length in cycles.items():
        for v in nodes:
            girth[v] = min(girth.get(v, length), length)
    pool = [nodes for nodes, length in cycles.items()
            if any(girth[v] == length for v in nodes)]
    cjj = np.zeros(g.n)
    for nodes in pool:
        for v in nodes:
            cjj[v] += 1
    out = np.zeros(g.n)
    for i in range(g.n):
        cij = np.zeros(g.n)
        for nodes in pool:
            if i in nodes:
                for j in nodes:
                    cij[j] += 1
        mask = cij > 0
        out[i] = (cij[mask] / cjj[mask]).sum()
    return out


def oracle_hindex(g):
    adj = adj_lists(g)
    deg = [len(a) for a in adj]
    out = []
    for v in range(g.n):
        vals = sorted((deg[u] for u in adj[v]), reverse=True)
        h = 0
        while h < len(vals) and vals[h] >= h + 1:
            h += 1
        out.append(h)
    return np.array(out, dtype=float)


def oracle_coreness(g):
    adj = adj_lists(g)
    deg = [len(a) for a in adj]
    core = [0] * g.n
    alive = set(range(g.n))
    k = 0
    while alive:
        peel = [v for v in alive if deg[v] <= k]
        if not peel:
            k += 1
            continue
        for v in peel:
            core[v] = k
            alive.discard(v)
            for u in adj[v]:
                if u in alive:
                    deg[u] -= 1
    return np.array(core, dtype=float)


# ---------------------------------------------------------------------------
# hand values on small named graphs
# ---------------------------------------------------------------------------

def test_star_hand_values():
    g = star(4)
    assert scores(g, "degree").tolist() == [4, 1, 1, 1, 1]
    assert scores(g, "hindex").tolist() == [1, 1, 1, 1, 1]
    assert scores(g, "coreness").tolist() == [1, 1, 1, 1, 1]
    np.testing.assert_allclose(scores(g, "closeness"), [4.0, 2.5, 2.5, 2.5, 2.5])
    np.testing.assert_allclose(scores(g, "betweenness"), [6.0, 0, 0, 0, 0])
    ev = scores(g, "eigenvector")
    assert ev[0] == pytest.approx(2 * ev[1], rel=1e-5)
    pr = scores(g, "pagerank")
    assert pr[0] == pytest.approx(0.4756756756756757, abs=1e-9)
    assert np.all(scores(g, "cycleratio") == 0.0)
    assert np.all(scores(g, "ci") == 0.0)
    assert np.all(scores(g, "ci", radius=1) == 0.0)


def test_path3_hand_values():
    g = path(3)
    np.testing.assert_allclose(scores(g, "betweenness"), [0, 1.0, 0])
    np.testing.assert_allclose(scores(g, "load"), [0, 2.0, 0])
    np.testing.assert_allclose(scores(g, "closeness"), [1.5, 2.0, 1.5])


def test_path4_hand_values():
    g = path(4)
    assert scores(g, "hindex").tolist() == [1, 1, 1, 1]
    np.testing.assert_allclose(scores(g, "betweenness"), [0, 2.0, 2.0, 0])
    np.testing.assert_allclose(scores(g, "load"), [0, 4.0, 4.0, 0])
    np.testing.assert_allclose(scores(g, "ci", radius=1), [0, 1, 1, 0])
    np.testing.assert_allclose(scores(g, "ci", radius=2), [0, 0, 0, 0])


def test_cycle5_hand_values():
    g = cycle(5)
    assert np.all(scores(g, "coreness") == 2.0)
    np.testing.assert_allclose(scores(g, "pagerank"), np.full(5, 0.2), atol=1e-9)
    np.testing.assert_allclose(scores(g, "closeness"), np.full(5, 3.0))
    np.testing.assert_allclose(scores(g, "betweenness"), np.full(5, 1.0))
    np.testing.assert_allclose(scores(g, "cycleratio"), np.full(5, 5.0))


def test_complete_graph_hand_values():
    g = complete(4)
    np.testing.assert_allclose(scores(g, "cycleratio"), np.full(4, 3.0))
    g5 = complete(5)
    assert np.all(scores(g5, "degree") == 4)
    assert np.all(scores(g5, "coreness") == 4)
    assert np.all(scores(g5, "hindex") == 4)
    np.testing.assert_allclose(scores(g5, "betweenness"), np.zeros(5))
    np.testing.assert_allclose(scores(g5, "pagerank"), np.full(5, 0.2), atol=1e-9)


def test_disjoint_triangles():
    g = two_triangles()
    np.testing.assert_allclose(scores(g, "cycleratio"), np.full(6, 3.0))
    assert np.all(scores(g, "coreness") == 2.0)
    np.testing.assert_allclose(scores(g, "closeness"), np.full(6, 2.0))
    np.testing.assert_allclose(scores(g, "pagerank"), np.full(6, 1 / 6), atol=1e-9)
    # power iteration must cope with the disconnected input
    ev = scores(g, "eigenvector")
    assert np.all(np.isfinite(ev))


# ---------------------------------------------------------------------------
# oracle sweeps on random graphs
# ---------------------------------------------------------------------------

SMALL_GRAPHS = [
    ("ba", 24, 4, 11), ("er", 30, 4, 12), ("ws", 26, 4, 13),
    ("regular", 20, 4, 14), ("er", 18, 2, 15), ("ba", 35, 6, 16),
]


@pytest.mark.parametrize("model,n,k,seed", SMALL_GRAPHS)
def test_oracles_agree(model, n, k, seed):
    g = make(model, n, k, seed)
    np.testing.assert_allclose(scores(g, "closeness"), oracle_closeness(g), atol=1e-9)
    np.testing.assert_allclose(scores(g, "betweenness"), oracle_betweenness(g), atol=1e-7)
    np.testing.assert_allclose(scores(g, "load"), oracle_load(g), atol=1e-7)
    np.testing.assert_allclose(scores(g, "hindex"), oracle_hindex(g))
    np.testing.assert_allclose(scores(g, "coreness"), oracle_coreness(g))
    np.testing.assert_allclose(scores(g, "ci"), oracle_ci(g, radius=2))
    np.testing.assert_allclose(scores(g, "ci", radius=3), oracle_ci(g, radius=3))


@pytest.mark.parametrize("model,n,k,seed", SMALL_GRAPHS[:4])
def test_subgraph_matches_walk_counts(model, n, k, seed):
    g = make(model, n, k, seed)
    np.testing.assert_allclose(
        scores(g, "subgraph"), oracle_subgraph(g, terms=20), rtol=1e-9)


def test_subgraph_backends_agree():
    g = make("er", 40, 5, seed=21)
    eig = scores(g, "subgraph", backend="eigh")
    ser = scores(g, "subgraph", backend="series")
    np.testing.assert_allclose(eig, ser, rtol=1e-8)


def test_cycle_ratio_matches_enumeration():
    for model, n, k, seed in [("er", 8, 3, 31), ("ws", 8, 4, 32), ("ba", 8, 4, 33),
                              ("er", 7, 4, 34), ("regular", 8, 4, 35)]:
        g = make(model, n, k, seed)
        np.testing.assert_allclose(
            cycle_ratio(g, max_cycle_len=10), oracle_cycle_ratio(g, 10),
            atol=1e-9, err_msg=f"{model} seed={seed}")


def test_eigenvector_is_adjacency_fixed_point():
    g = make("ba", 60, 4, seed=41)
    x = scores(g, "eigenvector", tol=1e-10)
    a = g.csr()
    y = a @ x
    lam = x @ y
    assert np.abs(y - lam * x).max() < 1e-8
    assert np.linalg.norm(x) == pytest.approx(1.0, abs=1e-9)


def test_hits_matches_eigenvector_on_connected_graph():
    # on an undirected graph the A(Ax) iteration shares the dominant
    # eigenvector, so the two metrics must rank identically
    g = make("ba", 80, 6, seed=42)
    h = scores(g, "hits", tol=1e-14)
    e = scores(g, "eigenvector", tol=1e-12)
    np.testing.assert_allclose(h / h.sum(), e / e.sum(), atol=1e-6)


def test_pagerank_sums_to_one():
    for seed in (1, 2, 3):
        g = make("er", 50, 4, seed=seed)
        pr = scores(g, "pagerank")
        assert pr.sum() == pytest.approx(1.0, abs=1e-9)
        assert np.all(pr > 0)


def test_hindex_sandwich():
    # coreness <= h-index <= degree, node by node
    rng = np.random.default_rng(7)
    for _ in range(25):
        model = ["ba", "er", "ws", "regular"][rng.integers(4)]
        n = int(rng.integers(20, 120))
        k = int(rng.choice([4, 6, 8]))
        g = make(model, n, k, int(rng.integers(1 << 30)))
        c = scores(g, "coreness")
        h = scores(g, "hindex")
        d = scores(g, "degree")
        assert np.all(c <= h + 1e-12)
        assert np.all(h <= d + 1e-12)


def test_eigenvector_convergence_error():
    # a tolerance below machine precision can never be certified
    g = make("er", 60, 4, seed=5)
    with pytest.raises(ConvergenceError):
        compute_centrality(g, "eigenvector", tol=1e-30, max_iter=1)


def test_eigenvector_converges_on_slim_spectral_gap():
    # lightly rewired ring: the top of the spectrum is nearly degenerate,
    # which stalls plain power iteration and must trigger the polish
    g = make("ws", 500, 4, seed=4207)
    x = scores(g, "eigenvector", max_iter=50)
    a = g.csr()
    y = a @ x
    lam = x @ y
    assert np.abs(y - lam * x).max() <= 1e-6
    assert np.all(x >= 0)
    h = scores(g, "hits", max_iter=50)
    assert np.all(h >= 0)
    assert h.sum() == pytest.approx(1.0, abs=1e-9)


def test_unknown_metric_rejected():
    with pytest.raises(ValueError):
        compute_centrality(path(3), "katz")


def test_strategy_sets():
    assert STANDARD_STRATEGY_SET == (
        "degree", "hindex", "coreness", "closeness",
        "betweenness", "eigenvector", "pagerank", "cycleratio")
    assert EXTENDED_STRATEGY_SET[:8] == STANDARD_STRATEGY_SET
    assert set(EXTENDED_STRATEGY_SET[8:]) == {"hits", "subgraph", "load", "ci"}


# ---------------------------------------------------------------------------
# rankings and CSV round trip
# ---------------------------------------------------------------------------

def test_rank_id_tie_rule():
    g = star(4)
    r = rank(compute_centrality(g, "degree"))
    assert r.order[0] == 0
    assert list(r.order[1:]) == [1, 2, 3, 4]


def test_rank_random_tie_rule_is_seeded():
    g = cycle(12)
    s = compute_centrality(g, "degree")
    a = rank(s, tie_rule="random", seed=99).order
    b = rank(s, tie_rule="random", seed=99).order
    c = rank(s, tie_rule="random", seed=100).order
    assert list(a) == list(b)
    assert sorted(a) == list(range(12))
    assert list(a) != list(c) or list(b) != list(c)


def test_rank_orders_descending_by_score():
    g = make("ba", 40, 4, seed=8)
    s = compute_centrality(g, "pagerank")
    order = rank(s).order
    vals = s.values[order]
    assert np.all(np.diff(vals) <= 1e-15)


def test_scores_csv_round_trip(tmp_path):
    g = make("ws", 20, 4, seed=9)
    s = compute_centrality(g, "ci", radius=3)
    p = tmp_path / "ci.csv"
    scores_to_csv(s, p)
    lines = p.read_text().splitlines()
    assert "metric=ci" in lines[0]
    assert "radius=3" in lines[0]
    assert lines[1] == "node_id,score"
    rows = [line.split(",") for line in lines[2:]]
    assert [int(r[0]) for r in rows] == list(range(20))
    np.testing.assert_allclose([float(r[1]) for r in rows], s.values, rtol=1e-10)


# ---------------------------------------------------------------------------
# cross-checks against networkx reference implementations
# ---------------------------------------------------------------------------

nx = pytest.importorskip("networkx")


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from((int(u), int(v)) for u, v in g.edges)
    return h


def as_array(d, n):
    return np.array([d[v] for v in range(n)])


def test_networkx_cross_checks():
    g = make("ba", 150, 6, 51)
    h = to_nx(g)
    n = g.n
    np.testing.assert_allclose(
        scores(g, "closeness"),
        as_array(nx.harmonic_centrality(h), n), atol=1e-9)
    np.testing.assert_allclose(
        scores(g, "betweenness"),
        as_array(nx.betweenness_centrality(h, normalized=False), n), atol=1e-7)
    np.testing.assert_allclose(
        scores(g, "load"),
        as_array(nx.load_centrality(h, normalized=False), n), atol=1e-7)
    np.testing.assert_allclose(
        scores(g, "coreness"), as_array(nx.core_number(h), n))
    np.testing.assert_allclose(
        scores(g, "pagerank"),
        as_array(nx.pagerank(h, alpha=0.85, tol=1e-12), n), atol=1e-8)
    ev = scores(g, "eigenvector", tol=1e-10)
    ref = as_array(nx.eigenvector_centrality_numpy(h), n)
    np.testing.assert_allclose(ev, ref / np.linalg.norm(ref), atol=1e-6)


def test_networkx_subgraph_centrality():
    # same truncation order as the reference once terms exceed the
    # precision floor of the exponential series at this graph scale
    g = make("ws", 60, 4, 52)
    h = to_nx(g)
    mine = scores(g, "subgraph", terms=60)
    ref = as_array(nx.subgraph_centrality(h), g.n)
    np.testing.assert_allclose(mine, ref, rtol=1e-9)


def test_networkx_hits():
    g = make("er", 90, 5, 53)
    # keep to the giant component so the reference has a unique answer
    from wre.graph import induced_subgraph, largest_component_nodes
    g, _ = induced_subgraph(g, largest_component_nodes(g))
    h = to_nx(g)
    mine = scores(g, "hits", tol=1e-14)
    hubs, _ = nx.hits(h, max_iter=1000, tol=1e-12)
    np.testing.assert_allclose(mine, as_array(hubs, g.n), atol=1e-8)
