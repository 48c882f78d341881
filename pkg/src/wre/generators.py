"""Seeded random graph generators (BA, ER, WS, random regular).

All four models are parameterized by target mean degree so experiment
configs can sweep one knob across families.  Generation is deterministic
per seed: the same config always yields the same edge array.
"""

from dataclasses import dataclass

import numpy as np

from .graph import Graph

MODELS = ("ba", "er", "ws", "regular")


@dataclass(frozen=True)
class GeneratorConfig:
    """Recipe for one random graph.

    model : one of "ba", "er", "ws", "regular"
    n : node count
    mean_degree : target average degree; BA/WS/REGULAR need it even
    seed : RNG seed
    ws_rewire_prob : WS only, probability of rewiring each lattice edge
    """

    model: str
    n: int
    mean_degree: float
    seed: int
    ws_rewire_prob: float = 0.1


def generate(config: GeneratorConfig) -> Graph:
    """Build the graph described by ``config``.

    Raises ValueError on infeasible parameters (odd degree sums, degree
    too large for n, unknown model name).
    """
    model = config.model.lower()
    n = int(config.n)
    k = config.mean_degree
    if n < 2:
        raise ValueError("need at least two nodes")
    if k <= 0 or k >= n:
        raise ValueError("mean degree must sit strictly between 0 and n")
    rng = np.random.default_rng(config.seed)
    if model == "ba":
        return _barabasi_albert(n, k, rng)
    if model == "er":
        return _erdos_renyi(n, k, rng)
    if model == "ws":
        return _watts_strogatz(n, k, config.ws_rewire_prob, rng)
    if model == "regular":
        return _random_regular(n, k, rng)
    raise ValueError(f"unknown model {config.model!r}")


def _even_int_degree(k, model):
    ki = int(k)
    if ki != k or ki % 2 != 0:
        raise ValueError(f"{model} needs an even integer mean degree, got {k}")
    return ki


def _barabasi_albert(n, k, rng):
    """Growth with preferential attachment, m = k/2 edges per new node.

    The seed core is a complete graph on m+1 nodes; each later node picks
    m distinct targets with probability proportional to current degree
    (sampling from a repeated-node pool, the usual trick).
    """
    m = _even_int_degree(k, "ba") // 2
    if m < 1 or m + 1 > n:
        raise ValueError("ba needs 1 <= k/2 and k/2 + 1 <= n")
    edges = []
    pool = []
    core = m + 1
    for u in range(core):
        for v in range(u + 1, core):
            edges.append((u, v))
            pool.append(u)
            pool.append(v)
    for u in range(core, n):
        targets = set()
        while len(targets) < m:
            targets.add(pool[int(rng.integers(len(pool)))])
        for v in targets:
            edges.append((v, u))
            pool.append(u)
            pool.append(v)
    return Graph(n, edges)


def _erdos_renyi(n, k, rng):
    """G(n, p) with p = k / (n - 1).

    Drawn as: edge count ~ Binomial(C(n,2), p), then that many distinct
    pairs chosen uniformly, which is the same distribution without
    touching all C(n,2) coin flips.  Disconnected results are kept as is.
    """
    p = k / (n - 1)
    total = n * (n - 1) // 2
    m = int(rng.binomial(total, p))
    chosen = set()
    while len(chosen) < m:
        need = m - len(chosen)
        for t in rng.integers(0, total, size=need + 8).tolist():
            if t not in chosen:
                chosen.add(t)
                if len(chosen) == m:
                    break
    # decode triangular index t -> pair (i, j), i < j
    idx = np.fromiter(chosen, dtype=np.int64, count=m)
    idx.sort()
    row_start = np.cumsum(np.arange(n - 1, 0, -1))  # pairs before row i+1
    i = np.searchsorted(row_start, idx, side="right")
    before = np.where(i > 0, row_start[i - 1], 0)
    j = i + 1 + (idx - before)
    return Graph(n, np.column_stack([i, j]))


def _watts_strogatz(n, k, beta, rng):
    """Ring lattice (k/2 neighbors each side) with probabilistic rewiring."""
    half = _even_int_degree(k, "ws") // 2
    if half < 1:
        raise ValueError("ws needs mean degree >= 2")
    if not 0 <= beta <= 1:
        raise ValueError("rewire probability must lie in [0, 1]")
    edge_set = set()
    for dist in range(1, half + 1):
        for u in range(n):
            v = (u + dist) % n
            edge_set.add((u, v) if u < v else (v, u))
    # rewire pass mirrors the classic construction: scan lattice distances
    # outward, replacing the far endpoint with a uniform node when the coin
    # comes up, skipping rewires that would create loops or duplicates
    for dist in range(1, half + 1):
        for u in range(n):
            if rng.random() >= beta:
                continue
            v = (u + dist) % n
            old = (u, v) if u < v else (v, u)
            if old not in edge_set:
                continue
            for _ in range(n):
                w = int(rng.integers(n))
                if w == u:
                    continue
                cand = (u, w) if u < w else (w, u)
                if cand in edge_set:
                    continue
                edge_set.discard(old)
                edge_set.add(cand)
                break
    return Graph(n, edge_set)


def _random_regular(n, k, rng):
    """Uniform-ish k-regular graph by stub pairing.

    Each node contributes k stubs; stubs are paired at random, rejecting
    self loops and duplicate edges pair by pair.  When the leftover stubs
    admit no valid pair the whole attempt restarts with a fresh shuffle
    (rejecting entire non-simple pairings outright almost never succeeds
    once k grows past 4).
    """
    deg = _even_int_degree(k, "regular")
    if deg >= n:
        raise ValueError("regular needs mean degree < n")
    if (n * deg) % 2:
        raise ValueError("n * k must be even for a regular graph")

    for _ in range(200):
        stubs = np.repeat(np.arange(n, dtype=np.int64), deg)
        rng.shuffle(stubs)
        stubs = stubs.tolist()
        edge_set = set()
        ok = True
        rounds = 0
        while stubs:
            rounds += 1
            if rounds > 1000:
                ok = False
                break
            progressed = False
            leftovers = []
            for a, b in zip(stubs[::2], stubs[1::2]):
                if a == b:
                    leftovers.extend((a, b))
                    continue
                key = (a, b) if a < b else (b, a)
                if key in edge_set:
                    leftovers.extend((a, b))
                    continue
                edge_set.add(key)
                progressed = True
            stubs = leftovers
            if not stubs:
                break
            if not progressed and not _suitable(stubs, edge_set):
                ok = False
                break
            rng.shuffle(stubs)
        if ok and not stubs:
            return Graph(n, edge_set)
    raise ValueError(f"could not realize a simple {deg}-regular graph on {n} nodes")


def _suitable(stubs, edge_set):
    """True if some pair of leftover stubs can still become a new edge."""
    uniq = sorted(set(stubs))
    for i, a in enumerate(uniq):
        for b in uniq[i + 1:]:
            if (a, b) not in edge_set:
                return True
    return False
