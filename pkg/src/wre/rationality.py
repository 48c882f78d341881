"""Maximum rationality of a stacked attack.

The stacked envelope says how hard the attack can hit; rationality asks
whether one coherent removal sequence could have produced it.  Positions
of the envelope are assigned to concrete nodes (among those achieving
each positionwise minimum), trying to touch as many distinct nodes as
possible.  The score is the fraction of nodes used at least once: 1 means
the envelope is realizable node-by-node without reusing anyone.

Two stages mirror how the assignment is built: a greedy left-to-right
pass that always picks the least-used candidate, then a repair loop that
swaps never-used nodes into positions whose occupant can spare one.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .attack import attack_by_strategy
from .centrality import STANDARD_STRATEGY_SET
from .generators import GeneratorConfig, generate
from .mda import pointwise_minimum


@dataclass
class MRReport:
    """Assignment state and its rationality score.

    counters[v] is how many positions node v occupies; u0 counts nodes
    occupying none; mr = (n - u0) / n; passes records optimization sweeps
    (0 straight out of build_assignment).
    """

    n: int
    counters: np.ndarray
    assignment: list
    u0: int
    mr: float
    passes: int = 0


def _candidate_nodes(alternatives):
    return [sorted({node for _, node in alts}) for alts in alternatives]


def _value_index(curves):
    """Map each residual-GCC value to the ascending node ids attaining it.

    A node attains value v when some strategy's removal of that node
    leaves a component of exactly v, wherever in that strategy's order
    the removal happens.  Exact integer sizes, so lookups are safe.
    """
    buckets = {}
    for curve in curves:
        for node, val in zip(curve.order, curve.gcc_sizes):
            buckets.setdefault(int(val), set()).add(int(node))
    return {val: sorted(nodes) for val, nodes in buckets.items()}


def _finish(n, counters, assignment, passes) -> MRReport:
    u0 = int((counters == 0).sum())
    return MRReport(
        n=n,
        counters=counters,
        assignment=assignment,
        u0=u0,
        mr=(n - u0) / n,
        passes=passes,
    )


def build_assignment(curves) -> MRReport:
    """Greedy positionwise assignment of envelope minima to nodes.

    Walks positions left to right; at each one the candidates are the
    nodes some strategy removes there while attaining the positionwise
    minimum.  The least-used candidate wins (ties to the smaller id) and
    its counter goes up.
    """
    _, alternatives = pointwise_minimum(curves)
    n = curves[0].n
    counters = np.zeros(n, dtype=np.int64)
    assignment = []
    for cands in _candidate_nodes(alternatives):
        pick = min(cands, key=lambda v: (counters[v], v))
        counters[pick] += 1
        assignment.append(pick)
    return _finish(n, counters, assignment, passes=0)


def optimize_and_score(report: MRReport, curves) -> MRReport:
    """Swap never-used nodes into positions they could legally hold.

    A node with counter 0 whose value under some strategy matches the
    envelope minimum at a position may replace that position's occupant,
    but only when the occupant holds at least two positions (taking a
    position from a single-position occupant would just move the hole).
    Sweeps repeat until one makes no swap.  u0 never increases, so the
    score is non-decreasing and the loop terminates.
    """
    mins, _ = pointwise_minimum(curves)
    buckets = _value_index(curves)
    counters = report.counters.copy()
    assignment = list(report.assignment)
    passes = 0
    while True:
        passes += 1
        changed = False
        for j, m in enumerate(mins):
            occupant = assignment[j]
            if counters[occupant] < 2:
                continue
            for w in buckets.get(int(m), ()):
                if counters[w] == 0:
                    assignment[j] = w
                    counters[w] += 1
                    counters[occupant] -= 1
                    changed = True
                    break
        if not changed:
            break
    return _finish(report.n, counters, assignment, passes=passes)


@dataclass
class MRExperimentResult:
    model: str
    n: int
    mean_degree: float
    strategies: tuple
    seed: int
    scores: np.ndarray

    @property
    def mean(self) -> float:
        return float(self.scores.mean())

    @property
    def max(self) -> float:
        return float(self.scores.max())

    @property
    def min(self) -> float:
        return float(self.scores.min())


# right-tail bands in Table style: > 0.95, then half-open 0.05 slices
_BAND_EDGES = (0.95, 0.90, 0.85, 0.80, 0.75, 0.70)


def right_tail_bands(scores) -> dict:
    scores = np.asarray(scores, dtype=np.float64)
    bands = {}
    upper = np.inf
    for edge in _BAND_EDGES:
        label = f">{edge:.2f}"
        bands[label] = int(((scores > edge) & (scores <= upper)).sum())
        upper = edge
    return bands


def _mr_single(args):
    model, n, k, seed, strategies, ws_prob, optimize = args
    g = generate(GeneratorConfig(model=model, n=n, mean_degree=k,
                                 seed=seed, ws_rewire_prob=ws_prob))
    curves = [attack_by_strategy(g, metric) for metric in strategies]
    report = build_assignment(curves)
    if optimize:
        report = optimize_and_score(report, curves)
    return report.mr


def mr_experiment(model: str, n: int, mean_degree, instances: int,
                  seed: int = 0, strategies=STANDARD_STRATEGY_SET,
                  jobs: int = 1, ws_rewire_prob: float = 0.1,
                  optimize: bool = True) -> MRExperimentResult:
    """Rationality scores over ``instances`` seeded graphs of one family."""
    rng = np.random.default_rng(seed)
    inst_seeds = [int(s) for s in rng.integers(0, 2**63 - 1, size=instances)]
    jobs = max(1, int(jobs))
    work = [
        (model, n, mean_degree, s, tuple(strategies), ws_rewire_prob, optimize)
        for s in inst_seeds
    ]
    if jobs == 1:
        scores = [_mr_single(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            scores = list(pool.map(_mr_single, work, chunksize=max(1, instances // (jobs * 4))))
    return MRExperimentResult(
        model=model,
        n=n,
        mean_degree=mean_degree,
        strategies=tuple(strategies),
        seed=seed,
        scores=np.asarray(scores, dtype=np.float64),
    )


def report_to_csv(results, path) -> None:
    """Family summary rows: extremes, mean, and right-tail band counts."""
    if isinstance(results, MRExperimentResult):
        results = [results]
    labels = [f">{e:.2f}" for e in _BAND_EDGES]
    with open(path, "w") as fh:
        fh.write("family,k,n,q,max,min,mean," + ",".join(labels) + "\n")
        for r in results:
            bands = right_tail_bands(r.scores)
            fh.write(
                f"{r.model},{r.mean_degree:g},{r.n},{len(r.strategies)},"
                f"{r.max:.6g},{r.min:.6g},{r.mean:.6g},"
                + ",".join(str(bands[lab]) for lab in labels)
                + "\n"
            )
