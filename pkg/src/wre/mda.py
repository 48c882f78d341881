"""Stacking attack curves into the most destructive envelope.

Given several attack curves on one graph, the stacked curve keeps, at
each removal count, the smallest surviving GCC any strategy achieved.
Averaging that envelope gives the worst-case robustness score; its
complement (relative to the intact GCC) is the destruction score.
Comparisons happen on raw integer GCC sizes so ties are exact.
"""

from dataclasses import dataclass

import numpy as np

from .attack import AttackCurve


@dataclass
class MDACurve:
    """Pointwise-minimum envelope over a set of attack curves.

    winners[i] is the (strategy, node) pair credited with position i;
    alternatives[i] lists every pair that reached the same minimum there,
    in input-strategy order.
    """

    n: int
    gcc_sizes: np.ndarray
    winners: list
    alternatives: list
    strategies: tuple
    graph_id: str = "g"

    def relative(self) -> np.ndarray:
        return self.gcc_sizes / self.n


def pointwise_minimum(curves) -> tuple[np.ndarray, list]:
    """Positionwise minima and the (strategy, node) pairs achieving them.

    Validates that the curves describe the same graph size and are, each,
    a legal attack curve.  Integer comparison throughout.
    """
    if not curves:
        raise ValueError("need at least one curve to stack")
    n = curves[0].n
    names = []
    for c in curves:
        if c.n != n:
            raise ValueError("curves disagree on node count")
        c.validate()
        names.append(c.strategy)
    if len(set(names)) != len(names):
        raise ValueError("duplicate strategy names in the stack")
    table = np.vstack([np.asarray(c.gcc_sizes, dtype=np.int64) for c in curves])
    mins = table.min(axis=0)
    alternatives = []
    for i in range(n):
        hit = []
        for q, c in enumerate(curves):
            if table[q, i] == mins[i]:
                hit.append((c.strategy, int(c.order[i])))
        alternatives.append(hit)
    return mins, alternatives


def stack(curves, winner_rule: str = "first", graph_id: str = "g") -> MDACurve:
    """Stack attack curves into the most destructive envelope.

    winner_rule "first" credits the earliest strategy in the input list
    that attains each minimum.  winner_rule "counter" spreads credit the
    way the rationality assignment does: among nodes attaining the
    minimum, pick the one used least so far (ties to the smaller id).
    """
    mins, alternatives = pointwise_minimum(curves)
    n = curves[0].n
    winners = []
    if winner_rule == "first":
        winners = [alts[0] for alts in alternatives]
    elif winner_rule == "counter":
        counters = {}
        for alts in alternatives:
            nodes = sorted({node for _, node in alts})
            pick = min(nodes, key=lambda v: (counters.get(v, 0), v))
            counters[pick] = counters.get(pick, 0) + 1
            strategy = next(s for s, node in alts if node == pick)
            winners.append((strategy, pick))
    else:
        raise ValueError(f"unknown winner rule {winner_rule!r}")
    return MDACurve(
        n=n,
        gcc_sizes=mins,
        winners=winners,
        alternatives=alternatives,
        strategies=tuple(c.strategy for c in curves),
        graph_id=graph_id,
    )


def worst_robustness(mda: MDACurve) -> float:
    """Mean of the stacked relative curve over all removal counts."""
    return float(mda.relative().mean())


def destruction(mda: MDACurve, initial_relative: float = 1.0) -> float:
    """Average drop below the intact relative GCC along the envelope.

    ``initial_relative`` is the relative GCC before any removal (1.0 for
    a connected graph), so destruction + worst_robustness equals it.
    """
    return float(np.mean(initial_relative - mda.relative()))


def decompose(mda: MDACurve) -> dict:
    """Positions owned by each strategy (0-based), a partition of range(n)."""
    owned = {s: [] for s in mda.strategies}
    for i, (strategy, _) in enumerate(mda.winners):
        owned[strategy].append(i)
    return owned


def _ranges(positions) -> str:
    """Compress sorted positions to 1-based 'a-b;c' range notation."""
    if not positions:
        return ""
    chunks = []
    lo = prev = positions[0]
    for p in positions[1:]:
        if p == prev + 1:
            prev = p
            continue
        chunks.append((lo, prev))
        lo = prev = p
    chunks.append((lo, prev))
    return ";".join(
        f"{a + 1}" if a == b else f"{a + 1}-{b + 1}" for a, b in chunks
    )


def decomposition_to_csv(mda: MDACurve, path) -> None:
    owned = decompose(mda)
    with open(path, "w") as fh:
        fh.write(f"# n={mda.n} graph={mda.graph_id}\n")
        fh.write("strategy,positions\n")
        for s in mda.strategies:
            fh.write(f"{s},{_ranges(owned[s])}\n")


def mda_to_csv(mda: MDACurve, path) -> None:
    """step, relative envelope value, winning strategy/node, tie count."""
    rel = mda.relative()
    with open(path, "w") as fh:
        fh.write(
            f"# n={mda.n} graph={mda.graph_id} "
            f"strategies={','.join(mda.strategies)}\n"
        )
        fh.write("step,relative,winner_strategy,winner_node,alternative_count\n")
        for i in range(mda.n):
            s, v = mda.winners[i]
            fh.write(f"{i + 1},{rel[i]:.12g},{s},{v},{len(mda.alternatives[i])}\n")


def read_mda_csv(path) -> MDACurve:
    """Rebuild an MDACurve from its CSV (alternatives reduce to winners)."""
    meta = {}
    rel, winners = [], []
    counts = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for token in line[1:].split():
                    if "=" in token:
                        k, v = token.split("=", 1)
                        meta[k] = v
                continue
            if line.startswith("step,"):
                continue
            parts = line.split(",")
            rel.append(float(parts[1]))
            winners.append((parts[2], int(parts[3])))
            counts.append(int(parts[4]))
    n = int(meta["n"])
    gcc = np.rint(np.asarray(rel) * n).astype(np.int64)
    strategies = tuple(meta.get("strategies", "").split(",")) if meta.get("strategies") else ()
    return MDACurve(
        n=n,
        gcc_sizes=gcc,
        winners=winners,
        alternatives=[[w] for w in winners],
        strategies=strategies,
        graph_id=meta.get("graph", "g"),
    )
