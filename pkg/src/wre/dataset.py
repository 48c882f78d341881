"""Corpora of (graph, stacked-envelope) pairs for curve predictors.

A corpus is a directory:

    root/
      manifest.json
      graphs/<sample>.edges
      labels/<sample>.csv

The manifest carries the strategy set, per-sample provenance (family,
size, seed) and the train/val/test split.  All paths inside it are
relative to the corpus root so the directory can move as a unit.
Building twice with the same arguments yields byte-identical files.
"""

import json
import os
from dataclasses import dataclass, field

import numpy as np

from .attack import attack_by_strategy, write_curve_csv
from .centrality import STANDARD_STRATEGY_SET
from .generators import GeneratorConfig, generate
from .graph import Graph, load_edge_list, sample_connected_subgraph, save_edge_list
from .mda import stack

SCHEMA_VERSION = 1


@dataclass
class DatasetManifest:
    strategy_set: tuple
    samples: list = field(default_factory=list)
    tie_rule: str = "id"
    schema_version: int = SCHEMA_VERSION

    def by_split(self, name: str) -> list:
        return [s for s in self.samples if s["split"] == name]


def write_manifest(manifest: DatasetManifest, root) -> None:
    payload = {
        "schema_version": manifest.schema_version,
        "strategy_set": list(manifest.strategy_set),
        "tie_rule": manifest.tie_rule,
        "samples": manifest.samples,
    }
    with open(os.path.join(root, "manifest.json"), "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_manifest(root) -> DatasetManifest:
    with open(os.path.join(root, "manifest.json")) as fh:
        payload = json.load(fh)
    if payload.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(
            f"unsupported manifest schema {payload.get('schema_version')!r}"
        )
    return DatasetManifest(
        strategy_set=tuple(payload["strategy_set"]),
        samples=payload["samples"],
        tie_rule=payload.get("tie_rule", "id"),
        schema_version=payload["schema_version"],
    )


def _label_for(g: Graph, strategies, tie_rule, sample_id):
    curves = [attack_by_strategy(g, metric, tie_rule=tie_rule) for metric in strategies]
    return stack(curves, graph_id=sample_id)


def _emit_sample(root, sample_id, g, envelope, family, extra):
    graph_rel = os.path.join("graphs", f"{sample_id}.edges")
    label_rel = os.path.join("labels", f"{sample_id}.csv")
    save_edge_list(g, os.path.join(root, graph_rel))
    nodes = np.asarray([node for _, node in envelope.winners], dtype=np.int64)
    write_curve_csv(
        os.path.join(root, label_rel),
        n=g.n,
        strategy="mda",
        graph_id=sample_id,
        relative=envelope.relative(),
        nodes=nodes,
        gcc_sizes=envelope.gcc_sizes,
    )
    record = {
        "id": sample_id,
        "graph": graph_rel,
        "label": label_rel,
        "family": family,
        "n": g.n,
        "split": "train",
    }
    record.update(extra)
    return record


def _normalize_family(spec_item):
    if isinstance(spec_item, dict):
        item = dict(spec_item)
    else:
        model, n, k = spec_item
        item = {"model": model, "n": n, "mean_degree": k}
    item.setdefault("ws_rewire_prob", 0.1)
    return item


def build_synthetic_corpus(root, families, instances_per_config: int = 50,
                           seed: int = 0, strategies=STANDARD_STRATEGY_SET,
                           ratios=(0.8, 0.1, 0.1), tie_rule: str = "id") -> DatasetManifest:
    """Generate, attack and persist one sample per (config, instance).

    ``families`` is a list of configs, each a (model, n, mean_degree)
    tuple or an equivalent dict.  Labels are the stacked envelopes over
    ``strategies``.  The split is stratified per config.
    """
    os.makedirs(os.path.join(root, "graphs"), exist_ok=True)
    os.makedirs(os.path.join(root, "labels"), exist_ok=True)
    manifest = DatasetManifest(strategy_set=tuple(strategies), tie_rule=tie_rule)
    rng = np.random.default_rng(seed)
    failures = []
    total = 0
    for fam in families:
        item = _normalize_family(fam)
        model = item["model"]
        n = int(item["n"])
        k = item["mean_degree"]
        family = f"{model}-k{k:g}"
        for idx in range(instances_per_config):
            total += 1
            inst_seed = int(rng.integers(0, 2**63 - 1))
            sample_id = f"{model}-k{k:g}-n{n}-i{idx:04d}"
            try:
                g = generate(GeneratorConfig(
                    model=model, n=n, mean_degree=k, seed=inst_seed,
                    ws_rewire_prob=item["ws_rewire_prob"],
                ))
                envelope = _label_for(g, strategies, tie_rule, sample_id)
            except Exception as exc:  # noqa: BLE001 - recorded, rethreshold below
                failures.append((sample_id, str(exc)))
                continue
            manifest.samples.append(_emit_sample(
                root, sample_id, g, envelope, family,
                {"model": model, "mean_degree": k, "seed": inst_seed},
            ))
    _check_failures(failures, total)
    split(manifest, ratios, seed=seed)
    write_manifest(manifest, root)
    return manifest


def build_empirical_corpus(root, sources, sample_size: int,
                           samples_per_source: int, seed: int = 0,
                           strategies=STANDARD_STRATEGY_SET,
                           ratios=(0.8, 0.1, 0.1), tie_rule: str = "id") -> DatasetManifest:
    """Corpus of connected subgraphs sampled from empirical networks.

    ``sources`` maps names to Graphs or edge-list paths.  Each sample is
    a random-walk frontier sample of exactly ``sample_size`` nodes,
    labeled the same way as synthetic samples.
    """
    os.makedirs(os.path.join(root, "graphs"), exist_ok=True)
    os.makedirs(os.path.join(root, "labels"), exist_ok=True)
    manifest = DatasetManifest(strategy_set=tuple(strategies), tie_rule=tie_rule)
    rng = np.random.default_rng(seed)
    failures = []
    total = 0
    for name, src in sorted(dict(sources).items()):
        big = src if isinstance(src, Graph) else load_edge_list(src)[0]
        for idx in range(samples_per_source):
            total += 1
            inst_seed = int(rng.integers(0, 2**63 - 1))
            sample_id = f"{name}-s{sample_size}-i{idx:04d}"
            try:
                g, _ = sample_connected_subgraph(big, sample_size, inst_seed)
                envelope = _label_for(g, strategies, tie_rule, sample_id)
            except Exception as exc:  # noqa: BLE001
                failures.append((sample_id, str(exc)))
                continue
            manifest.samples.append(_emit_sample(
                root, sample_id, g, envelope, name,
                {"mean_degree": round(2 * g.m / g.n, 4), "seed": inst_seed},
            ))
    _check_failures(failures, total)
    split(manifest, ratios, seed=seed)
    write_manifest(manifest, root)
    return manifest


def _check_failures(failures, total):
    if total and len(failures) > 0.1 * total:
        detail = "; ".join(f"{sid}: {msg}" for sid, msg in failures[:5])
        raise RuntimeError(
            f"{len(failures)}/{total} samples failed to build ({detail} ...)"
        )


def split(manifest: DatasetManifest, ratios=(0.8, 0.1, 0.1), seed: int = 0) -> DatasetManifest:
    """Assign train/val/test per sample, stratified by (family, n).

    Within each stratum the counts follow the ratios with largest
    remainders absorbing the rounding. Strata smaller than the number of
    nonzero ratios get a best-effort assignment (train first).
    """
    ratios = tuple(float(r) for r in ratios)
    if len(ratios) != 3 or any(r < 0 for r in ratios):
        raise ValueError("ratios must be three non-negative numbers")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError("ratios must sum to 1")
    rng = np.random.default_rng(seed)
    groups = {}
    for s in manifest.samples:
        groups.setdefault((s["family"], s["n"]), []).append(s)
    names = ("train", "val", "test")
    for key in sorted(groups):
        members = groups[key]
        idx = rng.permutation(len(members))
        counts = _apportion(len(members), ratios)
        cursor = 0
        for name, count in zip(names, counts):
            for i in idx[cursor:cursor + count]:
                members[int(i)]["split"] = name
            cursor += count
    return manifest


def _apportion(total, ratios):
    raw = [r * total for r in ratios]
    counts = [int(x) for x in raw]
    short = total - sum(counts)
    rema = sorted(range(3), key=lambda i: raw[i] - counts[i], reverse=True)
    for i in range(short):
        counts[rema[i % 3]] += 1
    return counts
