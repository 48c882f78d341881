"""Command line front end.

Verbs: generate, attack, mda, rationality, dataset, compare, plot.
Exit codes: 0 on success, 1 on usage errors, 2 on runtime failures.
Outputs are deterministic for fixed inputs, flags and seed.
"""

import argparse
import os
import sys

import numpy as np

from . import dataset as dataset_mod
from .attack import attack_by_strategy, curve_to_csv, read_curve_csv
from .centrality import EXTENDED_STRATEGY_SET, STANDARD_STRATEGY_SET
from .generators import MODELS, GeneratorConfig, generate
from .graph import load_edge_list, save_edge_list
from .mda import (decomposition_to_csv, mda_to_csv, read_mda_csv, stack,
                  worst_robustness)
from .rationality import mr_experiment, report_to_csv, right_tail_bands
from .svgplot import curve_plot_svg


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def _parse_params(pairs):
    out = {}
    for pair in pairs or ():
        if "=" not in pair:
            raise ValueError(f"--param expects KEY=VALUE, got {pair!r}")
        key, val = pair.split("=", 1)
        try:
            out[key] = int(val)
        except ValueError:
            try:
                out[key] = float(val)
            except ValueError:
                out[key] = val
    return out


def _strategy_list(text):
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    if not names:
        raise ValueError("empty strategy list")
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wre", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("-o", "--out", required=True)

    p = sub.add_parser("generate", parents=[common],
                       help="write a seeded random graph as an edge list")
    p.add_argument("--model", required=True, choices=MODELS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--ws-beta", type=float, default=0.1)

    p = sub.add_parser("attack", parents=[common],
                       help="rank by one metric, remove in order, write the curve")
    p.add_argument("graph")
    p.add_argument("--strategy", required=True)
    p.add_argument("--tie-rule", choices=("id", "random"), default="id")
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--graph-id")

    p = sub.add_parser("mda", parents=[common],
                       help="stack several strategies into the envelope curve")
    p.add_argument("graph")
    p.add_argument("--strategies", default=",".join(STANDARD_STRATEGY_SET))
    p.add_argument("--tie-rule", choices=("id", "random"), default="id")
    p.add_argument("--winner-rule", choices=("first", "counter"), default="first")
    p.add_argument("--decomposition")
    p.add_argument("--graph-id")

    p = sub.add_parser("rationality", parents=[common],
                       help="maximum rationality experiment over seeded graphs")
    p.add_argument("--model", required=True, choices=MODELS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--instances", type=int, required=True)
    p.add_argument("--q", type=int, choices=(8, 12), default=8)
    p.add_argument("--strategies")
    p.add_argument("--ws-beta", type=float, default=0.1)
    p.add_argument("--no-optimize", action="store_true")

    p = sub.add_parser("dataset", parents=[common],
                       help="build a labeled corpus (synthetic or sampled)")
    p.add_argument("--families", default="ba,er,ws,regular")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--k", default="4")
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--strategies", default=",".join(STANDARD_STRATEGY_SET))
    p.add_argument("--ratios", default="0.8,0.1,0.1")
    p.add_argument("--ws-beta", type=float, default=0.1)
    p.add_argument("--empirical", help="comma list of source edge lists")
    p.add_argument("--sample-size", type=int, default=1000)
    p.add_argument("--samples-per-source", type=int, default=10)

    p = sub.add_parser("compare",
                       help="compare two curve CSVs (robustness and error)")
    p.add_argument("curve_a")
    p.add_argument("curve_b")
    p.add_argument("-o", "--out")

    p = sub.add_parser("plot", parents=[common],
                       help="overlay curve CSVs as an SVG (plus a tidy CSV)")
    p.add_argument("--curves", required=True)
    p.add_argument("--title", default="attack curves")

    return parser


def _cmd_generate(args) -> int:
    g = generate(GeneratorConfig(model=args.model, n=args.n, mean_degree=args.k,
                                 seed=args.seed, ws_rewire_prob=args.ws_beta))
    save_edge_list(g, args.out)
    print(f"wrote {args.out}: n={g.n} m={g.m}")
    return 0


def _cmd_attack(args) -> int:
    g, _ = load_edge_list(args.graph)
    params = _parse_params(args.param)
    curve = attack_by_strategy(g, args.strategy, tie_rule=args.tie_rule,
                               seed=args.seed, **params)
    gid = args.graph_id or os.path.splitext(os.path.basename(args.graph))[0]
    curve_to_csv(curve, args.out, graph_id=gid, provenance="simulated")
    print(f"wrote {args.out}: strategy={args.strategy} "
          f"r_w={float(curve.relative().mean()):.6g}")
    return 0


def _cmd_mda(args) -> int:
    g, _ = load_edge_list(args.graph)
    gid = args.graph_id or os.path.splitext(os.path.basename(args.graph))[0]
    names = _strategy_list(args.strategies)
    curves = [attack_by_strategy(g, s, tie_rule=args.tie_rule, seed=args.seed)
              for s in names]
    envelope = stack(curves, winner_rule=args.winner_rule, graph_id=gid)
    mda_to_csv(envelope, args.out)
    if args.decomposition:
        decomposition_to_csv(envelope, args.decomposition)
    print(f"wrote {args.out}: q={len(names)} "
          f"r_w={worst_robustness(envelope):.6g}")
    return 0


def _cmd_rationality(args) -> int:
    if args.strategies:
        names = _strategy_list(args.strategies)
    else:
        names = STANDARD_STRATEGY_SET if args.q == 8 else EXTENDED_STRATEGY_SET
    result = mr_experiment(
        model=args.model, n=args.n, mean_degree=args.k,
        instances=args.instances, seed=args.seed, strategies=names,
        jobs=args.jobs, ws_rewire_prob=args.ws_beta,
        optimize=not args.no_optimize,
    )
    report_to_csv(result, args.out)
    bands = right_tail_bands(result.scores)
    band_text = " ".join(f"{k}:{v}" for k, v in bands.items())
    print(f"family={args.model} k={args.k:g} n={args.n} q={len(names)} "
          f"mean={result.mean:.4f} min={result.min:.4f} max={result.max:.4f} "
          f"{band_text}")
    return 0


def _cmd_dataset(args) -> int:
    ratios = tuple(float(x) for x in args.ratios.split(","))
    strategies = _strategy_list(args.strategies)
    if args.empirical:
        sources = {}
        for path in args.empirical.split(","):
            name = os.path.splitext(os.path.basename(path))[0]
            sources[name] = path
        manifest = dataset_mod.build_empirical_corpus(
            args.out, sources, sample_size=args.sample_size,
            samples_per_source=args.samples_per_source, seed=args.seed,
            strategies=strategies, ratios=ratios,
        )
    else:
        families = []
        for model in args.families.split(","):
            for k in args.k.split(","):
                families.append({
                    "model": model.strip(), "n": args.n,
                    "mean_degree": float(k), "ws_rewire_prob": args.ws_beta,
                })
        manifest = dataset_mod.build_synthetic_corpus(
            args.out, families, instances_per_config=args.instances,
            seed=args.seed, strategies=strategies, ratios=ratios,
        )
    counts = {name: len(manifest.by_split(name)) for name in ("train", "val", "test")}
    print(f"wrote {args.out}: samples={len(manifest.samples)} "
          f"train={counts['train']} val={counts['val']} test={counts['test']}")
    return 0


def _resample(values, length):
    if len(values) == length:
        return np.asarray(values, dtype=np.float64)
    src = np.linspace(0.0, 1.0, num=len(values))
    dst = np.linspace(0.0, 1.0, num=length)
    return np.interp(dst, src, np.asarray(values, dtype=np.float64))


def _cmd_compare(args) -> int:
    a = read_curve_csv(args.curve_a)
    b = read_curve_csv(args.curve_b)
    rw_a = float(a.relative.mean())
    rw_b = float(b.relative.mean())
    b_vals = _resample(b.relative, len(a.relative))
    mse = float(np.mean((a.relative - b_vals) ** 2))
    lines = [
        f"curve_a={args.curve_a} strategy={a.strategy} r_w={rw_a:.12g}",
        f"curve_b={args.curve_b} strategy={b.strategy} r_w={rw_b:.12g}",
        f"abs_diff={abs(rw_a - rw_b):.12g}",
        f"mse={mse:.12g}",
    ]
    print("\n".join(lines))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("quantity,value\n")
            fh.write(f"r_w_a,{rw_a:.12g}\n")
            fh.write(f"r_w_b,{rw_b:.12g}\n")
            fh.write(f"abs_diff,{abs(rw_a - rw_b):.12g}\n")
            fh.write(f"mse,{mse:.12g}\n")
    return 0


def _read_any_curve(path):
    """Return (label, relative) for a single-strategy or stacked curve CSV."""
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                header = line
                break
        else:
            raise ValueError(f"{path}: no header row")
    if "winner_strategy" in header:
        env = read_mda_csv(path)
        return f"mda:{env.graph_id}", env.gcc_sizes / env.n
    rec = read_curve_csv(path)
    return f"{rec.strategy}:{rec.graph_id}", rec.relative


def _cmd_plot(args) -> int:
    triples = []
    rows = []
    for path in args.curves.split(","):
        label, relative = _read_any_curve(path.strip())
        note = f"r_w={float(relative.mean()):.3f}"
        triples.append((label, relative, note))
        for i, v in enumerate(relative, start=1):
            rows.append((label, i, v))
    curve_plot_svg(triples, args.out, title=args.title)
    side = os.path.splitext(args.out)[0] + ".csv"
    with open(side, "w") as fh:
        fh.write("curve,step,relative\n")
        for label, i, v in rows:
            fh.write(f"{label},{i},{v:.12g}\n")
    print(f"wrote {args.out} and {side}")
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "attack": _cmd_attack,
    "mda": _cmd_mda,
    "rationality": _cmd_rationality,
    "dataset": _cmd_dataset,
    "compare": _cmd_compare,
    "plot": _cmd_plot,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.verb](args)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        sys.stderr.write(f"wre {args.verb}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
