"""How often does the strategy pool act almost fully rational?

Runs the misleading-rationality experiment on a few seeded graphs per
family and prints the right-tail band counts: how many instances land
in each 0.05-wide score slice (>0.95, then (0.90, 0.95], and so on).

Run:  python3 demos/rationality_bands.py [--n 300] [--instances 10]
"""

import argparse

from wre.rationality import mr_experiment, right_tail_bands


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=300)
    parser.add_argument("--k", type=float, default=4.0)
    parser.add_argument("--instances", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"n={args.n} k={args.k} instances={args.instances}")
    header = ["family", "mean", "min"] + [f">{edge:.2f}" for edge in
                                          (0.95, 0.90, 0.85, 0.80, 0.75, 0.70)]
    print(" ".join(f"{h:>8s}" for h in header))
    for family in ("ba", "er", "ws", "regular"):
        result = mr_experiment(family, args.n, args.k, args.instances,
                               seed=args.seed)
        bands = right_tail_bands(result.scores)
        row = [family, f"{result.scores.mean():.4f}", f"{result.scores.min():.4f}"]
        row += [str(bands[f">{edge:.2f}"]) for edge in (0.95, 0.90, 0.85, 0.80, 0.75, 0.70)]
        print(" ".join(f"{v:>8s}" for v in row))


if __name__ == "__main__":
    main()
