"""Command line front end for the curve evaluator.

Verbs: train, predict, evaluate.
Exit codes: 0 on success, 1 on usage errors, 2 on runtime failures.
"""

import argparse
import os
import sys

from .evaluate import (aggregate, load_prediction_dir, load_split_labels,
                       score_curves, write_score_csv)
from .model import load_model
from .predict import predict_corpus
from .train import train_cli


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wre-eval", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("train", help="fit the regressor on a corpus train split")
    p.add_argument("corpus")
    p.add_argument("-o", "--out", required=True,
                   help="directory for model.pt and training_log.csv")
    p.add_argument("--epochs", type=int, default=10)
    p.add_argument("--batch-size", type=int, default=4)
    p.add_argument("--learning-rate", type=float, default=1e-4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--families",
                   help="comma list restricting training to these families")
    p.add_argument("--continue-from", metavar="MODEL",
                   help="resume from a saved model instead of a fresh one")

    p = sub.add_parser("predict", help="write predicted curves for one split")
    p.add_argument("corpus")
    p.add_argument("--model", required=True, help="path to a saved model.pt")
    p.add_argument("--split", default="test", choices=("train", "val", "test"))
    p.add_argument("-o", "--out", required=True, help="directory for curve CSVs")

    p = sub.add_parser("evaluate", help="score predicted curves against labels")
    p.add_argument("corpus")
    p.add_argument("--predictions", required=True,
                   help="directory of *.pred.csv files")
    p.add_argument("--split", default="test", choices=("train", "val", "test"))
    p.add_argument("-o", "--out", help="optional score CSV path")

    return parser


def _cmd_train(args):
    families = None
    if args.families:
        families = [f.strip() for f in args.families.split(",") if f.strip()]
    history = train_cli(
        args.corpus, args.out, args.epochs, args.batch_size,
        args.learning_rate, args.seed,
        families=families, continue_from=args.continue_from,
    )
    first, last = history[0], history[-1]
    print(f"initial val_loss={first[2]:.6f}")
    print(f"final val_loss={last[2]:.6f}")
    print(f"model written to {os.path.join(args.out, 'model.pt')}")
    return 0


def _cmd_predict(args):
    model = load_model(args.model)
    records = predict_corpus(model, args.corpus, args.split, args.out)
    for record in records:
        print(f"{record.sample_id} r_w={record.worst_robustness:.6f}")
    print(f"{len(records)} predictions written to {args.out}")
    return 0


def _cmd_evaluate(args):
    labels = load_split_labels(args.corpus, args.split)
    predictions = load_prediction_dir(args.predictions)
    scores = score_curves(labels, predictions)
    totals = aggregate(scores)
    for s in scores:
        print(
            f"{s.sample_id} mse={s.mse:.6f} rw_measured={s.rw_measured:.6f} "
            f"rw_predicted={s.rw_predicted:.6f} abs_rw_error={s.abs_rw_error:.6f}"
        )
    print(
        f"summary samples={totals['samples']} mean_mse={totals['mean_mse']:.6f} "
        f"mean_abs_rw_error={totals['mean_abs_rw_error']:.6f} "
        f"max_abs_rw_error={totals['max_abs_rw_error']:.6f}"
    )
    if args.out:
        write_score_csv(args.out, scores, totals)
    return 0


_COMMANDS = {
    "train": _cmd_train,
    "predict": _cmd_predict,
    "evaluate": _cmd_evaluate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.verb](args)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        sys.stderr.write(f"wre-eval {args.verb}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
