"""Scoring predicted curves against measured envelope labels."""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass

import numpy as np

from .corpus import load_split, read_curve_csv


@dataclass
class SampleScore:
    sample_id: str
    mse: float
    rw_measured: float
    rw_predicted: float

    @property
    def abs_rw_error(self):
        return abs(self.rw_measured - self.rw_predicted)


def score_curves(labels, predictions):
    """Compare two ``{sample_id: curve}`` maps entry by entry.

    Raises ``ValueError`` when the id sets differ or a pair of curves has
    mismatched lengths, so silent misalignment cannot slip through.
    """
    missing = sorted(set(labels) - set(predictions))
    extra = sorted(set(predictions) - set(labels))
    if missing or extra:
        raise ValueError(
            f"misaligned sample sets: missing predictions for {missing}, "
            f"unexpected predictions {extra}"
        )
    scores = []
    for sample_id in sorted(labels):
        measured = np.asarray(labels[sample_id], dtype=np.float64)
        predicted = np.asarray(predictions[sample_id], dtype=np.float64)
        if measured.size != predicted.size:
            raise ValueError(
                f"curve length mismatch for {sample_id}: "
                f"{measured.size} vs {predicted.size}"
            )
        scores.append(
            SampleScore(
                sample_id=sample_id,
                mse=float(np.mean((measured - predicted) ** 2)),
                rw_measured=float(np.mean(measured)),
                rw_predicted=float(np.mean(predicted)),
            )
        )
    return scores


def aggregate(scores):
    """Summary statistics over a list of :class:`SampleScore` rows."""
    rw_errors = np.array([s.abs_rw_error for s in scores])
    mses = np.array([s.mse for s in scores])
    return {
        "samples": len(scores),
        "mean_mse": float(np.mean(mses)),
        "mean_abs_rw_error": float(np.mean(rw_errors)),
        "max_abs_rw_error": float(np.max(rw_errors)),
    }


def load_split_labels(corpus_root, split):
    """Labels of one corpus split as ``{sample_id: curve}``."""
    return {s.sample_id: s.label for s in load_split(corpus_root, split)}


def load_prediction_dir(directory, suffix=".pred.csv"):
    """Read every ``*.pred.csv`` curve in a directory as ``{sample_id: curve}``."""
    curves = {}
    for name in sorted(os.listdir(directory)):
        if not name.endswith(suffix):
            continue
        meta, curve = read_curve_csv(os.path.join(directory, name))
        sample_id = meta.get("graph", name[: -len(suffix)])
        curves[sample_id] = curve
    if not curves:
        raise ValueError(f"no {suffix} files under {directory}")
    return curves


def write_score_csv(path, scores, totals):
    """Per-sample rows plus one summary row, for quick inspection."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sample", "mse", "rw_measured", "rw_predicted", "abs_rw_error"])
        for s in scores:
            writer.writerow(
                [
                    s.sample_id,
                    f"{s.mse:.8f}",
                    f"{s.rw_measured:.8f}",
                    f"{s.rw_predicted:.8f}",
                    f"{s.abs_rw_error:.8f}",
                ]
            )
        writer.writerow(
            [
                "__summary__",
                f"{totals['mean_mse']:.8f}",
                "",
                "",
                f"{totals['mean_abs_rw_error']:.8f}",
            ]
        )
