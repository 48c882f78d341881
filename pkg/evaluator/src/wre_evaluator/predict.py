"""Inference: turn adjacency images into predicted robustness curves.

Predictions are written in the same CSV dialect the simulation side uses for
measured curves, so its comparison tooling can consume them directly.  The
node and gcc_size columns are meaningless for a regressed curve and are
filled with -1; the provenance column distinguishes the raw network output
from the filtered, legality-enforced curve.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np
import torch

from .corpus import load_split, pad_image
from .filtering import enforce_curve_legality


@dataclass
class PredictionRecord:
    sample_id: str
    n: int
    raw: np.ndarray = field(repr=False)
    filtered: np.ndarray = field(repr=False)

    @property
    def worst_robustness(self):
        """Mean of the filtered curve, the predicted R_W."""
        return float(np.mean(self.filtered))


def predict_curve(model, image):
    """Run one adjacency image through the model, returning the raw curve."""
    side = max(model.config.min_input_side, image.shape[0])
    padded = pad_image(np.asarray(image, dtype=np.float32), side)
    x = torch.from_numpy(padded).reshape(1, 1, side, side)
    with torch.no_grad():
        out = model(x)
    return out[0].numpy().astype(np.float64)


def write_prediction_csv(path, sample_id, n, curve, provenance):
    """Write one predicted curve in the measured-curve CSV schema."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# n={n} strategy=predicted graph={sample_id}\n")
        fh.write("step,node,gcc_size,relative,provenance\n")
        for step, value in enumerate(curve, start=1):
            fh.write(f"{step},-1,-1,{value:.12g},{provenance}\n")


def predict_corpus(model, corpus_root, split, out_dir, batch_size=4):
    """Predict every sample in a corpus split and write curve CSVs.

    Each sample yields two files under ``out_dir``: ``<id>.pred.csv`` holding
    the filtered curve and ``<id>.raw.csv`` holding the untouched network
    output.  Returns the predictions as :class:`PredictionRecord` rows.
    """
    samples = load_split(corpus_root, split)
    os.makedirs(out_dir, exist_ok=True)
    records = []
    model.eval()
    for sample in samples:
        raw = predict_curve(model, sample.image)
        filtered = enforce_curve_legality(raw)
        write_prediction_csv(
            os.path.join(out_dir, f"{sample.sample_id}.raw.csv"),
            sample.sample_id,
            sample.n,
            raw,
            "predicted-raw",
        )
        write_prediction_csv(
            os.path.join(out_dir, f"{sample.sample_id}.pred.csv"),
            sample.sample_id,
            sample.n,
            filtered,
            "predicted-filtered",
        )
        records.append(
            PredictionRecord(
                sample_id=sample.sample_id, n=sample.n, raw=raw, filtered=filtered
            )
        )
    return records
