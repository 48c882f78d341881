"""Training loop for the curve regressor.

Deliberately small: full-batch shuffling with a fixed seed, Adam, mean
squared error over every curve entry, and a CSV log of train and validation
loss per epoch.  Epoch 0 in the log is the untrained model, so the log always
records how far training moved from the starting point.
"""

from __future__ import annotations

import csv
import os
import time
from dataclasses import dataclass

import numpy as np
import torch

from .corpus import load_split, pad_image
from .model import ModelConfig, build_model, save_model


_OPTIMIZERS = {"adam": torch.optim.Adam}


@dataclass
class TrainingConfig:
    epochs: int = 10
    batch_size: int = 4
    learning_rate: float = 1e-4
    optimizer: str = "adam"
    seed: int = 0

    def __post_init__(self):
        if self.optimizer not in _OPTIMIZERS:
            known = ", ".join(sorted(_OPTIMIZERS))
            raise ValueError(f"unknown optimizer {self.optimizer!r}, have {known}")


def _to_batch(samples, indices):
    """Stack a list of equally sized sample images into one input tensor."""
    images = np.stack([samples[i].image for i in indices])
    labels = np.stack([samples[i].label for i in indices])
    x = torch.from_numpy(images).unsqueeze(1).float()
    y = torch.from_numpy(labels).float()
    return x, y


def mean_squared_error(predicted, target):
    """Mean of squared differences over every curve entry in the batch."""
    return torch.mean((predicted - target) ** 2)


def evaluate_loss(model, samples, batch_size=4):
    """Average per-element squared error of ``model`` over ``samples``."""
    model.eval()
    total = 0.0
    count = 0
    with torch.no_grad():
        for start in range(0, len(samples), batch_size):
            indices = range(start, min(start + batch_size, len(samples)))
            x, y = _to_batch(samples, list(indices))
            out = model(x)
            total += float(torch.sum((out - y) ** 2))
            count += y.numel()
    return total / count


def _curve_length(samples):
    length = samples[0].label.size
    for sample in samples:
        if sample.label.size != length:
            raise ValueError(
                f"sample {sample.sample_id} has curve length {sample.label.size}, "
                f"expected {length}"
            )
    return length


def _keep_families(samples, families):
    if families is None:
        return samples
    wanted = set(families)
    kept = [s for s in samples if s.family in wanted]
    if not kept:
        raise ValueError(f"no samples left after family filter {sorted(wanted)}")
    return kept


def train_model(
    corpus_root,
    out_dir,
    model_config=None,
    training=None,
    families=None,
    model=None,
    log_name="training_log.csv",
    model_name="model.pt",
    progress=None,
):
    """Train on the corpus train split, validating on its val split.

    Saves the model weights and a per-epoch loss log under ``out_dir`` and
    returns ``(model, history)`` where ``history`` is a list of
    ``(epoch, train_loss, val_loss)`` rows including the epoch 0 baseline.

    ``families`` restricts both splits to the named families; passing an
    already built ``model`` continues training it instead of starting
    fresh.  Together these support staged schedules such as fitting on
    synthetic families first and then mixing in empirical samples.
    """
    if training is None:
        training = TrainingConfig()
    torch.manual_seed(training.seed)
    rng = np.random.default_rng(training.seed)

    train_samples = _keep_families(load_split(corpus_root, "train"), families)
    val_samples = _keep_families(load_split(corpus_root, "val"), families)
    length = _curve_length(train_samples + val_samples)
    if model is not None:
        model_config = model.config
    if model_config is None:
        model_config = ModelConfig(curve_length=length)
    if model_config.curve_length != length:
        raise ValueError(
            f"model expects curves of length {model_config.curve_length}, "
            f"corpus provides {length}"
        )

    side = max(model_config.min_input_side,
               max(s.n for s in train_samples + val_samples))
    for sample in train_samples + val_samples:
        sample.image = pad_image(sample.image, side)

    if model is None:
        model = build_model(model_config)
    optimizer = _OPTIMIZERS[training.optimizer](
        model.parameters(), lr=training.learning_rate
    )

    history = []
    baseline_train = evaluate_loss(model, train_samples, training.batch_size)
    baseline_val = evaluate_loss(model, val_samples, training.batch_size)
    history.append((0, baseline_train, baseline_val))
    if progress is not None:
        progress(0, baseline_train, baseline_val)

    order = np.arange(len(train_samples))
    for epoch in range(1, training.epochs + 1):
        model.train()
        rng.shuffle(order)
        epoch_total = 0.0
        epoch_count = 0
        for start in range(0, len(order), training.batch_size):
            indices = order[start : start + training.batch_size].tolist()
            x, y = _to_batch(train_samples, indices)
            optimizer.zero_grad()
            out = model(x)
            loss = mean_squared_error(out, y)
            loss.backward()
            optimizer.step()
            epoch_total += float(loss.detach()) * y.numel()
            epoch_count += y.numel()
        train_loss = epoch_total / epoch_count
        val_loss = evaluate_loss(model, val_samples, training.batch_size)
        history.append((epoch, train_loss, val_loss))
        if progress is not None:
            progress(epoch, train_loss, val_loss)

    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, log_name), "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["epoch", "train_loss", "val_loss"])
        for epoch, train_loss, val_loss in history:
            writer.writerow([epoch, f"{train_loss:.8f}", f"{val_loss:.8f}"])
    save_model(model, os.path.join(out_dir, model_name))
    model.eval()
    return model, history


def train_cli(corpus_root, out_dir, epochs, batch_size, learning_rate, seed,
              families=None, continue_from=None):
    """Command line entry: train with progress lines on stdout."""

    def report(epoch, train_loss, val_loss):
        stamp = time.strftime("%H:%M:%S")
        print(
            f"[{stamp}] epoch {epoch:3d} train_loss={train_loss:.6f} "
            f"val_loss={val_loss:.6f}",
            flush=True,
        )

    model = None
    if continue_from is not None:
        from .model import load_model

        model = load_model(continue_from)
    training = TrainingConfig(
        epochs=epochs, batch_size=batch_size, learning_rate=learning_rate, seed=seed
    )
    _, history = train_model(
        corpus_root, out_dir, training=training, families=families,
        model=model, progress=report,
    )
    return history
