"""Shared fixtures: one corpus build and one training run per session.

The corpus is produced by the wre command line tool, never by importing it,
so these tests exercise the real file boundary between the two packages.
"""

import subprocess
import time

import pytest

from wre_evaluator.train import TrainingConfig, train_model

from eval_helpers import WRE


@pytest.fixture(scope="session")
def corpus_root(tmp_path_factory):
    """Desk-scale corpus: 4 families, k=4, n=100, 50 instances each."""
    if WRE is None:
        pytest.skip("wre CLI not installed")
    root = tmp_path_factory.mktemp("corpus")
    proc = subprocess.run(
        [
            WRE, "dataset",
            "--families", "ba,er,ws,regular",
            "--n", "100",
            "--k", "4",
            "--instances", "50",
            "--seed", "101",
            "-o", str(root),
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return root


@pytest.fixture(scope="session")
def trained(corpus_root, tmp_path_factory):
    """Full 10 epoch training run, shared by every test that needs a model.

    Returns a dict with the model, its output directory, the loss history
    and the wall clock seconds the fit took.
    """
    out_dir = tmp_path_factory.mktemp("run")
    start = time.perf_counter()
    model, history = train_model(
        str(corpus_root),
        str(out_dir),
        training=TrainingConfig(epochs=10, batch_size=4, learning_rate=1e-4, seed=0),
    )
    elapsed = time.perf_counter() - start
    return {
        "model": model,
        "out_dir": out_dir,
        "history": history,
        "elapsed": elapsed,
    }
