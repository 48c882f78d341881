"""Training loop and prediction mechanics on a reduced model.

The full-size fit lives in the acceptance tests; these use a small trunk so
the loop, logging, persistence and prediction plumbing get exercised fast.
"""

import numpy as np
import pytest
import torch

from wre_evaluator.corpus import read_curve_csv
from wre_evaluator.model import ModelConfig, build_model, load_model
from wre_evaluator.predict import predict_corpus, predict_curve
from wre_evaluator.train import TrainingConfig, evaluate_loss, train_model

SMALL = ModelConfig(
    conv_channels=(4, 8),
    conv_kernels=(3, 3),
    conv_repeats=(1, 1),
    spp_levels=(2, 1),
    hidden_size=32,
    curve_length=100,
)


@pytest.fixture(scope="module")
def small_run(corpus_root, tmp_path_factory):
    out_dir = tmp_path_factory.mktemp("small-run")
    model, history = train_model(
        str(corpus_root),
        str(out_dir),
        model_config=SMALL,
        training=TrainingConfig(epochs=2, batch_size=8, seed=1),
    )
    return model, history, out_dir


def test_history_includes_untrained_baseline(small_run):
    _, history, _ = small_run
    assert [row[0] for row in history] == [0, 1, 2]
    assert all(len(row) == 3 for row in history)
    assert all(np.isfinite(row[1]) and np.isfinite(row[2]) for row in history)


def test_log_file_matches_history(small_run):
    _, history, out_dir = small_run
    lines = (out_dir / "training_log.csv").read_text().splitlines()
    assert lines[0] == "epoch,train_loss,val_loss"
    assert len(lines) == len(history) + 1
    first = lines[1].split(",")
    assert int(first[0]) == 0
    assert abs(float(first[2]) - history[0][2]) < 1e-6


def test_saved_model_reproduces_losses(small_run, corpus_root):
    model, _, out_dir = small_run
    back = load_model(str(out_dir / "model.pt"))
    from wre_evaluator.corpus import load_split

    val = load_split(str(corpus_root), "val", min_side=SMALL.min_input_side)
    assert abs(evaluate_loss(back, val) - evaluate_loss(model, val)) < 1e-9


def test_training_is_seeded(corpus_root, tmp_path):
    histories = []
    for attempt in range(2):
        _, history = train_model(
            str(corpus_root),
            str(tmp_path / f"run{attempt}"),
            model_config=SMALL,
            training=TrainingConfig(epochs=1, batch_size=16, seed=42),
        )
        histories.append(history)
    assert histories[0] == histories[1]


def test_curve_length_mismatch_names_the_problem(corpus_root, tmp_path):
    wrong = ModelConfig(
        conv_channels=(4,),
        conv_kernels=(3,),
        conv_repeats=(1,),
        spp_levels=(1,),
        hidden_size=8,
        curve_length=7,
    )
    with pytest.raises(ValueError, match="length 7"):
        train_model(str(corpus_root), str(tmp_path), model_config=wrong)


def test_predict_corpus_writes_both_provenances(small_run, corpus_root, tmp_path):
    model, _, _ = small_run
    records = predict_corpus(model, str(corpus_root), "val", str(tmp_path))
    assert len(records) == 20
    for record in records[:4]:
        raw_path = tmp_path / f"{record.sample_id}.raw.csv"
        pred_path = tmp_path / f"{record.sample_id}.pred.csv"
        for path, provenance, curve in (
            (raw_path, "predicted-raw", record.raw),
            (pred_path, "predicted-filtered", record.filtered),
        ):
            text = path.read_text().splitlines()
            assert text[0].startswith("# n=")
            assert text[1] == "step,node,gcc_size,relative,provenance"
            body = [line.split(",") for line in text[2:]]
            assert len(body) == curve.size
            assert all(row[1] == "-1" and row[2] == "-1" for row in body)
            assert all(row[4] == provenance for row in body)
        meta, back = read_curve_csv(str(pred_path))
        assert meta["graph"] == record.sample_id
        assert np.allclose(back, record.filtered, atol=1e-10)
        # the filtered curve is a legal removal curve
        assert np.all(record.filtered >= 0.0) and np.all(record.filtered <= 1.0)
        assert np.all(np.diff(record.filtered) <= 1e-12)
        assert abs(record.worst_robustness - record.filtered.mean()) < 1e-12


def test_predict_curve_pads_small_inputs(small_run):
    model, _, _ = small_run
    image = np.zeros((3, 3), dtype=np.float32)
    image[0, 1] = image[1, 0] = 1.0
    curve = predict_curve(model, image)
    assert curve.shape == (100,)
    assert np.isfinite(curve).all()


def test_training_moves_the_small_model(small_run):
    _, history, _ = small_run
    # two epochs will not halve the loss on a tiny trunk, but it must improve
    assert history[-1][1] < history[0][1]


def test_family_filter_and_continuation(corpus_root, tmp_path):
    stage1, hist1 = train_model(
        str(corpus_root),
        str(tmp_path / "stage1"),
        model_config=SMALL,
        training=TrainingConfig(epochs=1, batch_size=16, seed=9),
        families=["ba-k4", "er-k4"],
    )
    stage2, hist2 = train_model(
        str(corpus_root),
        str(tmp_path / "stage2"),
        training=TrainingConfig(epochs=1, batch_size=16, seed=9),
        model=stage1,
    )
    assert stage2 is stage1
    assert [row[0] for row in hist1] == [0, 1]
    assert [row[0] for row in hist2] == [0, 1]
    assert all(np.isfinite(v) for row in hist1 + hist2 for v in row[1:])


def test_family_filter_rejects_unknown_names(corpus_root, tmp_path):
    with pytest.raises(ValueError, match="family filter"):
        train_model(
            str(corpus_root),
            str(tmp_path),
            model_config=SMALL,
            training=TrainingConfig(epochs=1),
            families=["nonexistent"],
        )


def test_unknown_optimizer_rejected():
    with pytest.raises(ValueError, match="optimizer"):
        TrainingConfig(optimizer="sgd")
