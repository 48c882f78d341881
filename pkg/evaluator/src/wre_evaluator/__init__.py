"""Learned quick evaluator for worst-case network robustness curves."""

from .corpus import Sample, load_split, read_curve_csv, read_edge_list, read_manifest
from .evaluate import SampleScore, aggregate, score_curves
from .filtering import enforce_curve_legality
from .model import CurveRegressor, ModelConfig, build_model, load_model, save_model
from .predict import PredictionRecord, predict_corpus, predict_curve
from .train import TrainingConfig, evaluate_loss, mean_squared_error, train_model

__all__ = [
    "Sample",
    "load_split",
    "read_curve_csv",
    "read_edge_list",
    "read_manifest",
    "SampleScore",
    "aggregate",
    "score_curves",
    "enforce_curve_legality",
    "CurveRegressor",
    "ModelConfig",
    "build_model",
    "load_model",
    "save_model",
    "PredictionRecord",
    "predict_corpus",
    "predict_curve",
    "TrainingConfig",
    "evaluate_loss",
    "mean_squared_error",
    "train_model",
]
