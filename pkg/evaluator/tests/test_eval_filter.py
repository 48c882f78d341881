"""Legality filter tests, mirroring the contract of the measured-curve side."""

import numpy as np
import pytest

from wre_evaluator.filtering import enforce_curve_legality


def test_clamp_bounds():
    out = enforce_curve_legality([1.7, 0.5, -0.3])
    assert out[0] == 1.0
    assert out[-1] == 0.0


def test_single_violation_bridged():
    out = enforce_curve_legality([1.0, 0.4, 0.6, 0.3])
    assert np.allclose(out, [1.0, 0.4, 0.35, 0.3])


def test_rising_tail_flattened():
    out = enforce_curve_legality([0.5, 0.8, 0.9])
    assert np.allclose(out, [0.5, 0.5, 0.5])


def test_clamp_and_bridge_together():
    out = enforce_curve_legality([1.3, 0.4, 0.6, -0.2])
    assert np.allclose(out, [1.0, 0.4, 0.2, 0.0])


def test_long_ascent_gets_linear_bridge():
    out = enforce_curve_legality([0.9, 0.95, 0.96, 0.97, 0.1])
    assert np.allclose(out, [0.9, 0.7, 0.5, 0.3, 0.1])


def test_early_spike_interpolated():
    out = enforce_curve_legality([0.2, 0.9, 0.1])
    assert np.allclose(out, [0.2, 0.15, 0.1])


def test_legal_curve_untouched():
    legal = [1.0, 0.8, 0.8, 0.5, 0.0]
    assert np.allclose(enforce_curve_legality(legal), legal)


def test_empty_and_single():
    assert enforce_curve_legality([]).size == 0
    assert np.allclose(enforce_curve_legality([0.4]), [0.4])
    assert np.allclose(enforce_curve_legality([1.9]), [1.0])


def test_idempotent_and_legal_on_random_noise():
    rng = np.random.default_rng(7)
    for _ in range(200):
        curve = rng.normal(0.4, 0.8, size=int(rng.integers(1, 60)))
        out = enforce_curve_legality(curve)
        assert out.dtype == np.float64
        assert np.all(out >= 0.0) and np.all(out <= 1.0)
        assert np.all(np.diff(out) <= 1e-12)
        assert np.allclose(enforce_curve_legality(out), out)


def test_rejects_matrices():
    with pytest.raises(ValueError):
        enforce_curve_legality(np.zeros((2, 2)))
