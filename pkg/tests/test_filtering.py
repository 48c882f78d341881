"""Curve repair: clamping and the monotone rebuild."""

import numpy as np
import pytest

from wre.filtering import apply_filter, clamp, enforce_monotone


def test_clamp_bounds():
    out = clamp([1.3, 0.5, -0.2, 0.0, 1.0])
    assert out.tolist() == [1.0, 0.5, 0.0, 0.0, 1.0]


def test_monotone_bridges_rising_run():
    out = enforce_monotone([1.0, 0.4, 0.6, 0.3])
    np.testing.assert_allclose(out, [1.0, 0.4, 0.35, 0.3])


def test_monotone_flattens_tail_without_return_point():
    out = enforce_monotone([0.5, 0.8, 0.9])
    np.testing.assert_allclose(out, [0.5, 0.5, 0.5])


def test_full_filter_worked_example():
    out = apply_filter([1.3, 0.4, 0.6, -0.2])
    np.testing.assert_allclose(out, [1.0, 0.4, 0.2, 0.0])


def test_already_legal_curve_is_untouched():
    legal = [1.0, 0.8, 0.8, 0.5, 0.0]
    np.testing.assert_array_equal(apply_filter(legal), legal)


def test_filter_idempotent_on_random_noise():
    rng = np.random.default_rng(0)
    for _ in range(200):
        n = int(rng.integers(2, 60))
        raw = rng.normal(0.5, 0.6, size=n)
        once = apply_filter(raw)
        twice = apply_filter(once)
        np.testing.assert_array_equal(once, twice)


def test_filter_output_always_legal():
    rng = np.random.default_rng(1)
    for _ in range(500):
        n = int(rng.integers(1, 80))
        raw = rng.normal(0.4, 0.8, size=n)
        out = apply_filter(raw)
        assert np.all(out >= 0.0)
        assert np.all(out <= 1.0)
        assert np.all(np.diff(out) <= 1e-15)


def test_first_entry_is_never_a_violation():
    out = apply_filter([0.2, 0.9, 0.1])
    assert out[0] == pytest.approx(0.2)
    np.testing.assert_allclose(out, [0.2, 0.15, 0.1])


def test_single_value_and_empty():
    np.testing.assert_allclose(apply_filter([0.7]), [0.7])
    np.testing.assert_allclose(apply_filter([1.9]), [1.0])
    assert apply_filter([]).size == 0


def test_bridge_interpolation_is_linear():
    # rise spanning three entries: straight line from 0.9 down to 0.1
    out = enforce_monotone([0.9, 0.95, 0.96, 0.97, 0.1])
    np.testing.assert_allclose(out, [0.9, 0.7, 0.5, 0.3, 0.1])


def test_monotone_preserves_dtype_and_length():
    raw = np.array([0.5, 0.6, 0.2], dtype=np.float32)
    out = enforce_monotone(raw)
    assert out.dtype == np.float64
    assert len(out) == 3
