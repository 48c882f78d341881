"""Repairs for predicted robustness curves.

A legal relative attack curve lives in [0, 1] and never rises.  Model
output does neither reliably, so predictions pass through two repairs:
value clamping, then a monotone rebuild that bridges each rising run with
a straight line down to the next legal value.
"""

import numpy as np


def clamp(values) -> np.ndarray:
    """Clip every entry into [0, 1]."""
    arr = np.asarray(values, dtype=np.float64)
    return np.clip(arr, 0.0, 1.0)


def enforce_monotone(values) -> np.ndarray:
    """Rebuild rising runs so the sequence never increases.

    Scanning left to right, a violation starts at i when values[i]
    exceeds values[i-1].  The repair finds the first k > i whose value is
    back at or below values[i-1] and replaces entries i..k-1 with the
    straight line from values[i-1] down to values[k].  Without such a k
    the tail from i onward flattens to values[i-1].  The first entry has
    no predecessor and is never a violation.
    """
    out = np.asarray(values, dtype=np.float64).copy()
    n = len(out)
    i = 1
    while i < n:
        if out[i] <= out[i - 1]:
            i += 1
            continue
        base = out[i - 1]
        k = i + 1
        while k < n and out[k] > base:
            k += 1
        if k == n:
            out[i:] = base
            break
        span = k - (i - 1)
        drop = base - out[k]
        for j in range(i, k):
            out[j] = base - (j - (i - 1)) / span * drop
        i = k + 1
    return out


def apply_filter(values) -> np.ndarray:
    """Clamp into range, then enforce monotonicity.

    Idempotent: the output passes through unchanged, and a sequence that
    was already legal is returned as-is (up to float identity).
    """
    return enforce_monotone(clamp(values))
