"""Legality filter for predicted robustness curves.

Raw network outputs are unconstrained floats, but a removal curve must live
in [0, 1] and never rise as more nodes are deleted.  The repair used here is
the same contract the simulation side applies to its own curves: clamp first,
then replace every ascending stretch with a straight line down to the next
value that is already low enough, flattening the tail when nothing below the
last good value remains.
"""

from __future__ import annotations

import numpy as np


def enforce_curve_legality(values):
    """Return a clamped, non-increasing copy of ``values`` as float64.

    The input is any 1-D sequence of floats.  Applying the filter twice gives
    the same result as applying it once.
    """
    curve = np.asarray(values, dtype=np.float64).copy()
    if curve.ndim != 1:
        raise ValueError("expected a 1-D curve")
    if curve.size == 0:
        return curve
    np.clip(curve, 0.0, 1.0, out=curve)

    i = 1
    while i < curve.size:
        anchor = curve[i - 1]
        if curve[i] <= anchor:
            i += 1
            continue
        # Ascending stretch: look for the next point at or below the anchor.
        j = i + 1
        while j < curve.size and curve[j] > anchor:
            j += 1
        if j == curve.size:
            curve[i:] = anchor
            break
        # Bridge positions i..j-1 linearly between the anchor and curve[j].
        span = j - (i - 1)
        for k in range(i, j):
            t = (k - (i - 1)) / span
            curve[k] = anchor + t * (curve[j] - anchor)
        i = j + 1
    return curve
