"""Minimal SVG line plots for attack curves.

Hand-rolled on purpose: the plots are simple enough (unit square axes,
a handful of polylines, a legend) that emitting SVG text directly keeps
the CLI free of plotting-stack dependencies and keeps output bytes
deterministic.
"""

_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    "#aec7e8", "#ffbb78",
)

_W, _H = 720, 480
_ML, _MR, _MT, _MB = 64, 24, 40, 52


def _x(p):
    return _ML + p * (_W - _ML - _MR)


def _y(v):
    return _H - _MB - v * (_H - _MT - _MB)


def curve_plot_svg(curves, path, title="attack curves") -> None:
    """Overlay relative curves on a unit square.

    ``curves`` is a list of (label, values, annotation) triples; values
    are relative GCC sizes indexed by removal step, plotted against the
    removed fraction.  Annotations land in the legend.
    """
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
    ]
    # axes and ticks
    parts.append(
        f'<line x1="{_x(0):.1f}" y1="{_y(0):.1f}" x2="{_x(1):.1f}" '
        f'y2="{_y(0):.1f}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{_x(0):.1f}" y1="{_y(0):.1f}" x2="{_x(0):.1f}" '
        f'y2="{_y(1):.1f}" stroke="black"/>'
    )
    for t in range(0, 11, 2):
        v = t / 10
        parts.append(
            f'<line x1="{_x(v):.1f}" y1="{_y(0):.1f}" x2="{_x(v):.1f}" '
            f'y2="{_y(0) + 5:.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_x(v):.1f}" y="{_y(0) + 20:.1f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{v:.1f}</text>'
        )
        parts.append(
            f'<line x1="{_x(0) - 5:.1f}" y1="{_y(v):.1f}" x2="{_x(0):.1f}" '
            f'y2="{_y(v):.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_x(0) - 9:.1f}" y="{_y(v) + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{v:.1f}</text>'
        )
    parts.append(
        f'<text x="{(_x(0) + _x(1)) / 2:.1f}" y="{_H - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">removed fraction</text>'
    )
    parts.append(
        f'<text x="16" y="{(_y(0) + _y(1)) / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {(_y(0) + _y(1)) / 2:.1f})">relative GCC</text>'
    )
    for ci, (label, values, note) in enumerate(curves):
        color = _PALETTE[ci % len(_PALETTE)]
        n = len(values)
        pts = [f"{_x(0):.2f},{_y(1):.2f}"] if n else []
        for i, v in enumerate(values, start=1):
            pts.append(f"{_x(i / n):.2f},{_y(max(0.0, min(1.0, float(v)))):.2f}")
        parts.append(
            f'<polyline points="{" ".join(pts)}" fill="none" '
            f'stroke="{color}" stroke-width="1.6"/>'
        )
        ly = _MT + 16 + 16 * ci
        lx = _W - _MR - 210
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        text = label if not note else f"{label} ({note})"
        parts.append(
            f'<text x="{lx + 28}" y="{ly}" font-family="sans-serif" '
            f'font-size="11">{text}</text>'
        )
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")
