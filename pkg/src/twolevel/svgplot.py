"""Standalone SVG line plots of sweep quantities."""

from __future__ import annotations

import math
from collections.abc import Sequence
from xml.sax.saxutils import escape

from .export import EmptyInput
from .scenario import SweepScenario
from .sweep import SweepRecord

QUANTITIES = (
    "energies", "widths", "rigidity", "one_minus_rigidity", "mixing", "alignment", "source_term",
)

WIDTH, HEIGHT = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 72, 150, 36, 52
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e")

_TITLES = {
    "energies": "Energies E_i",
    "widths": "Widths Gamma_i/2",
    "rigidity": "Phase rigidity r_i",
    "one_minus_rigidity": "1 - r_i",
    "mixing": "Mixing coefficients |b_ij|",
    "alignment": "EP phase alignment",
    "source_term": "Nonlinear source magnitude",
}

# these diverge at a coalescence; the frame is cut at a robust upper bound
_DIVERGING = {"mixing", "source_term"}


def _series(records: Sequence[SweepRecord], quantity: str) -> list[tuple[str, list[float]]]:
    def col(name):
        return [float(getattr(r, name)) for r in records]

    if quantity == "energies":
        return [("E1", col("E1")), ("E2", col("E2"))]
    if quantity == "widths":
        return [("Gamma1/2", col("G1_half")), ("Gamma2/2", col("G2_half"))]
    if quantity == "rigidity":
        return [("r1", col("r1")), ("r2", col("r2"))]
    if quantity == "one_minus_rigidity":
        return [("1-r1", col("one_minus_r1")), ("1-r2", col("one_minus_r2"))]
    if quantity == "mixing":
        return [(f"|b{ij}|", col(f"abs_b{ij}")) for ij in ("11", "12", "21", "22")]
    if quantity == "alignment":
        return [("alignment", col("ep_alignment"))]
    if quantity == "source_term":
        return [("N1", col("nl_mag1")), ("N2", col("nl_mag2"))]
    raise ValueError(f"unknown quantity {quantity!r}; choose from {', '.join(QUANTITIES)}")


def _overlays(records, quantity, scenario) -> list[tuple[str, list[float]]]:
    if scenario is None:
        return []
    a = [r.a for r in records]
    if quantity == "energies":
        lines = [("e1(a)", [scenario.e1_at(x) for x in a]), ("e2(a)", [scenario.e2_at(x) for x in a])]
    elif quantity == "widths":
        lines = [
            ("gamma1(a)/2", [0.5 * scenario.gamma1_at(x) for x in a]),
            ("gamma2(a)/2", [0.5 * scenario.gamma2_at(x) for x in a]),
        ]
    else:
        return []
    if lines[0][1] == lines[1][1]:
        return [(lines[0][0].replace("1", "i"), lines[0][1])]
    return lines


def nice_ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    span = hi - lo
    raw = span / max(n, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


def _percentile(values: list[float], q: float) -> float:
    s = sorted(values)
    k = (len(s) - 1) * q
    f = math.floor(k)
    c = min(f + 1, len(s) - 1)
    return s[f] + (s[c] - s[f]) * (k - f)


def _y_range(quantity, series, overlays, flags) -> tuple[float, float]:
    if quantity in ("rigidity", "one_minus_rigidity"):
        return 0.0, 1.05
    values = [v for _, ys in series for v, f in zip(ys, flags) if not f and math.isfinite(v)]
    values += [v for _, ys in overlays for v in ys]
    if not values:
        return 0.0, 1.0
    lo, hi = min(values), max(values)
    if quantity in _DIVERGING and len(values) > 4:
        hi = min(hi, 1.5 * _percentile(values, 0.95))
        lo = min(lo, 0.0)
    if hi - lo < 1e-12 * max(1.0, abs(hi)):
        pad = 0.5 if hi == 0 else 0.1 * abs(hi)
        return lo - pad, hi + pad
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _tick_label(t: float) -> str:
    return f"{t:.6g}"


def emit_svg(
    records: Sequence[SweepRecord], quantity: str, scenario: SweepScenario | None = None
) -> str:
    """SVG plot of ``quantity`` versus ``a``: one polyline per branch.

    Dashed polylines show the unperturbed e_i(a) or gamma_i(a)/2 when a
    scenario is given.  Points at a flagged coalescence, and values outside
    the frame, are clamped to the frame edge; flagged ones get a marker.
    """
    if not records:
        raise EmptyInput("no records to plot")
    series = _series(records, quantity)
    overlays = _overlays(records, quantity, scenario)
    flags = [r.at_ep for r in records]
    xs = [r.a for r in records]

    x_lo, x_hi = min(xs), max(xs)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    y_lo, y_hi = _y_range(quantity, series, overlays, flags)

    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def px(x):
        return LEFT + (x - x_lo) / (x_hi - x_lo) * pw

    def py(y):
        y = min(max(y, y_lo), y_hi) if math.isfinite(y) else y_hi
        return TOP + (y_hi - y) / (y_hi - y_lo) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<title>{escape(_TITLES[quantity])}</title>',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{LEFT}" y="{TOP - 14}" font-size="14">{escape(_TITLES[quantity])}</text>',
        f'<rect class="frame" x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" '
        'fill="none" stroke="black"/>',
    ]

    for t in nice_ticks(x_lo, x_hi):
        x = _fmt(px(t))
        out.append(f'<line class="xtick" x1="{x}" y1="{TOP + ph}" x2="{x}" y2="{TOP + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{x}" y="{TOP + ph + 19}" text-anchor="middle">{_tick_label(t)}</text>')
    for t in nice_ticks(y_lo, y_hi):
        y = _fmt(py(t))
        out.append(f'<line class="ytick" x1="{LEFT - 5}" y1="{y}" x2="{LEFT}" y2="{y}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{y}" text-anchor="end" dominant-baseline="middle">{_tick_label(t)}</text>')
    out.append(f'<text x="{LEFT + pw / 2:.2f}" y="{HEIGHT - 12}" text-anchor="middle">a</text>')

    single = len(records) == 1
    legend = []
    for k, (label, ys) in enumerate(series):
        color = COLORS[k % len(COLORS)]
        pts = [(px(x), py(y)) for x, y in zip(xs, ys)]
        if single:
            x, y = pts[0]
            out.append(f'<circle class="point" cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="{color}"/>')
        else:
            coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
            out.append(
                f'<polyline class="branch" data-label="{escape(label)}" fill="none" '
                f'stroke="{color}" stroke-width="1.5" points="{coords}"/>'
            )
        for (x, y), flag in zip(pts, flags):
            if flag:
                out.append(
                    f'<circle class="ep-marker" cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" '
                    'fill="none" stroke="black"/>'
                )
        legend.append((label, color, ""))

    for label, ys in overlays:
        coords = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(xs, ys))
        if single:
            continue
        out.append(
            f'<polyline class="overlay" data-label="{escape(label)}" fill="none" '
            f'stroke="gray" stroke-width="1" stroke-dasharray="5,4" points="{coords}"/>'
        )
        legend.append((label, "gray", ' stroke-dasharray="5,4"'))

    lx = LEFT + pw + 14
    for k, (label, color, dash) in enumerate(legend):
        y = TOP + 10 + 18 * k
        out.append(f'<line x1="{lx}" y1="{y}" x2="{lx + 22}" y2="{y}" stroke="{color}" stroke-width="1.5"{dash}/>')
        out.append(f'<text x="{lx + 28}" y="{y}" dominant-baseline="middle">{escape(label)}</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
