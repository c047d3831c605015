"""Minimal SVG line charts rendered through a Jinja2 template."""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from jinja2 import Environment, FileSystemLoader, select_autoescape

from python.errors import InvalidParams

TEMPLATE_DIR = Path(__file__).resolve().parent / "templates"

_env = Environment(
    loader=FileSystemLoader(str(TEMPLATE_DIR)),
    autoescape=select_autoescape(enabled_extensions=("j2", "svg")),
    trim_blocks=True,
    lstrip_blocks=True,
)

CURVE_SERIES = [
    ("lower", "lower bound", "#1f4e9c", ""),
    ("upper", "upper bound", "#b3261e", ""),
    ("ref_kl", "1/(2n)", "#6b6b6b", "4 3"),
    ("ref_ar", "(p-1)/(pn)", "#2e7d32", "4 3"),
    ("ref_trivial", "1/n", "#000000", "1 3"),
]


@dataclass(frozen=True)
class Series:
    name: str
    xs: Sequence[float]
    ys: Sequence[float]
    color: str = "#000000"
    dash: str = ""


@dataclass(frozen=True)
class _Plot:
    left: float
    right: float
    top: float
    bottom: float


def _nice_step(span: float, target: int = 6) -> float:
    raw = span / max(target, 1)
    base = 10.0 ** math.floor(math.log10(raw))
    for m in (1.0, 2.0, 5.0, 10.0):
        if m * base >= raw:
            return m * base
    return 10.0 * base


def _linear_ticks(lo: float, hi: float) -> List[float]:
    step = _nice_step(hi - lo)
    start = math.ceil(lo / step) * step
    ticks = []
    v = start
    while v <= hi + 1e-9 * step:
        ticks.append(round(v, 12))
        v += step
    return ticks


def _log_ticks(lo: float, hi: float) -> List[float]:
    ticks = [10.0 ** k for k in range(math.floor(math.log10(lo)), math.ceil(math.log10(hi)) + 1)
             if lo * (1 - 1e-12) <= 10.0 ** k <= hi * (1 + 1e-12)]
    if len(ticks) < 2:
        # less than a decade
        ticks = [t for t in _linear_ticks(lo, hi) if t > 0.0]
    return ticks


def _label(v: float) -> str:
    return format(v, "g")


def render_line_chart(title: str,
                      x_label: str,
                      y_label: str,
                      series: Sequence[Series],
                      loglog: bool = False,
                      width: int = 720,
                      height: int = 480) -> str:
    """Render series as polylines; in log-log mode points with x <= 0 or y <= 0 are dropped."""
    kept = []
    for s in series:
        pts = [(float(x), float(y)) for x, y in zip(s.xs, s.ys) if math.isfinite(x) and math.isfinite(y)]
        if loglog:
            pts = [(x, y) for x, y in pts if x > 0.0 and y > 0.0]
        if pts:
            kept.append((s, pts))
    if not kept:
        raise InvalidParams("nothing to plot")

    xs = [x for _, pts in kept for x, _ in pts]
    ys = [y for _, pts in kept for _, y in pts]
    tf = math.log10 if loglog else (lambda v: v)
    x_lo, x_hi = tf(min(xs)), tf(max(xs))
    y_lo, y_hi = tf(min(ys)), tf(max(ys))
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    if not loglog:
        y_lo = min(y_lo, 0.0)

    plot = _Plot(left=70.0, right=width - 20.0, top=40.0, bottom=height - 50.0)

    def px(v: float) -> float:
        return plot.left + (tf(v) - x_lo) / (x_hi - x_lo) * (plot.right - plot.left)

    def py(v: float) -> float:
        return plot.bottom - (tf(v) - y_lo) / (y_hi - y_lo) * (plot.bottom - plot.top)

    if loglog:
        x_ticks = _log_ticks(10.0 ** x_lo, 10.0 ** x_hi)
        y_ticks = _log_ticks(10.0 ** y_lo, 10.0 ** y_hi)
    else:
        x_ticks = _linear_ticks(x_lo, x_hi)
        y_ticks = _linear_ticks(y_lo, y_hi)

    template = _env.get_template("bound_chart.svg.j2")
    return template.render(
        title=title,
        x_label=x_label,
        y_label=y_label,
        width=width,
        height=height,
        plot=plot,
        x_ticks=[{"pos": px(t), "label": _label(t)} for t in x_ticks],
        y_ticks=[{"pos": py(t), "label": _label(t)} for t in y_ticks],
        series=[
            {
                "name": s.name,
                "color": s.color,
                "dash": s.dash,
                "points": " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in pts),
            }
            for s, pts in kept
        ],
    )


def curve_series(rows: List[Dict[str, float]]) -> List[Series]:
    xs = [r["x"] for r in rows]
    return [Series(label, xs, [r[key] for r in rows], color, dash) for key, label, color, dash in CURVE_SERIES]


def write_curve_chart(path: str | Path,
                      rows: List[Dict[str, float]],
                      vary: str,
                      fixed: float,
                      loglog: bool = False,
                      title: Optional[str] = None) -> Path:
    other = "p" if vary == "n" else "n"
    svg = render_line_chart(
        title or f"Brunn-Minkowski exponent bounds, {other} = {fixed:g}",
        vary,
        "exponent",
        curve_series(rows),
        loglog=loglog,
    )
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(svg, encoding="utf-8")
    return out
