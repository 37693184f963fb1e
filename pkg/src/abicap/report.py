"""CSV time series and SVG line charts.

All output is byte-deterministic: fixed-point formatting with six decimals,
``\\n`` line endings, UTF-8, no timestamps.
"""

from __future__ import annotations

import csv
import io
import math
import os
from pathlib import Path
from typing import IO, NamedTuple, Optional, Sequence, Union
from xml.sax.saxutils import escape

from .engine import RunResult, aggregate

Destination = Union[str, os.PathLike, IO[bytes], None]

TIMESERIES_HEADER = ("scenario", "condition", "step", "mean_knowledge", "sd_knowledge", "n_agents")
MASTERY_HEADER = ("step", "agent_id", "node", "mastery")


class TimeSeriesRow(NamedTuple):
    scenario: str
    condition: str
    step: int
    mean_knowledge: float
    sd_knowledge: float
    n_agents: int


def _fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _emit(payload: bytes, destination: Destination) -> bytes:
    if destination is None:
        return payload
    if hasattr(destination, "write"):
        destination.write(payload)
    else:
        Path(destination).write_bytes(payload)
    return payload


def timeseries_rows(result: RunResult) -> list[TimeSeriesRow]:
    if not result.conditions:
        return []
    return [
        TimeSeriesRow(result.scenario, r.condition, r.step, r.mean, r.sd, r.n)
        for r in aggregate(result)
    ]


def write_timeseries_csv(result: RunResult, destination: Destination = None) -> bytes:
    """One row per (condition, step); returns the bytes written."""
    lines = [",".join(TIMESERIES_HEADER)]
    for r in timeseries_rows(result):
        lines.append(
            f"{r.scenario},{r.condition},{r.step},"
            f"{_fmt(r.mean_knowledge)},{_fmt(r.sd_knowledge)},{r.n_agents}"
        )
    return _emit(("\n".join(lines) + "\n").encode("utf-8"), destination)


def write_mastery_csv(result: RunResult, destination: Destination = None) -> bytes:
    """Raw mastery of every tracked node, per step and learner.

    Rows are ordered by condition (sorted), then step, agent and node. The
    condition name is not a column; multi-condition traces repeat steps.
    """
    traced = [c for _, c in sorted(result.conditions.items()) if c.mastery_trace is not None]
    if not traced:
        raise ValueError(f"scenario {result.scenario!r} recorded no mastery traces")
    lines = [",".join(MASTERY_HEADER)]
    for cond in traced:
        n_steps, n_agents, _ = cond.mastery_trace.shape
        for t in range(n_steps):
            for a in range(n_agents):
                for k, node in enumerate(cond.track_nodes):
                    lines.append(f"{t + 1},{a},{node},{_fmt(cond.mastery_trace[t, a, k])}")
    return _emit(("\n".join(lines) + "\n").encode("utf-8"), destination)


def read_timeseries_csv(source: Union[str, os.PathLike, bytes]) -> list[TimeSeriesRow]:
    text = source.decode("utf-8") if isinstance(source, bytes) else Path(source).read_text("utf-8")
    reader = csv.DictReader(io.StringIO(text))
    return [
        TimeSeriesRow(
            row["scenario"],
            row["condition"],
            int(row["step"]),
            float(row["mean_knowledge"]),
            float(row["sd_knowledge"]),
            int(row["n_agents"]),
        )
        for row in reader
    ]


PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf", "#7f7f7f")


def _nice_step(span: float, target_ticks: int = 6) -> float:
    raw = span / target_ticks
    mag = 10.0 ** math.floor(math.log10(raw))
    for m in (1, 2, 5):
        if m * mag >= raw:
            return m * mag
    return 10 * mag


def render_line_chart(
    rows: Sequence[TimeSeriesRow],
    destination: Destination = None,
    title: Optional[str] = None,
    x_label: str = "step",
    y_label: str = "mean knowledge (KCs mastered)",
) -> bytes:
    """Self-contained SVG: one polyline per condition plus a legend."""
    if not rows:
        raise ValueError("no rows to plot")
    series: dict[str, list[tuple[int, float]]] = {}
    for r in rows:
        series.setdefault(r.condition, []).append((r.step, r.mean_knowledge))
    names = sorted(series)
    if title is None:
        title = rows[0].scenario

    width, height = 720, 440
    left, right, top, bottom = 70, 170, 50, 60
    pw, ph = width - left - right, height - top - bottom

    x_max = max(s for pts in series.values() for s, _ in pts)
    x_min = min(s for pts in series.values() for s, _ in pts)
    x_span = max(x_max - x_min, 1)
    y_top = max(max(v for pts in series.values() for _, v in pts), 1.0)
    y_tick = _nice_step(y_top)
    n_yticks = int(-(-y_top // y_tick))
    y_top = n_yticks * y_tick

    def px(step: float) -> float:
        return left + (step - x_min) / x_span * pw

    def py(value: float) -> float:
        return top + ph - value / y_top * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
        f'<text x="{left + pw / 2:.1f}" y="28" text-anchor="middle" font-size="16">{escape(title)}</text>',
    ]
    for k in range(n_yticks + 1):
        v = k * y_tick
        y = py(v)
        out.append(f'<line x1="{left}" y1="{y:.2f}" x2="{left + pw}" y2="{y:.2f}" stroke="#e0e0e0"/>')
        out.append(f'<text x="{left - 8}" y="{y + 4:.2f}" text-anchor="end" font-size="11">{v:g}</text>')
    x_tick = _nice_step(x_span, 8)
    s = x_tick * -(-x_min // x_tick)
    while s <= x_max:
        x = px(s)
        out.append(f'<line x1="{x:.2f}" y1="{top + ph}" x2="{x:.2f}" y2="{top + ph + 5}" stroke="#333333"/>')
        out.append(f'<text x="{x:.2f}" y="{top + ph + 18}" text-anchor="middle" font-size="11">{s:g}</text>')
        s += x_tick
    out.append(
        f'<polyline points="{left},{top} {left},{top + ph} {left + pw},{top + ph}" '
        'fill="none" stroke="#333333"/>'
    )
    out.append(
        f'<text x="{left + pw / 2:.1f}" y="{height - 18}" text-anchor="middle" font-size="12">{escape(x_label)}</text>'
    )
    out.append(
        f'<text x="18" y="{top + ph / 2:.1f}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 18 {top + ph / 2:.1f})">{escape(y_label)}</text>'
    )
    for idx, name in enumerate(names):
        color = PALETTE[idx % len(PALETTE)]
        label = escape(name, {'"': "&quot;"})
        pts = " ".join(f"{px(st):.2f},{py(v):.2f}" for st, v in sorted(series[name]))
        out.append(
            f'<polyline class="series" data-condition="{label}" points="{pts}" '
            f'fill="none" stroke="{color}" stroke-width="2"/>'
        )
        ly = top + 10 + idx * 20
        lx = left + pw + 16
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 22}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 28}" y="{ly + 4}" font-size="12">{label}</text>')
    out.append("</svg>")
    return _emit(("\n".join(out) + "\n").encode("utf-8"), destination)
