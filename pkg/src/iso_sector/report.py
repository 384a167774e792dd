"""Deterministic delimited, JSON, and figure output.

All writers aim for byte stability: floats are formatted with 17
significant digits (round-trip exact), line endings are LF, JSON key
order is the insertion order of the payload dicts, and SVG rendering pins
the matplotlib id hash salt while stripping the date header.  Rendering
uses the Agg backend so everything works headless.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

__all__ = [
    "format_value",
    "csv_bytes",
    "write_csv",
    "json_bytes",
    "write_json",
    "save_figure",
    "plot_sector_curves",
    "plot_phase_table",
    "plot_period_curve",
    "plot_disk_winners",
    "plot_transition_curves",
    "plot_demo_rows",
]

SCHEMA = "iso-sector/1"

_RC = {
    "svg.hashsalt": "iso-sector",
    "svg.fonttype": "none",
    "path.simplify": False,
    "figure.max_open_warning": 0,
}


def format_value(value) -> str:
    """One CSV cell: shortest-faithful text for floats, plain text else."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    text = str(value)
    if any(ch in text for ch in ",\"\n"):
        return '"' + text.replace('"', '""') + '"'
    return text


def csv_bytes(header: Sequence[str], rows: Iterable[Sequence]) -> bytes:
    lines = [",".join(header)]
    lines.extend(",".join(format_value(cell) for cell in row) for row in rows)
    return ("\n".join(lines) + "\n").encode("utf-8")


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.write_bytes(csv_bytes(header, rows))
    return path


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    return obj


def json_bytes(payload: dict) -> bytes:
    body = {"schema": SCHEMA}
    body.update(_jsonable(payload))
    return (json.dumps(body, indent=2, allow_nan=False) + "\n").encode("utf-8")


def write_json(path, payload: dict) -> Path:
    path = Path(path)
    path.write_bytes(json_bytes(payload))
    return path


def save_figure(fig, path) -> Path:
    """Write a figure as deterministic SVG 1.1 and close it."""
    path = Path(path)
    with plt.rc_context(_RC):
        fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def _dense(theta: np.ndarray, radius: np.ndarray, min_pts: int = 512
           ) -> tuple[np.ndarray, np.ndarray]:
    if theta.size >= min_pts:
        return theta, radius
    fine = np.linspace(theta[0], theta[-1], min_pts)
    return fine, np.interp(fine, theta, radius)


def plot_sector_curves(path, theta0: float,
                       curves: Sequence[tuple[np.ndarray, np.ndarray, str]],
                       title: str) -> Path:
    """Polar curves drawn in the plane with the sector wedge outline."""
    fig, ax = plt.subplots(figsize=(6.0, 5.0))
    r_max = 1.0
    for theta, radius, label in curves:
        theta, radius = _dense(np.asarray(theta, float), np.asarray(radius, float))
        ax.plot(radius * np.cos(theta), radius * np.sin(theta), label=label,
                linewidth=1.4)
        r_max = max(r_max, float(np.max(radius)))
    edge = 1.12 * r_max
    ax.plot([0.0, edge], [0.0, 0.0], color="0.35", linewidth=0.9)
    ax.plot([0.0, edge * math.cos(theta0)], [0.0, edge * math.sin(theta0)],
            color="0.35", linewidth=0.9)
    wedge = np.linspace(0.0, theta0, 512)
    ax.plot(edge * np.cos(wedge), edge * np.sin(wedge), color="0.35",
            linewidth=0.9, linestyle="--")
    ax.set_aspect("equal")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return save_figure(fig, path)


_TAG_COLORS = {
    "arc": "#1f77b4",
    "semicircle": "#d62728",
    "undulary": "#2ca02c",
    "arc-inside": "#1f77b4",
    "arc-enclosing": "#9467bd",
    "annulus": "#8c564b",
    "edge-semicircle": "#d62728",
    "bite-crescent": "#2ca02c",
    "bite-complement": "#ff7f0e",
}


def plot_phase_table(path, rows: Sequence[tuple], title: str) -> Path:
    """Winner regions over (theta0, p) from classification table rows."""
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    seen = []
    for row in rows:
        p, theta0, winner = row[0], row[1], row[2]
        color = _TAG_COLORS.get(winner, "0.5")
        label = winner if winner not in seen else None
        if label:
            seen.append(winner)
        ax.scatter([theta0], [p], c=color, s=14, label=label, linewidths=0)
    ax.set_xlabel("opening theta0")
    ax.set_ylabel("density exponent p")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return save_figure(fig, path)


def plot_period_curve(path, r1: np.ndarray, period: np.ndarray,
                      low: float, high: float, title: str) -> Path:
    """Half period against the outer radius with its two limits."""
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    r1, period = _dense(np.asarray(r1, float), np.asarray(period, float))
    ax.semilogx(r1 - 1.0, period, linewidth=1.4, label="half period")
    ax.axhline(low, color="0.4", linewidth=0.9, linestyle="--",
               label="inner-radius limit")
    ax.axhline(high, color="0.4", linewidth=0.9, linestyle=":",
               label="large-radius limit")
    ax.set_xlabel("r1 - 1")
    ax.set_ylabel("half period")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return save_figure(fig, path)


def plot_disk_winners(path, rows: Sequence[tuple], title: str) -> Path:
    """Winning weighted perimeter against area with winner color coding."""
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    areas = np.array([row[0] for row in rows], dtype=float)
    perims = np.array([row[2] for row in rows], dtype=float)
    tags = [row[1] for row in rows]
    fine_a = np.linspace(areas[0], areas[-1], max(512, areas.size))
    ax.plot(fine_a, np.interp(fine_a, areas, perims), color="0.75",
            linewidth=1.0, zorder=1)
    seen = []
    for area, perim, tag in zip(areas, perims, tags):
        label = tag if tag not in seen else None
        if label:
            seen.append(tag)
        ax.scatter([area], [perim], c=_TAG_COLORS.get(tag, "0.5"), s=12,
                   label=label, linewidths=0, zorder=2)
    ax.set_xlabel("weighted area")
    ax.set_ylabel("winning weighted perimeter")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return save_figure(fig, path)


def plot_transition_curves(path, rows: Sequence[tuple], title: str) -> Path:
    """Small-area and near-full-area handover openings against density."""
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    a = np.array([row[0] for row in rows], dtype=float)
    f_curve = np.array([row[1] for row in rows], dtype=float)
    g_curve = np.array([row[2] for row in rows], dtype=float)
    fa, ff = _dense(a, f_curve)
    _, gg = _dense(a, g_curve)
    ax.plot(fa, ff, linewidth=1.4, label="tiny-area tie pi/a")
    ax.plot(fa, gg, linewidth=1.4, label="bite overtakes annulus")
    ax.set_xlabel("disk density a")
    ax.set_ylabel("opening theta0")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return save_figure(fig, path)


def plot_demo_rows(path, rows: Sequence[tuple], title: str) -> Path:
    """Weighted surface decay along the vanishing-perimeter construction."""
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    radius = np.array([row[0] for row in rows], dtype=float)
    surface = np.array([row[3] for row in rows], dtype=float)
    fr, fs = _dense(radius, surface)
    ax.loglog(fr, fs, linewidth=1.4, marker="o", markersize=3)
    ax.set_xlabel("ball radius")
    ax.set_ylabel("weighted surface")
    ax.set_title(title)
    fig.tight_layout()
    return save_figure(fig, path)
