"""Renderers: PGM and SVG space-time diagrams, matplotlib report figures,
and delimited (CSV) report tables.

PGM output is plain P2 with symbol index i mapped to gray level
floor(255 * i / (|alphabet| - 1)), row 0 = time 0; the format is fixed so
golden files compare bit-exactly.
"""

from __future__ import annotations

import csv
import io

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .ca import LocalRule, apply_rule
from .shifts import Alphabet, Configuration


def spacetime_rows(f: LocalRule, x: Configuration, steps: int, window):
    """Symbol-index rows of the orbit restricted to `window` cells."""
    rows = []
    y = x
    for _ in range(steps + 1):
        rows.append([f.alphabet.index(y.value(g)) for g in window])
        y = apply_rule(f, y)
    return rows


def gray_level(index, n_symbols):
    if n_symbols <= 1:
        return 0
    return (255 * index) // (n_symbols - 1)


def pgm_text(rows, n_symbols):
    """Plain (P2) PGM text; one image row per time step."""
    height = len(rows)
    width = len(rows[0]) if rows else 0
    lines = ["P2", f"{width} {height}", "255"]
    for row in rows:
        lines.append(" ".join(str(gray_level(v, n_symbols)) for v in row))
    return "\n".join(lines) + "\n"


def svg_text(rows, n_symbols, cell=8):
    height = len(rows)
    width = len(rows[0]) if rows else 0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width * cell}" height="{height * cell}">'
    ]
    for j, row in enumerate(rows):
        for i, v in enumerate(row):
            g = 255 - gray_level(v, n_symbols)
            parts.append(
                f'<rect x="{i * cell}" y="{j * cell}" width="{cell}" '
                f'height="{cell}" fill="rgb({g},{g},{g})"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_pgm(path, rows, n_symbols):
    with open(path, "w") as fh:
        fh.write(pgm_text(rows, n_symbols))


def write_svg(path, rows, n_symbols):
    with open(path, "w") as fh:
        fh.write(svg_text(rows, n_symbols))


def write_spacetime_png(path, rows, n_symbols, title=None):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.imshow(rows, cmap="Greys", interpolation="nearest",
              vmin=0, vmax=max(n_symbols - 1, 1), aspect="auto")
    ax.set_xlabel("cell")
    ax.set_ylabel("time")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_profile_png(path, profile, title="worst mortality time by radius"):
    radii = sorted(profile.entries)
    times = [profile.entries[r][0] for r in radii]
    alive = [profile.entries[r][2] for r in radii]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(radii, times, marker="o", label="max mortality steps")
    if any(alive):
        ax2 = ax.twinx()
        ax2.plot(radii, alive, marker="x", color="tab:red",
                 label="seeds alive at horizon")
        ax2.set_ylabel("alive seeds")
    ax.set_xlabel("support radius")
    ax.set_ylabel("steps")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_profile_csv(path, profile):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["radius", "max_mortality_steps", "exhaustive", "alive_seeds"])
        for r in sorted(profile.entries):
            worst, exhaustive, alive = profile.entries[r]
            w.writerow([r, worst, int(exhaustive), alive])


def write_report_csv(path, rows, header):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow(row)


def pattern_rows(pattern, alphabet: Alphabet, window):
    """Index rows of a 2D pattern on an iterable rectangle window, top
    row = highest y (screen orientation)."""
    cells = pattern.as_dict()
    ys = sorted({c[1] for c in window}, reverse=True)
    xs = sorted({c[0] for c in window})
    rows = []
    for y in ys:
        rows.append([alphabet.index(cells.get((x, y), alphabet.zero))
                     for x in xs])
    return rows
