"""External file formats: palette and graph documents, grid CSV, SVG.

Palette and edge-list files share one line-oriented key-value grammar:

* UTF-8 text, one ``key: value`` pair per line;
* blank lines and lines starting with ``#`` are ignored;
* keys may repeat and order is preserved (``edge`` / ``color`` lines).

A graph document lists the region count and its edges::

    format: graph/1
    n: 5
    edge: 0 1
    edge: 1 4

A palette document records one run's result.  Coordinates are written with
``repr`` so they parse back bit-exactly; the sRGB rendering is always
present (Lab palettes convert via the clamped inverse after projection)::

    format: palette/1
    space: lab
    seed: 7
    quality: 3.0832120581e-07
    color: 0 | 32.30 79.19 -107.85 | #0000FF | label=6

The ``label=`` field carries the original region label when the palette
came from a grid, and is omitted otherwise.

Grid files are plain comma-separated integer labels, one grid row per
line, no header.  SVG output is version 1.1 with one ``cell_px`` square
``<rect>`` per grid cell, filled with the region's palette hex color.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .colorspace import (ColorPoint, Space, gamut_for_space, lab_to_srgb,
                         project_to_gamut, srgb_hex)
from .quality import Coloring
from .regiongraph import GridPartition, RegionGraph, from_edge_list

_HEX_RE = re.compile(r"^#[0-9A-F]{6}$")


@dataclass(frozen=True)
class PaletteEntry:
    region: int
    coords: tuple[float, float, float]
    srgb_hex: str
    original_label: Optional[int] = None

    def __post_init__(self) -> None:
        if not _HEX_RE.match(self.srgb_hex):
            raise ValueError(f"bad hex color {self.srgb_hex!r}")


@dataclass(frozen=True)
class PaletteDocument:
    space: Space
    seed: int
    quality: float
    entries: tuple[PaletteEntry, ...]

    def __post_init__(self) -> None:
        regions = [e.region for e in self.entries]
        if regions != list(range(len(regions))) or not regions:
            raise ValueError("palette entries must cover regions 0..n-1 in order")

    @property
    def n(self) -> int:
        return len(self.entries)

    def coloring(self) -> Coloring:
        return Coloring(self.space, np.array([e.coords for e in self.entries]))

    def hex_for_label(self) -> dict[int, str]:
        return {e.original_label: e.srgb_hex for e in self.entries
                if e.original_label is not None}


def palette_from_coloring(chi: Coloring, graph: RegionGraph, seed: int,
                          quality_value: float) -> PaletteDocument:
    """Build the palette document for a finished run.  Lab colors get their
    sRGB rendering through the clamped inverse (colors are in the hull
    after optimization, but parts of the hull overshoot the sRGB cube)."""
    if chi.n != graph.n:
        raise ValueError(f"coloring has {chi.n} points for {graph.n} regions")
    entries = []
    for i, row in enumerate(chi.coords):
        point = ColorPoint(chi.space, row)
        if chi.space is Space.SRGB:
            rendered = point
        else:
            rendered = lab_to_srgb(project_to_gamut(gamut_for_space(Space.LAB), point),
                                   clamp=True)
        label = None if graph.region_ids is None else graph.region_ids[i]
        entries.append(PaletteEntry(region=i,
                                    coords=tuple(float(v) for v in row),
                                    srgb_hex=srgb_hex(rendered),
                                    original_label=label))
    return PaletteDocument(space=chi.space, seed=seed,
                           quality=float(quality_value), entries=tuple(entries))


# ---------------------------------------------------------------------------
# key-value documents
# ---------------------------------------------------------------------------

def _parse_lines(text: str, path: str) -> list[tuple[str, str]]:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ValueError(f"{path}:{lineno}: expected 'key: value', got {raw!r}")
        pairs.append((key.strip(), value.strip()))
    return pairs


def _single(pairs: list[tuple[str, str]], key: str, path: str) -> str:
    values = [v for k, v in pairs if k == key]
    if len(values) != 1:
        raise ValueError(f"{path}: expected exactly one {key!r} line, found {len(values)}")
    return values[0]


def write_palette(doc: PaletteDocument, path: str) -> None:
    lines = ["format: palette/1",
             f"space: {doc.space.value}",
             f"seed: {doc.seed}",
             f"quality: {doc.quality!r}"]
    for e in doc.entries:
        coords = " ".join(repr(v) for v in e.coords)
        line = f"color: {e.region} | {coords} | {e.srgb_hex}"
        if e.original_label is not None:
            line += f" | label={e.original_label}"
        lines.append(line)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_palette(path: str) -> PaletteDocument:
    with open(path, encoding="utf-8") as fh:
        pairs = _parse_lines(fh.read(), path)
    if _single(pairs, "format", path) != "palette/1":
        raise ValueError(f"{path}: not a palette/1 document")
    space = Space(_single(pairs, "space", path))
    seed = int(_single(pairs, "seed", path))
    quality_value = float(_single(pairs, "quality", path))
    entries = []
    for key, value in pairs:
        if key != "color":
            continue
        fields = [f.strip() for f in value.split("|")]
        if len(fields) not in (3, 4):
            raise ValueError(f"{path}: malformed color line {value!r}")
        region = int(fields[0])
        coords = tuple(float(v) for v in fields[1].split())
        if len(coords) != 3:
            raise ValueError(f"{path}: expected 3 coordinates in {value!r}")
        label = None
        if len(fields) == 4:
            if not fields[3].startswith("label="):
                raise ValueError(f"{path}: malformed color line {value!r}")
            label = int(fields[3][len("label="):])
        entries.append(PaletteEntry(region=region, coords=coords,
                                    srgb_hex=fields[2], original_label=label))
    return PaletteDocument(space=space, seed=seed, quality=quality_value,
                           entries=tuple(entries))


def write_edge_list(graph: RegionGraph, path: str) -> None:
    lines = ["format: graph/1", f"n: {graph.n}"]
    lines += [f"edge: {i} {j}" for i, j in graph.edges]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_edge_list(path: str) -> RegionGraph:
    with open(path, encoding="utf-8") as fh:
        pairs = _parse_lines(fh.read(), path)
    if _single(pairs, "format", path) != "graph/1":
        raise ValueError(f"{path}: not a graph/1 document")
    n = int(_single(pairs, "n", path))
    edges = []
    for key, value in pairs:
        if key != "edge":
            continue
        parts = value.split()
        if len(parts) != 2:
            raise ValueError(f"{path}: malformed edge line {value!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return from_edge_list(n, edges)


def read_grid(path: str) -> GridPartition:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                rows.append([int(cell) for cell in line.split(",")])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: non-integer grid cell") from exc
    if not rows:
        raise ValueError(f"{path}: empty grid file")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError(f"{path}: ragged grid rows")
    return GridPartition(np.array(rows, dtype=np.int64))


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------

def render_grid_svg(grid: GridPartition, doc: PaletteDocument,
                    cell_px: int = 20, stroke: bool = False) -> str:
    """SVG 1.1 document: one filled square per grid cell."""
    fills = doc.hex_for_label()
    missing = set(int(v) for v in np.unique(grid.labels)) - set(fills)
    if missing:
        raise ValueError(f"palette has no colors for grid labels {sorted(missing)}")
    width = grid.cols * cell_px
    height = grid.rows * cell_px
    stroke_attr = ' stroke="black" stroke-width="1"' if stroke else ""
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'width="{width}" height="{height}">']
    for r in range(grid.rows):
        for c in range(grid.cols):
            fill = fills[int(grid.labels[r, c])]
            out.append(f'<rect x="{c * cell_px}" y="{r * cell_px}" '
                       f'width="{cell_px}" height="{cell_px}" '
                       f'fill="{fill}"{stroke_attr}/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
