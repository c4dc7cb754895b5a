"""Command-line interface.

Subcommands:

* ``optimize`` - run the hill climber on a graph or grid and write a palette
  (optionally an SVG rendering when the input is a grid);
* ``random``   - same I/O with the random baseline instead of optimization;
* ``convert``  - convert a single color between srgb and lab;
* ``report``   - distance and quality statistics for a palette against the
  graph or grid it was produced from.

Exit codes: 0 success, 1 internal error, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

import numpy as np

from . import formats, optimizer
from .colorspace import (ColorPoint, Space, gamut_for_space, lab_to_srgb,
                         srgb_to_lab)
from .quality import quality
from .regiongraph import RegionGraph, from_grid

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", help="edge-list document (graph/1 format)")
    p.add_argument("--grid", help="grid file of comma-separated integer labels")
    p.add_argument("--diag", action="store_true",
                   help="treat corner-adjacent grid cells as adjacent")
    p.add_argument("--space", choices=["srgb", "lab"], default="lab")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="palette output path")
    p.add_argument("--svg", help="SVG output path (grid input only)")
    p.add_argument("--cell-px", type=int, default=20, help="SVG cell size in pixels")
    p.add_argument("--stroke", action="store_true", help="draw cell borders in the SVG")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regioncolors",
        description="Assign maximally distinct colors to the regions of a "
                    "partitioned map by embedding its region graph in color space.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_opt = sub.add_parser("optimize", help="optimize a coloring for a region graph")
    _add_input_flags(p_opt)
    p_opt.add_argument("--step-init", type=float, default=0.1,
                       help="initial step as a fraction of the gamut diameter")
    p_opt.add_argument("--step-decay", type=float, default=0.5)
    p_opt.add_argument("--step-min", type=float, default=1e-4)
    p_opt.add_argument("--max-iters", type=int, default=10000)
    p_opt.add_argument("--restarts", type=int, default=1,
                       help="independent seeded runs; the best result is kept")

    p_rand = sub.add_parser("random", help="random-coloring baseline with the same I/O")
    _add_input_flags(p_rand)

    p_conv = sub.add_parser("convert", help="convert one color between spaces")
    p_conv.add_argument("--from", dest="src", choices=["srgb", "lab"], required=True)
    p_conv.add_argument("--to", dest="dst", choices=["srgb", "lab"], required=True)
    p_conv.add_argument("coords", nargs=3, type=float, metavar="C")

    p_rep = sub.add_parser("report", help="distance/quality statistics for a palette")
    p_rep.add_argument("--palette", required=True)
    p_rep.add_argument("--graph")
    p_rep.add_argument("--grid")
    p_rep.add_argument("--diag", action="store_true")
    return parser


def _load_graph(args) -> tuple[RegionGraph, Optional[formats.GridPartition]]:
    if bool(args.graph) == bool(args.grid):
        raise ValueError("exactly one of --graph or --grid is required")
    if args.graph:
        return formats.read_edge_list(args.graph), None
    grid = formats.read_grid(args.grid)
    return from_grid(grid, diagonal=args.diag), grid


def _write_outputs(args, doc: formats.PaletteDocument,
                   grid: Optional[formats.GridPartition]) -> None:
    formats.write_palette(doc, args.out)
    if args.svg:
        if grid is None:
            raise ValueError("--svg requires a --grid input")
        svg = formats.render_grid_svg(grid, doc, cell_px=args.cell_px,
                                      stroke=args.stroke)
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)


def cmd_optimize(args) -> int:
    graph, grid = _load_graph(args)
    space = Space(args.space)
    gamut = gamut_for_space(space)
    config = optimizer.OptimizerConfig(
        seed=args.seed,
        step_init_fraction=args.step_init,
        step_decay=args.step_decay,
        step_min_fraction=args.step_min,
        max_iterations=args.max_iters,
        space=space)
    chi, report, seed = optimizer.optimize_multistart(graph, gamut, config,
                                                      restarts=args.restarts)
    doc = formats.palette_from_coloring(chi, graph, seed, report.final_quality)
    _write_outputs(args, doc, grid)
    return EXIT_OK


def cmd_random(args) -> int:
    graph, grid = _load_graph(args)
    space = Space(args.space)
    gamut = gamut_for_space(space)
    chi = optimizer.random_baseline(graph, gamut, args.seed)
    q = quality(chi, graph, gamut)
    doc = formats.palette_from_coloring(chi, graph, args.seed, q)
    _write_outputs(args, doc, grid)
    return EXIT_OK


def cmd_convert(args) -> int:
    point = ColorPoint(Space(args.src), args.coords)
    if args.src == "srgb" and np.any((point.coords < 0) | (point.coords > 255)):
        raise ValueError(f"sRGB channels out of [0, 255]: {point.coords}")
    if args.src == args.dst:
        result = point
    elif args.src == "srgb":
        result = srgb_to_lab(point)
    else:
        result = lab_to_srgb(point)
    print(" ".join(f"{v:.4f}" for v in result.coords))
    return EXIT_OK


def cmd_report(args) -> int:
    doc = formats.read_palette(args.palette)
    graph, _ = _load_graph(args)
    if doc.n != graph.n:
        raise ValueError(f"palette has {doc.n} colors but the graph has "
                         f"{graph.n} regions")
    chi = doc.coloring()
    gamut = gamut_for_space(doc.space)
    q = quality(chi, graph, gamut)

    coords = chi.coords
    edges = graph.edges
    adj = np.array([np.linalg.norm(coords[i] - coords[j]) for i, j in edges])
    iu = np.triu_indices(graph.n, k=1)
    diffs = coords[iu[0]] - coords[iu[1]]
    allpairs = np.sqrt((diffs * diffs).sum(axis=1))

    print(f"regions: {graph.n}")
    print(f"edges: {len(edges)}")
    print(f"space: {doc.space.value}")
    print(f"min_adjacent_distance: {adj.min() if adj.size else float('nan')}")
    print(f"mean_adjacent_distance: {adj.mean() if adj.size else float('nan')}")
    print(f"min_pairwise_distance: {allpairs.min() if allpairs.size else float('nan')}")
    print(f"mean_pairwise_distance: {allpairs.mean() if allpairs.size else float('nan')}")
    print(f"quality: {q!r}")
    return EXIT_OK


_COMMANDS = {
    "optimize": cmd_optimize,
    "random": cmd_random,
    "convert": cmd_convert,
    "report": cmd_report,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
