"""regioncolors: maximally distinct colors for the regions of a map.

The library embeds a region graph into a color space (the sRGB cube or the
Lab hull of its extreme colors) and minimizes a repulsive quality measure
by seeded hill climbing, so adjacent regions end up with strongly
dissimilar colors and all regions stay visually distinct.
"""

from ._kernels import USING_NUMBA
from .colorspace import (ColorPoint, Gamut, Space, contains, distance,
                         gamut_for_space, lab_to_srgb, make_lab_gamut,
                         make_srgb_gamut, project_to_gamut, srgb_hex,
                         srgb_to_lab)
from .formats import (PaletteDocument, PaletteEntry, palette_from_coloring,
                      read_edge_list, read_grid, read_palette,
                      render_grid_svg, write_edge_list, write_palette)
from .optimizer import (OptimizerConfig, RunReport, init_random, iterate,
                        optimize, optimize_multistart, random_baseline)
from .quality import Coloring, gradient, quality
from .regiongraph import (GridPartition, RegionGraph, degree_stats,
                          from_edge_list, from_grid)

__version__ = "0.1.0"

__all__ = [
    "USING_NUMBA",
    "ColorPoint", "Gamut", "Space", "contains", "distance", "gamut_for_space",
    "lab_to_srgb", "make_lab_gamut", "make_srgb_gamut", "project_to_gamut",
    "srgb_hex", "srgb_to_lab",
    "PaletteDocument", "PaletteEntry", "palette_from_coloring",
    "read_edge_list", "read_grid", "read_palette", "render_grid_svg",
    "write_edge_list", "write_palette",
    "OptimizerConfig", "RunReport", "init_random", "iterate", "optimize",
    "optimize_multistart", "random_baseline",
    "Coloring", "gradient", "quality",
    "GridPartition", "RegionGraph", "degree_stats", "from_edge_list", "from_grid",
]
