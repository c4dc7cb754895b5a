"""The repulsion quality measure over a colored region graph.

For a coloring chi of an n-region graph inside a gamut of diameter delta,
with d_ij the Euclidean color distance between regions i and j:

    q(chi) = sum_i ( sum_{j != i} d_ij^-(D+1)
                     + (n^(1+1/D) / delta^D) * sum_{j in N_i} 1 / (d_ij |N_i|) )

with D = 3.  Smaller is better: every term grows as colors collide, so a
low q means adjacent regions are far apart and all regions are spread out.
Distances are floored at eps = 1e-9 * delta so q stays finite when random
initialization collides points; such clamped pairs contribute nothing to
the gradient (the direction is undefined at coincidence).

``gradient`` returns the improving direction -grad q per region, i.e. the
exact gradient of the full double sum: each unordered pair feeds both of
its endpoints' terms, so the all-pairs part carries 2(D+1)/d^(D+2) and an
edge carries (n^(1+1/D)/delta^D) (1/|N_i| + 1/|N_j|) / d^2, both along the
unit vector pointing away from the partner.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .colorspace import ColorPoint, Gamut, Space

DISTANCE_FLOOR_FRACTION = 1e-9


@dataclass(frozen=True, eq=False)
class Coloring:
    """A color per region: the optimization variable."""

    space: Space
    coords: np.ndarray  # (n, 3) float64

    def __post_init__(self) -> None:
        coords = np.array(self.coords, dtype=float, ndmin=2)
        if coords.ndim != 2 or coords.shape[1] != 3 or coords.shape[0] < 1:
            raise ValueError(f"coloring coords must be (n, 3), got {coords.shape}")
        if not np.all(np.isfinite(coords)):
            raise ValueError("coloring coords must be finite")
        coords.flags.writeable = False
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def points(self) -> tuple[ColorPoint, ...]:
        return tuple(ColorPoint(self.space, row) for row in self.coords)

    @classmethod
    def from_points(cls, points) -> "Coloring":
        points = list(points)
        if not points:
            raise ValueError("a coloring needs at least one point")
        space = points[0].space
        for p in points:
            if p.space is not space:
                raise ValueError("all points of a coloring must share one space")
        return cls(space, np.array([p.coords for p in points]))


def norm_constant(n: int, diameter: float) -> float:
    """The adjacency-term normalization n^(1+1/D) / diameter^D."""
    return float(n) ** (1.0 + 1.0 / _kernels.DIMENSION) / diameter ** _kernels.DIMENSION


def _check(chi: Coloring, graph, gamut: Gamut) -> None:
    if chi.n != graph.n:
        raise ValueError(f"coloring has {chi.n} points for {graph.n} regions")
    if chi.space is not gamut.space:
        raise ValueError(f"coloring space {chi.space.value} does not match "
                         f"gamut space {gamut.space.value}")


def quality(chi: Coloring, graph, gamut: Gamut) -> float:
    """Evaluate q(chi); 0 for a single region (empty sums)."""
    _check(chi, graph, gamut)
    indptr, indices = graph.csr
    return float(_kernels.quality_kernel(
        chi.coords, indptr, indices, graph.inv_degree,
        norm_constant(graph.n, gamut.diameter),
        DISTANCE_FLOOR_FRACTION * gamut.diameter))


def gradient(chi: Coloring, graph, gamut: Gamut) -> np.ndarray:
    """Descent directions -grad q, one 3-vector per region."""
    _check(chi, graph, gamut)
    indptr, indices = graph.csr
    return _kernels.descent_kernel(
        chi.coords, indptr, indices, graph.inv_degree,
        norm_constant(graph.n, gamut.diameter),
        DISTANCE_FLOOR_FRACTION * gamut.diameter)
