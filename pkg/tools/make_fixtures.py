"""Regenerate the committed test fixtures.

Run from the repository root:

    python tools/make_fixtures.py

Outputs are deterministic.  The 18-vertex triangulation is the Delaunay
triangulation of seeded uniform points in the unit square; the demo grid
is a 20x20 partition into Voronoi cells of seeded points, symmetrized
about the main diagonal (label of (r, c) equals label of (c, r)), which
leaves some regions disconnected, the shape map-partition inputs tend to
have.  The fixtures are committed so the test suite never depends on the
qhull version; this script records their provenance.
"""

import pathlib

import numpy as np
from scipy.spatial import Delaunay

from regioncolors import from_edge_list, write_edge_list

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def make_triangulation18() -> None:
    rng = np.random.default_rng(1803)
    points = rng.random((18, 2))
    tri = Delaunay(points)
    edges = set()
    for simplex in tri.simplices:
        for a in range(3):
            i, j = sorted((int(simplex[a]), int(simplex[(a + 1) % 3])))
            edges.add((i, j))
    graph = from_edge_list(18, sorted(edges))
    write_edge_list(graph, str(FIXTURES / "triangulation18.graph"))
    print(f"triangulation18.graph: {graph.n} regions, {graph.edge_count} edges")


def make_demo_grid(size: int = 20, regions: int = 12) -> None:
    rng = np.random.default_rng(451)
    # the diagonal fold below only sees cells with row <= col, so keep the
    # seeds in that triangle too
    seeds = np.sort(rng.uniform(0, size, (regions, 2)), axis=1)
    rows, cols = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
    lo = np.minimum(rows, cols)
    hi = np.maximum(rows, cols)
    cells = np.stack([lo, hi], axis=-1).reshape(-1, 2)
    d2 = ((cells[:, None, :] - seeds[None, :, :]) ** 2).sum(axis=-1)
    labels = d2.argmin(axis=1).reshape(size, size)
    lines = "\n".join(",".join(str(v) for v in row) for row in labels)
    (FIXTURES / "demo_grid.csv").write_text(lines + "\n", encoding="utf-8")
    print(f"demo_grid.csv: {size}x{size}, {len(np.unique(labels))} distinct labels, "
          f"symmetric: {np.array_equal(labels, labels.T)}")


if __name__ == "__main__":
    FIXTURES.mkdir(parents=True, exist_ok=True)
    make_triangulation18()
    make_demo_grid()
