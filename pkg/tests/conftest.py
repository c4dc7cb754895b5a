import pathlib

import numpy as np
import pytest

from regioncolors import Gamut, read_edge_list, read_grid

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

# frozen by tools/make_fixtures.py (Delaunay of 18 seeded points)
TRI18_EDGES = 42


@pytest.fixture(scope="session")
def tri18():
    return read_edge_list(str(FIXTURES / "triangulation18.graph"))


@pytest.fixture(scope="session")
def demo_grid():
    return read_grid(str(FIXTURES / "demo_grid.csv"))


def scaled_gamut(gamut: Gamut, s: float) -> Gamut:
    """The same polytope scaled about the origin by s > 0; halfspace
    normals stay unit so offsets scale with s, as do center and diameter."""
    return Gamut(space=gamut.space,
                 extreme_points=gamut.extreme_points * s,
                 halfspace_normals=gamut.halfspace_normals.copy(),
                 halfspace_offsets=gamut.halfspace_offsets * s,
                 center=gamut.center * s,
                 diameter=gamut.diameter * s)


def min_pairwise(coords: np.ndarray) -> float:
    n = coords.shape[0]
    iu = np.triu_indices(n, k=1)
    d = coords[iu[0]] - coords[iu[1]]
    return float(np.sqrt((d * d).sum(axis=1)).min())
