"""Color points, sRGB <-> CIELAB conversion, and convex gamut geometry.

Coordinates follow display conventions: sRGB channels live in [0, 255],
Lab uses L in [0, 100] with signed a/b.  The conversion chain is the
standard one: sRGB transfer curve -> linear RGB -> CIE XYZ under the D65
white point -> Lab.  The 3x3 RGB->XYZ matrix is derived at import from the
sRGB primary chromaticities so that its rows sum exactly to the white
point; the usual 7-digit literals miss (255,255,255) -> (100,0,0) by about
2e-5, which matters for the fidelity checks in the test suite.

A ``Gamut`` is a bounded 3-D convex polytope of displayable colors: the
sRGB cube itself, or the Lab-space convex hull of the images of the eight
cube corners.  It carries precomputed halfspaces (inside means
``normal @ x <= offset``), a rescaling center used to pull out-of-gamut
points back to the boundary, and its exact diameter.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.spatial import ConvexHull

CONTAINMENT_TOL = 1e-9


class Space(Enum):
    SRGB = "srgb"
    LAB = "lab"


# sRGB primaries and D65 white, as xy chromaticities (IEC 61966-2-1).
_PRIMARY_XY = ((0.64, 0.33), (0.30, 0.60), (0.15, 0.06))
_WHITE_XY = (0.3127, 0.3290)


def _xy_to_xyz(x: float, y: float) -> np.ndarray:
    return np.array([x / y, 1.0, (1.0 - x - y) / y])


def _derive_srgb_matrix() -> tuple[np.ndarray, np.ndarray]:
    columns = np.column_stack([_xy_to_xyz(x, y) for x, y in _PRIMARY_XY])
    white = _xy_to_xyz(*_WHITE_XY)
    scale = np.linalg.solve(columns, white)
    return columns * scale, white


_SRGB_TO_XYZ, _XYZ_WHITE = _derive_srgb_matrix()
_XYZ_TO_SRGB = np.linalg.inv(_SRGB_TO_XYZ)

_LAB_DELTA = 6.0 / 29.0


def _srgb_to_lab_array(rgb: np.ndarray) -> np.ndarray:
    """Vectorized sRGB (0..255) -> Lab over the last axis."""
    v = np.asarray(rgb, dtype=float) / 255.0
    lin = np.where(v <= 0.04045, v / 12.92, ((v + 0.055) / 1.055) ** 2.4)
    t = (lin @ _SRGB_TO_XYZ.T) / _XYZ_WHITE
    f = np.where(t > _LAB_DELTA ** 3, np.cbrt(t), t / (3 * _LAB_DELTA ** 2) + 4.0 / 29.0)
    return np.stack([116.0 * f[..., 1] - 16.0,
                     500.0 * (f[..., 0] - f[..., 1]),
                     200.0 * (f[..., 1] - f[..., 2])], axis=-1)


def _lab_to_srgb_array(lab: np.ndarray) -> np.ndarray:
    """Vectorized Lab -> sRGB (0..255); out-of-gamut input yields channels
    outside [0, 255], which callers must check or clamp."""
    lab = np.asarray(lab, dtype=float)
    fy = (lab[..., 0] + 16.0) / 116.0
    f = np.stack([fy + lab[..., 1] / 500.0, fy, fy - lab[..., 2] / 200.0], axis=-1)
    t = np.where(f > _LAB_DELTA, f ** 3, 3 * _LAB_DELTA ** 2 * (f - 4.0 / 29.0))
    lin = (t * _XYZ_WHITE) @ _XYZ_TO_SRGB.T
    v = np.where(lin <= 0.0031308,
                 12.92 * lin,
                 1.055 * np.maximum(lin, 0.0) ** (1.0 / 2.4) - 0.055)
    return 255.0 * v


def _as_coords(value) -> np.ndarray:
    coords = np.array(value, dtype=float)
    if coords.shape != (3,):
        raise ValueError(f"expected 3 coordinates, got shape {coords.shape}")
    if not np.all(np.isfinite(coords)):
        raise ValueError(f"coordinates must be finite, got {coords}")
    return coords


@dataclass(frozen=True, eq=False)
class ColorPoint:
    """A point in a 3-D color space, tagged with the space it lives in."""

    space: Space
    coords: np.ndarray

    def __post_init__(self) -> None:
        coords = _as_coords(self.coords)
        coords.flags.writeable = False
        object.__setattr__(self, "coords", coords)

    def __repr__(self) -> str:
        c = ", ".join(f"{v:.4f}" for v in self.coords)
        return f"ColorPoint({self.space.value}, ({c}))"


def _require_space(point: ColorPoint, space: Space, what: str) -> None:
    if point.space is not space:
        raise ValueError(f"{what} expects a {space.value} point, got {point.space.value}")


@dataclass(frozen=True, eq=False)
class Gamut:
    """Convex polytope of displayable colors with projection geometry."""

    space: Space
    extreme_points: np.ndarray      # (k, 3)
    halfspace_normals: np.ndarray   # (m, 3), unit rows
    halfspace_offsets: np.ndarray   # (m,)
    center: np.ndarray              # (3,), strictly interior
    diameter: float

    def __post_init__(self) -> None:
        for name in ("extreme_points", "halfspace_normals", "halfspace_offsets", "center"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        margins = self.halfspace_offsets - self.halfspace_normals @ self.center
        if np.any(margins <= 0):
            raise ValueError("gamut center is not strictly interior")
        worst = (self.extreme_points @ self.halfspace_normals.T
                 - self.halfspace_offsets).max()
        if worst > CONTAINMENT_TOL:
            raise ValueError(f"extreme point violates a halfspace by {worst:g}")

    @functools.cached_property
    def aabb(self) -> tuple[np.ndarray, np.ndarray]:
        """Axis-aligned bounding box (lo, hi) of the polytope."""
        return self.extreme_points.min(axis=0), self.extreme_points.max(axis=0)

    def __repr__(self) -> str:
        return (f"Gamut({self.space.value}, {len(self.extreme_points)} extremes, "
                f"{len(self.halfspace_offsets)} halfspaces, diameter={self.diameter:.3f})")


def _max_pairwise_distance(points: np.ndarray) -> float:
    diff = points[:, None, :] - points[None, :, :]
    return float(np.sqrt((diff * diff).sum(axis=-1)).max())


_SRGB_CORNERS = np.array(list(itertools.product((0.0, 255.0), repeat=3)))


@functools.lru_cache(maxsize=None)
def make_srgb_gamut() -> Gamut:
    """The sRGB cube [0,255]^3 with its 6 face halfspaces."""
    normals = np.vstack([np.eye(3), -np.eye(3)])
    offsets = np.array([255.0, 255.0, 255.0, 0.0, 0.0, 0.0])
    return Gamut(space=Space.SRGB,
                 extreme_points=_SRGB_CORNERS.copy(),
                 halfspace_normals=normals,
                 halfspace_offsets=offsets,
                 center=np.array([127.5, 127.5, 127.5]),
                 diameter=_max_pairwise_distance(_SRGB_CORNERS))


@functools.lru_cache(maxsize=None)
def make_lab_gamut() -> Gamut:
    """Convex hull, in Lab, of the eight extreme sRGB colors (black, white,
    red, green, blue, cyan, magenta, yellow), rescaling center at neutral
    gray (50, 0, 0)."""
    extremes = _srgb_to_lab_array(_SRGB_CORNERS)
    hull = ConvexHull(extremes)
    normals = hull.equations[:, :3]
    lengths = np.linalg.norm(normals, axis=1, keepdims=True)
    if np.any(lengths == 0):
        raise RuntimeError("degenerate Lab hull facet")
    normals = normals / lengths
    offsets = -hull.equations[:, 3] / lengths[:, 0]
    return Gamut(space=Space.LAB,
                 extreme_points=extremes,
                 halfspace_normals=normals,
                 halfspace_offsets=offsets,
                 center=np.array([50.0, 0.0, 0.0]),
                 diameter=_max_pairwise_distance(extremes))


def gamut_for_space(space: Space) -> Gamut:
    return make_srgb_gamut() if space is Space.SRGB else make_lab_gamut()


def srgb_to_lab(point: ColorPoint) -> ColorPoint:
    """Convert an sRGB point (channels in [0, 255]) to Lab under D65."""
    _require_space(point, Space.SRGB, "srgb_to_lab")
    c = point.coords
    if np.any(c < -CONTAINMENT_TOL) or np.any(c > 255.0 + CONTAINMENT_TOL):
        raise ValueError(f"sRGB channels out of [0, 255]: {c}")
    return ColorPoint(Space.LAB, _srgb_to_lab_array(np.clip(c, 0.0, 255.0)))


def lab_to_srgb(point: ColorPoint, clamp: bool = False) -> ColorPoint:
    """Convert a Lab point back to sRGB.

    With ``clamp=False`` the point must invert to channels inside [0, 255]
    (up to 1e-6); anything else raises, signalling a non-displayable color.
    With ``clamp=True`` the point must lie in the Lab gamut hull (use
    ``project_to_gamut`` first) and the resulting channels are clamped into
    range: hull boundary regions between the eight extreme colors can sit
    outside the displayable solid, by up to roughly 60 channel counts, and
    clamping is the documented rendering rule for them.
    """
    _require_space(point, Space.LAB, "lab_to_srgb")
    if clamp and not contains(make_lab_gamut(), point, tol=1e-6):
        raise ValueError(f"Lab point outside the gamut hull: {point.coords}")
    rgb = _lab_to_srgb_array(point.coords)
    if not clamp and (np.any(rgb < -1e-6) or np.any(rgb > 255.0 + 1e-6)):
        raise ValueError(f"Lab point is not a displayable sRGB color: {point.coords} -> {rgb}")
    return ColorPoint(Space.SRGB, np.clip(rgb, 0.0, 255.0))


def contains(gamut: Gamut, point: ColorPoint, tol: float = CONTAINMENT_TOL) -> bool:
    """True iff the point satisfies every halfspace within tolerance."""
    _require_space(point, gamut.space, "contains")
    return bool(np.all(gamut.halfspace_normals @ point.coords
                       <= gamut.halfspace_offsets + tol))


def project_to_gamut(gamut: Gamut, point: ColorPoint) -> ColorPoint:
    """Return the point unchanged if in gamut, else rescale it toward the
    gamut center until it lies on the boundary."""
    _require_space(point, gamut.space, "project_to_gamut")
    return ColorPoint(gamut.space, _project_coords(gamut, point.coords))


def _project_coords(gamut: Gamut, coords: np.ndarray) -> np.ndarray:
    scores = gamut.halfspace_normals @ coords
    if np.all(scores <= gamut.halfspace_offsets + CONTAINMENT_TOL):
        return coords
    viol = scores > gamut.halfspace_offsets
    center_scores = gamut.halfspace_normals[viol] @ gamut.center
    t = np.min((gamut.halfspace_offsets[viol] - center_scores)
               / (scores[viol] - center_scores))
    return gamut.center + t * (coords - gamut.center)


def distance(p: ColorPoint, q: ColorPoint) -> float:
    """Euclidean distance between two points of the same space."""
    if p.space is not q.space:
        raise ValueError(f"cannot measure distance across spaces "
                         f"({p.space.value} vs {q.space.value})")
    return float(np.linalg.norm(p.coords - q.coords))


def srgb_hex(point: ColorPoint) -> str:
    """Render an sRGB point as #RRGGBB, rounding half-up and clamping."""
    _require_space(point, Space.SRGB, "srgb_hex")
    channels = np.clip(np.floor(point.coords + 0.5), 0, 255).astype(int)
    return "#{:02X}{:02X}{:02X}".format(*channels)
