"""Numeric kernels: the repulsion energy, its descent direction, and one
hill-climbing sweep over all regions.

Two interchangeable backends share these entry points:

* ``quality_kernel(coords, indptr, indices, inv_deg, norm_const, eps)``
* ``descent_kernel(...)`` and ``descent_row_kernel(coords, i, ...)``
* ``sweep_kernel(coords, q, step_abs, <graph arrays>, <gamut arrays>, rng)``

The default backend compiles plain scalar loops with numba's ``@njit``.
Setting the environment variable ``REGIONCOLORS_DISABLE_NUMBA=1`` (checked
once at import) selects a pure-numpy vectorized fallback instead; numba
being not importable falls back the same way.  Both backends consume the
supplied ``numpy.random.Generator`` identically, so proposal streams
match; energy values agree to floating-point roundoff (summation order
differs), which makes an optimization run bit-reproducible per backend,
not across backends.

Graph layout is CSR-style: ``indptr`` (n+1,) and ``indices`` (2m,) int64,
``inv_deg`` (n,) float64 holding 1/|N_i| (0 for isolated regions).  Gamut
geometry arrives as halfspace ``normals`` (m,3) / ``offsets`` (m,) with
inside meaning ``normals @ x <= offsets``, the rescaling ``center`` (3,)
and the bounding box ``lo``/``hi`` (3,) used for rejection sampling.
"""

from __future__ import annotations

import math
import os

import numpy as np

DIMENSION = 3
CONTAINMENT_TOL = 1e-9

_ENV_FLAG = "REGIONCOLORS_DISABLE_NUMBA"


def _numba_disabled() -> bool:
    return os.environ.get(_ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


# ---------------------------------------------------------------------------
# scalar-loop implementations (compiled by numba; self-contained on purpose)
# ---------------------------------------------------------------------------

def _quality_loop(coords, indptr, indices, inv_deg, norm_const, eps):
    n = coords.shape[0]
    q = 0.0
    for i in range(n):
        xi = coords[i, 0]
        yi = coords[i, 1]
        zi = coords[i, 2]
        for j in range(n):
            if j == i:
                continue
            dx = xi - coords[j, 0]
            dy = yi - coords[j, 1]
            dz = zi - coords[j, 2]
            d = math.sqrt(dx * dx + dy * dy + dz * dz)
            if d < eps:
                d = eps
            dd = d * d
            q += 1.0 / (dd * dd)
        acc = 0.0
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            dx = xi - coords[j, 0]
            dy = yi - coords[j, 1]
            dz = zi - coords[j, 2]
            d = math.sqrt(dx * dx + dy * dy + dz * dz)
            if d < eps:
                d = eps
            acc += 1.0 / d
        q += norm_const * inv_deg[i] * acc
    return q


def _descent_row_loop(coords, i, indptr, indices, inv_deg, norm_const, eps):
    # -grad_i of the full energy: every unordered pair feeds both endpoints'
    # terms, hence 2(D+1) on the all-pairs part and (1/|N_i| + 1/|N_j|) on
    # the adjacency part.  Pairs closer than eps contribute nothing (the
    # direction is undefined at coincidence).
    n = coords.shape[0]
    xi = coords[i, 0]
    yi = coords[i, 1]
    zi = coords[i, 2]
    gx = 0.0
    gy = 0.0
    gz = 0.0
    for j in range(n):
        if j == i:
            continue
        dx = xi - coords[j, 0]
        dy = yi - coords[j, 1]
        dz = zi - coords[j, 2]
        d = math.sqrt(dx * dx + dy * dy + dz * dz)
        if d < eps:
            continue
        dd = d * d
        coef = 2.0 * (DIMENSION + 1) / (dd * dd * dd)  # 2(D+1)/d^(D+2) per unit vector
        gx += coef * dx
        gy += coef * dy
        gz += coef * dz
    for k in range(indptr[i], indptr[i + 1]):
        j = indices[k]
        dx = xi - coords[j, 0]
        dy = yi - coords[j, 1]
        dz = zi - coords[j, 2]
        d = math.sqrt(dx * dx + dy * dy + dz * dz)
        if d < eps:
            continue
        coef = norm_const * (inv_deg[i] + inv_deg[j]) / (d * d * d)
        gx += coef * dx
        gy += coef * dy
        gz += coef * dz
    return gx, gy, gz


def _inside_loop(normals, offsets, x, y, z):
    for h in range(normals.shape[0]):
        if normals[h, 0] * x + normals[h, 1] * y + normals[h, 2] * z > offsets[h] + CONTAINMENT_TOL:
            return False
    return True


def _project_loop(normals, offsets, center, x, y, z):
    inside = True
    for h in range(normals.shape[0]):
        if normals[h, 0] * x + normals[h, 1] * y + normals[h, 2] * z > offsets[h] + CONTAINMENT_TOL:
            inside = False
            break
    if inside:
        return x, y, z
    dx = x - center[0]
    dy = y - center[1]
    dz = z - center[2]
    t = 1.0
    for h in range(normals.shape[0]):
        sp = normals[h, 0] * x + normals[h, 1] * y + normals[h, 2] * z
        if sp > offsets[h]:
            sc = (normals[h, 0] * center[0] + normals[h, 1] * center[1]
                  + normals[h, 2] * center[2])
            th = (offsets[h] - sc) / (sp - sc)
            if th < t:
                t = th
    return center[0] + t * dx, center[1] + t * dy, center[2] + t * dz


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------

def quality_numpy(coords, indptr, indices, inv_deg, norm_const, eps):
    n = coords.shape[0]
    if n < 2:
        return 0.0
    diff = coords[:, None, :] - coords[None, :, :]
    d = np.sqrt((diff * diff).sum(axis=-1))
    np.fill_diagonal(d, np.inf)
    np.maximum(d, eps, out=d)
    first = (1.0 / d ** 4).sum()
    if indices.size:
        rows = np.repeat(np.arange(n), np.diff(indptr))
        adj = (inv_deg[rows] / d[rows, indices]).sum()
    else:
        adj = 0.0
    return float(first + norm_const * adj)


def descent_row_numpy(coords, i, indptr, indices, inv_deg, norm_const, eps):
    delta = coords[i] - coords
    d = np.sqrt((delta * delta).sum(axis=-1))
    live = d >= eps
    live[i] = False
    g = np.zeros(3)
    if live.any():
        dl = d[live]
        g += ((2.0 * (DIMENSION + 1) / dl ** (DIMENSION + 3))[:, None]
              * delta[live]).sum(axis=0)
    nb = indices[indptr[i]:indptr[i + 1]]
    nb = nb[d[nb] >= eps]
    if nb.size:
        coef = norm_const * (inv_deg[i] + inv_deg[nb]) / d[nb] ** 3
        g += (coef[:, None] * delta[nb]).sum(axis=0)
    return g


def descent_numpy(coords, indptr, indices, inv_deg, norm_const, eps):
    return np.array([descent_row_numpy(coords, i, indptr, indices, inv_deg,
                                       norm_const, eps)
                     for i in range(coords.shape[0])])


def _inside_numpy(normals, offsets, p):
    return bool(np.all(normals @ p <= offsets + CONTAINMENT_TOL))


def _project_numpy(normals, offsets, center, p):
    if _inside_numpy(normals, offsets, p):
        return p
    scores = normals @ p
    viol = scores > offsets
    sc = normals[viol] @ center
    t = np.min((offsets[viol] - sc) / (scores[viol] - sc))
    return center + t * (p - center)


def sweep_numpy(coords, q_cur, step_abs, indptr, indices, inv_deg, norm_const, eps,
                normals, offsets, center, lo, hi, rng):
    """One iteration: per region, in index order, propose jump / swap /
    projected gradient step; keep each only on a strict energy decrease."""
    n = coords.shape[0]
    acc_jump = 0
    acc_swap = 0
    acc_grad = 0
    for i in range(n):
        old = coords[i].copy()

        while True:
            cand = rng.uniform(lo, hi)
            if _inside_numpy(normals, offsets, cand):
                break
        coords[i] = cand
        q_new = quality_numpy(coords, indptr, indices, inv_deg, norm_const, eps)
        if q_new < q_cur:
            q_cur = q_new
            acc_jump += 1
            old = cand
        else:
            coords[i] = old

        if n >= 2:
            j = int(rng.integers(0, n - 1))
            if j >= i:
                j += 1
            coords[i] = coords[j]
            coords[j] = old
            q_new = quality_numpy(coords, indptr, indices, inv_deg, norm_const, eps)
            if q_new < q_cur:
                q_cur = q_new
                acc_swap += 1
                old = coords[i].copy()
            else:
                coords[j] = coords[i]
                coords[i] = old

        g = descent_row_numpy(coords, i, indptr, indices, inv_deg, norm_const, eps)
        gn = float(np.linalg.norm(g))
        if gn > 0.0:
            # same rounding order as the numba sweep: old + step*g/norm
            coords[i] = _project_numpy(normals, offsets, center,
                                       old + step_abs * g / gn)
            q_new = quality_numpy(coords, indptr, indices, inv_deg, norm_const, eps)
            if q_new < q_cur:
                q_cur = q_new
                acc_grad += 1
            else:
                coords[i] = old
    return q_cur, acc_jump, acc_swap, acc_grad


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

USING_NUMBA = False
quality_numba = None
descent_numba = None
descent_row_numba = None
sweep_numba = None

if not _numba_disabled():
    try:
        from numba import njit
    except ImportError:
        pass
    else:
        quality_numba = njit(cache=True)(_quality_loop)
        descent_row_numba = njit(cache=True)(_descent_row_loop)
        _inside_nb = njit(cache=True)(_inside_loop)
        _project_nb = njit(cache=True)(_project_loop)
        _q_nb = quality_numba
        _row_nb = descent_row_numba

        @njit(cache=True)
        def descent_numba(coords, indptr, indices, inv_deg, norm_const, eps):
            n = coords.shape[0]
            out = np.zeros((n, 3))
            for i in range(n):
                gx, gy, gz = _row_nb(coords, i, indptr, indices, inv_deg,
                                     norm_const, eps)
                out[i, 0] = gx
                out[i, 1] = gy
                out[i, 2] = gz
            return out

        @njit(cache=True)
        def sweep_numba(coords, q_cur, step_abs, indptr, indices, inv_deg,
                        norm_const, eps, normals, offsets, center, lo, hi, rng):
            # mirror of sweep_numpy with scalar arithmetic
            n = coords.shape[0]
            acc_jump = 0
            acc_swap = 0
            acc_grad = 0
            for i in range(n):
                ox = coords[i, 0]
                oy = coords[i, 1]
                oz = coords[i, 2]

                while True:
                    x = rng.uniform(lo[0], hi[0])
                    y = rng.uniform(lo[1], hi[1])
                    z = rng.uniform(lo[2], hi[2])
                    if _inside_nb(normals, offsets, x, y, z):
                        break
                coords[i, 0] = x
                coords[i, 1] = y
                coords[i, 2] = z
                q_new = _q_nb(coords, indptr, indices, inv_deg, norm_const, eps)
                if q_new < q_cur:
                    q_cur = q_new
                    acc_jump += 1
                    ox = x
                    oy = y
                    oz = z
                else:
                    coords[i, 0] = ox
                    coords[i, 1] = oy
                    coords[i, 2] = oz

                if n >= 2:
                    j = int(rng.integers(0, n - 1))
                    if j >= i:
                        j += 1
                    coords[i, 0] = coords[j, 0]
                    coords[i, 1] = coords[j, 1]
                    coords[i, 2] = coords[j, 2]
                    coords[j, 0] = ox
                    coords[j, 1] = oy
                    coords[j, 2] = oz
                    q_new = _q_nb(coords, indptr, indices, inv_deg, norm_const, eps)
                    if q_new < q_cur:
                        q_cur = q_new
                        acc_swap += 1
                        ox = coords[i, 0]
                        oy = coords[i, 1]
                        oz = coords[i, 2]
                    else:
                        coords[j, 0] = coords[i, 0]
                        coords[j, 1] = coords[i, 1]
                        coords[j, 2] = coords[i, 2]
                        coords[i, 0] = ox
                        coords[i, 1] = oy
                        coords[i, 2] = oz

                gx, gy, gz = _row_nb(coords, i, indptr, indices, inv_deg,
                                     norm_const, eps)
                gn = math.sqrt(gx * gx + gy * gy + gz * gz)
                if gn > 0.0:
                    px, py, pz = _project_nb(normals, offsets, center,
                                             ox + step_abs * gx / gn,
                                             oy + step_abs * gy / gn,
                                             oz + step_abs * gz / gn)
                    coords[i, 0] = px
                    coords[i, 1] = py
                    coords[i, 2] = pz
                    q_new = _q_nb(coords, indptr, indices, inv_deg, norm_const, eps)
                    if q_new < q_cur:
                        q_cur = q_new
                        acc_grad += 1
                    else:
                        coords[i, 0] = ox
                        coords[i, 1] = oy
                        coords[i, 2] = oz
            return q_cur, acc_jump, acc_swap, acc_grad

        USING_NUMBA = True

if USING_NUMBA:
    quality_kernel = quality_numba
    descent_kernel = descent_numba
    descent_row_kernel = descent_row_numba
    sweep_kernel = sweep_numba
else:
    quality_kernel = quality_numpy
    descent_kernel = descent_numpy
    descent_row_kernel = descent_row_numpy
    sweep_kernel = sweep_numpy
