"""Randomized hill climbing over colorings.

Each iteration visits every region once, in index order, and proposes three
moves: a jump to a fresh uniform gamut sample, a color swap with one
uniformly chosen other region, and a fixed-length step along the region's
normalized descent direction followed by projection back into the gamut.
A proposal is kept only when it strictly lowers the quality measure, so
the per-iteration quality trace never increases.  When an entire iteration
accepts nothing, the step length is multiplied by ``step_decay``; the run
stops once the step falls below ``step_min_fraction`` of the gamut
diameter (or at ``max_iterations``).

Randomness comes from a single ``numpy.random.Generator`` seeded with
PCG64, so a run is fully determined by (graph, gamut, config).  Restart
drivers run seeds ``seed .. seed+restarts-1`` and keep the lowest final
quality, breaking ties toward the lower seed.
"""

from __future__ import annotations

import concurrent.futures
import os
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import _kernels
from .colorspace import Gamut, Space
from .quality import Coloring, DISTANCE_FLOOR_FRACTION, norm_constant
from .regiongraph import RegionGraph

MOVE_TYPES = ("jump", "swap", "gradient")


@dataclass(frozen=True)
class OptimizerConfig:
    seed: int = 0
    step_init_fraction: float = 0.1
    step_decay: float = 0.5
    step_min_fraction: float = 1e-4
    max_iterations: int = 10000
    space: Space = Space.LAB

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if not 0.0 < self.step_min_fraction < self.step_init_fraction <= 1.0:
            raise ValueError("need 0 < step_min_fraction < step_init_fraction <= 1")
        if not 0.0 < self.step_decay < 1.0:
            raise ValueError("step_decay must lie in (0, 1)")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")


@dataclass(frozen=True)
class RunReport:
    final_quality: float
    iterations_used: int
    accepted_moves: dict[str, int]
    quality_trace: np.ndarray
    final_step_fraction: float


def _sample_coords(gamut: Gamut, rng: np.random.Generator, n: int) -> np.ndarray:
    """n points uniform over the gamut: per-channel uniform draws over the
    bounding box, rejected until inside (the first draw always lands inside
    for the sRGB cube)."""
    lo, hi = gamut.aabb
    out = np.empty((n, 3))
    for k in range(n):
        while True:
            cand = rng.uniform(lo, hi)
            if np.all(gamut.halfspace_normals @ cand
                      <= gamut.halfspace_offsets + _kernels.CONTAINMENT_TOL):
                out[k] = cand
                break
    return out


def init_random(graph: RegionGraph, gamut: Gamut, seed: int) -> Coloring:
    """Uniform random in-gamut starting coloring, deterministic per seed."""
    rng = np.random.default_rng(seed)
    return Coloring(gamut.space, _sample_coords(gamut, rng, graph.n))


def random_baseline(graph: RegionGraph, gamut: Gamut, seed: int) -> Coloring:
    """The no-optimization baseline: uniform integer sRGB triples (all 2^24
    values equally likely), or uniform-over-the-hull Lab points."""
    rng = np.random.default_rng(seed)
    if gamut.space is Space.SRGB:
        coords = rng.integers(0, 256, size=(graph.n, 3)).astype(float)
    else:
        coords = _sample_coords(gamut, rng, graph.n)
    return Coloring(gamut.space, coords)


def _kernel_args(graph: RegionGraph, gamut: Gamut):
    indptr, indices = graph.csr
    lo, hi = gamut.aabb
    return (indptr, indices, graph.inv_degree,
            norm_constant(graph.n, gamut.diameter),
            DISTANCE_FLOOR_FRACTION * gamut.diameter,
            gamut.halfspace_normals, gamut.halfspace_offsets, gamut.center, lo, hi)


def iterate(chi: Coloring, graph: RegionGraph, gamut: Gamut,
            step_fraction: float, rng: np.random.Generator) -> tuple[Coloring, dict[str, int]]:
    """One sweep of jump/swap/gradient proposals over all regions."""
    if chi.n != graph.n:
        raise ValueError(f"coloring has {chi.n} points for {graph.n} regions")
    if chi.space is not gamut.space:
        raise ValueError("coloring and gamut spaces differ")
    (indptr, indices, inv_deg, norm_const, eps,
     normals, offsets, center, lo, hi) = _kernel_args(graph, gamut)
    coords = chi.coords.copy()
    q = _kernels.quality_kernel(coords, indptr, indices, inv_deg, norm_const, eps)
    q, aj, asw, ag = _kernels.sweep_kernel(
        coords, q, step_fraction * gamut.diameter, indptr, indices, inv_deg,
        norm_const, eps, normals, offsets, center, lo, hi, rng)
    return Coloring(gamut.space, coords), {"jump": aj, "swap": asw, "gradient": ag}


def optimize(graph: RegionGraph, gamut: Gamut,
             config: OptimizerConfig) -> tuple[Coloring, RunReport]:
    """Run the hill climber from a fresh random coloring."""
    if config.space is not gamut.space:
        raise ValueError(f"config space {config.space.value} does not match "
                         f"gamut space {gamut.space.value}")
    (indptr, indices, inv_deg, norm_const, eps,
     normals, offsets, center, lo, hi) = _kernel_args(graph, gamut)
    rng = np.random.default_rng(config.seed)
    coords = _sample_coords(gamut, rng, graph.n)
    q = float(_kernels.quality_kernel(coords, indptr, indices, inv_deg, norm_const, eps))

    step = config.step_init_fraction
    accepted = dict.fromkeys(MOVE_TYPES, 0)
    trace = []
    iterations = 0
    while iterations < config.max_iterations:
        q, aj, asw, ag = _kernels.sweep_kernel(
            coords, q, step * gamut.diameter, indptr, indices, inv_deg,
            norm_const, eps, normals, offsets, center, lo, hi, rng)
        q = float(q)
        iterations += 1
        trace.append(q)
        accepted["jump"] += int(aj)
        accepted["swap"] += int(asw)
        accepted["gradient"] += int(ag)
        if aj == 0 and asw == 0 and ag == 0:
            step *= config.step_decay
            if step < config.step_min_fraction:
                break
    report = RunReport(final_quality=q,
                       iterations_used=iterations,
                       accepted_moves=accepted,
                       quality_trace=np.array(trace),
                       final_step_fraction=step)
    return Coloring(gamut.space, coords), report


def optimize_multistart(graph: RegionGraph, gamut: Gamut, config: OptimizerConfig,
                        restarts: int, max_workers: Optional[int] = None,
                        ) -> tuple[Coloring, RunReport, int]:
    """Best of ``restarts`` runs seeded config.seed .. config.seed+restarts-1.

    Runs execute concurrently (they share no mutable state); the result is
    the minimum final quality, ties broken by the lower seed, so the output
    does not depend on scheduling.  Returns (coloring, report, winning seed).
    """
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    if restarts == 1:
        chi, report = optimize(graph, gamut, config)
        return chi, report, config.seed

    seeds = [config.seed + k for k in range(restarts)]
    if max_workers is None:
        max_workers = min(restarts, os.cpu_count() or 1)
    with concurrent.futures.ThreadPoolExecutor(max_workers=max_workers) as pool:
        results = list(pool.map(
            lambda s: optimize(graph, gamut, replace(config, seed=s)), seeds))
    best = min(range(restarts), key=lambda k: (results[k][1].final_quality, seeds[k]))
    chi, report = results[best]
    return chi, report, seeds[best]
