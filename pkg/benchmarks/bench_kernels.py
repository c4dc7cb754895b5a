"""Benchmark the numba kernels against the pure-numpy fallback.

Run from the repository root:

    python benchmarks/bench_kernels.py [--n 18] [--density 0.28] [--repeats 2000]

Reports per-call times for the energy and descent kernels and for one full
proposal sweep, plus the wall time of a complete seeded optimization run
under each backend (the full-run comparison launches subprocesses so each
side selects its backend through REGIONCOLORS_DISABLE_NUMBA).
"""

import argparse
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from regioncolors import Space, from_edge_list, gamut_for_space, init_random
from regioncolors import _kernels
from regioncolors.quality import DISTANCE_FLOOR_FRACTION, norm_constant


def make_instance(n, density, seed=0):
    rng = np.random.default_rng(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if rng.random() < density]
    graph = from_edge_list(n, edges)
    gamut = gamut_for_space(Space.LAB)
    coords = init_random(graph, gamut, seed).coords.copy()
    indptr, indices = graph.csr
    args = (indptr, indices, graph.inv_degree,
            norm_constant(n, gamut.diameter),
            DISTANCE_FLOOR_FRACTION * gamut.diameter)
    return coords, args, gamut, graph


def per_call(fn, repeats):
    t = timeit.timeit(fn, number=repeats)
    return t / repeats


def bench_kernels(n, density, repeats):
    coords, args, gamut, _graph = make_instance(n, density)
    lo, hi = gamut.aabb
    geom = (gamut.halfspace_normals, gamut.halfspace_offsets, gamut.center, lo, hi)
    step = 0.05 * gamut.diameter

    rows = []
    pairs = [("quality", _kernels.quality_numba, _kernels.quality_numpy,
              lambda f: f(coords, *args)),
             ("descent", _kernels.descent_numba, _kernels.descent_numpy,
              lambda f: f(coords, *args))]
    for name, nb, np_impl, call in pairs:
        t_np = per_call(lambda: call(np_impl), repeats)
        if nb is not None:
            call(nb)  # compile
            t_nb = per_call(lambda: call(nb), repeats)
        else:
            t_nb = None
        rows.append((name, t_nb, t_np))

    def sweep_with(impl):
        rng = np.random.default_rng(1)
        pts = coords.copy()
        q0 = _kernels.quality_numpy(pts, *args)
        return lambda: impl(pts.copy(), q0, step, *args, *geom,
                            np.random.default_rng(1))

    t_np = per_call(sweep_with(_kernels.sweep_numpy), max(repeats // 20, 10))
    if _kernels.sweep_numba is not None:
        f = sweep_with(_kernels.sweep_numba)
        f()  # compile
        t_nb = per_call(f, max(repeats // 2, 10))
    else:
        t_nb = None
    rows.append(("sweep", t_nb, t_np))
    return rows


FULL_RUN_SNIPPET = """
import time
import regioncolors as rc
from regioncolors import _kernels
g = rc.read_edge_list("tests/fixtures/triangulation18.graph")
gam = rc.make_lab_gamut()
cfg = rc.OptimizerConfig(seed=3, space=rc.Space.LAB)
rc.optimize(g, gam, cfg)  # warm compile/caches outside the timing
t0 = time.perf_counter()
for seed in range(8):
    chi, rep = rc.optimize(g, gam, rc.OptimizerConfig(seed=seed, space=rc.Space.LAB))
dt = (time.perf_counter() - t0) / 8
print(f"{'numba' if _kernels.USING_NUMBA else 'numpy'} {dt:.6f} {rep.iterations_used}")
"""


def bench_full_runs():
    out = []
    for disable in ("0", "1"):
        env = dict(os.environ, REGIONCOLORS_DISABLE_NUMBA=disable)
        proc = subprocess.run([sys.executable, "-c", FULL_RUN_SNIPPET],
                              env=env, capture_output=True, text=True)
        if proc.returncode != 0:
            raise RuntimeError(proc.stderr)
        out.append(proc.stdout.split())
    return out


def fmt(seconds):
    if seconds is None:
        return "      n/a"
    if seconds < 1e-3:
        return f"{seconds * 1e6:7.1f}us"
    if seconds < 1.0:
        return f"{seconds * 1e3:7.2f}ms"
    return f"{seconds:7.2f}s "


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=18, help="region count")
    ap.add_argument("--density", type=float, default=0.28, help="edge density")
    ap.add_argument("--repeats", type=int, default=2000)
    ap.add_argument("--skip-full-runs", action="store_true")
    args = ap.parse_args()

    print(f"instance: n={args.n}, density={args.density}, Lab gamut")
    print(f"numba available in this process: {_kernels.quality_numba is not None}")
    print(f"{'kernel':<10}{'numba':>10}{'numpy':>10}{'speedup':>9}")
    for name, t_nb, t_np in bench_kernels(args.n, args.density, args.repeats):
        ratio = f"{t_np / t_nb:8.1f}x" if t_nb else "     n/a"
        print(f"{name:<10}{fmt(t_nb):>10}{fmt(t_np):>10}{ratio}")

    if not args.skip_full_runs:
        print("\nfull optimization run, 18-vertex fixture, Lab, default schedule")
        print("(mean of 8 seeded runs, per backend subprocess)")
        for backend, dt, iters in bench_full_runs():
            print(f"  {backend:<6} {fmt(float(dt))}  (~{iters} iterations)")


if __name__ == "__main__":
    main()
