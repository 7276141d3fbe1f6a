"""Compare the compiled kernels with the pure-Python fallback.

Usage::

    python benchmarks/bench_kernels.py [--resolution 8] [--field cosine] [--repeat 3]
        [--end-to-end]

Each kernel is run on inputs taken from a generated dataset; outputs of the
two backends are compared before timing.  ``--end-to-end`` also times the
full Reeb-space pipeline under each backend in a subprocess.
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from reebspace import _pykernels
from reebspace.generators import generate
from reebspace.jacobi import compute_jacobi_set

try:
    from reebspace import _kernels
except ImportError:
    _kernels = None


def kernel_inputs(mesh, js):
    edges = mesh.edges
    r = mesh.rank("f1")
    swap = r[edges[:, 0]] > r[edges[:, 1]]
    tail = np.where(swap, edges[:, 1], edges[:, 0])
    head = np.where(swap, edges[:, 0], edges[:, 1])
    ptr, cyc = mesh.edge_cycles_csr()
    ends = edges[js.edges]
    x, y = mesh.f1[ends], mesh.f2[ends]
    r1 = float(np.median(mesh.f1))
    r2 = float(np.median(mesh.f2))
    return {
        "vertex_link_stats": (*mesh.link_csr(), r),
        "edge_link_signs": (ptr, cyc, tail, head, mesh.f1, mesh.f2),
        "triangles_containing": (mesh.triangles, mesh.f1, mesh.f2, r1, r2),
        "bbox_overlap_pairs": (x.min(1), x.max(1), y.min(1), y.max(1)),
    }


def _same(a, b) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    if a.ndim == 2 and a.shape[1] == 2 and a.shape == b.shape:
        a, b = np.unique(a, axis=0), np.unique(b, axis=0)
    return a.shape == b.shape and bool(np.all(a == b))


def bench_kernels(mesh, js, repeat: int):
    rows = []
    for name, args in kernel_inputs(mesh, js).items():
        py = getattr(_pykernels, name)
        t_py = min(timeit.repeat(lambda: py(*args), number=1, repeat=repeat))
        if _kernels is None:
            rows.append((name, t_py, None, None))
            continue
        cy = getattr(_kernels, name)
        if not _same(py(*args), cy(*args)):
            raise SystemExit(f"{name}: backends disagree")
        t_cy = min(timeit.repeat(lambda: cy(*args), number=1, repeat=repeat))
        rows.append((name, t_py, t_cy, t_py / t_cy if t_cy > 0 else float("inf")))
    return rows


_PIPELINE = ("import time,sys;from reebspace.generators import generate;"
             "from reebspace.reeb_space import compute_reeb_space;"
             "m=generate('torus3',{res},'{field}');t=time.perf_counter();"
             "compute_reeb_space(m,force=True);print(time.perf_counter()-t)")


def bench_pipeline(res: int, field: str):
    out = {}
    for backend, env in (("python", "1"), ("cython", "0")):
        e = dict(os.environ, REEBSPACE_PURE_PYTHON=env)
        p = subprocess.run([sys.executable, "-c", _PIPELINE.format(res=res, field=field)],
                           env=e, capture_output=True, text=True, check=True)
        out[backend] = float(p.stdout.strip())
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--resolution", type=int, default=8)
    ap.add_argument("--field", default="cosine")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args(argv)

    mesh = generate("torus3", args.resolution, args.field)
    js = compute_jacobi_set(mesh)
    print(f"torus3 R={args.resolution} {args.field}: n_v={mesh.n_v} n_e={mesh.n_e} "
          f"n_t={mesh.n_t} n_T={mesh.n_T} j_e={js.j_e}")
    print(f"{'kernel':<22}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name, t_py, t_cy, sp in bench_kernels(mesh, js, args.repeat):
        cy = f"{t_cy:12.4f}" if t_cy is not None else f"{'n/a':>12}"
        s = f"{sp:9.1f}x" if sp is not None else f"{'n/a':>10}"
        print(f"{name:<22}{t_py:12.4f}{cy}{s}")
    if args.end_to_end:
        t = bench_pipeline(args.resolution, args.field)
        print(f"{'pipeline':<22}{t['python']:12.2f}{t['cython']:12.2f}"
              f"{t['python'] / t['cython']:9.1f}x")


if __name__ == "__main__":
    main()
