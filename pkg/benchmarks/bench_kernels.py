"""Compare the numba and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Each kernel is timed on the same inputs with both implementations after
one untimed warm-up call (which also triggers JIT compilation); the best
of ``--repeat`` runs is reported, plus one end-to-end solve per backend.
"""

import argparse
import json
import time

import numpy as np

from spectral_gauge import _backend
from spectral_gauge.bounds import theta, xi
from spectral_gauge.graph import erdos_renyi, random_generalized_adjacency
from spectral_gauge.kernels import (SparseBasis, cholesky_numba, cholesky_numpy, hessian_numba,
                                    hessian_numpy, jacobi_numba, jacobi_numpy,
                                    max_weight_stable_numba, max_weight_stable_numpy,
                                    stable_masks_numba, stable_masks_numpy)
from spectral_gauge.oracles import chi_f


def best_time(fn, repeat):
    fn()  # warm-up / compile
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases():
    rng = np.random.default_rng(0)
    m = rng.normal(size=(40, 40))
    sym = m + m.T
    spd = m @ m.T + 40 * np.eye(40)
    g = erdos_renyi(22, 0.3, 1)
    nbr = np.array(g.neighbor_masks(), dtype=np.int64)
    w = rng.uniform(0, 1, 22)
    entries = [[(i, j, 1.0)] for i in range(30) for j in range(i, 30) if (i + j) % 3 == 0]
    basis = SparseBasis.from_entries(30, entries)
    f = rng.normal(size=(30, 30))
    r = f @ f.T
    return {
        "jacobi 40x40": (lambda: jacobi_numba(sym), lambda: jacobi_numpy(sym)),
        "cholesky 40x40": (lambda: cholesky_numba(spd), lambda: cholesky_numpy(spd)),
        "stable sets n=22": (lambda: stable_masks_numba(nbr), lambda: stable_masks_numpy(nbr)),
        "max-weight stable n=22": (lambda: max_weight_stable_numba(nbr, w),
                                   lambda: max_weight_stable_numpy(nbr, w)),
        f"lmi hessian ({basis.size} vars)": (lambda: hessian_numba(basis, r),
                                             lambda: hessian_numpy(basis, r)),
    }


def end_to_end():
    g = erdos_renyi(12, 0.4, 3)
    a = random_generalized_adjacency(g, False, 2)

    def run():
        xi(a)
        theta(g)
        chi_f(g)
    return run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", default=None, help="also write the timings here")
    args = ap.parse_args()

    if not _backend.HAVE_NUMBA:
        print("numba is not installed; only the numpy path can run")
        return
    rows = []
    for name, (fast, slow) in cases().items():
        tn, tp = best_time(fast, args.repeat), best_time(slow, args.repeat)
        rows.append({"kernel": name, "numba_s": tn, "numpy_s": tp, "speedup": tp / tn})
    run = end_to_end()
    e2e = {}
    for b in ("numba", "numpy"):
        with _backend.use_backend(b):
            e2e[b] = best_time(run, max(1, args.repeat // 2))
    rows.append({"kernel": "xi + theta + chi_f, n=12", "numba_s": e2e["numba"],
                 "numpy_s": e2e["numpy"], "speedup": e2e["numpy"] / e2e["numba"]})

    width = max(len(r["kernel"]) for r in rows)
    print(f"{'kernel':<{width}}  {'numba':>10}  {'numpy':>10}  speedup")
    for r in rows:
        print(f"{r['kernel']:<{width}}  {r['numba_s'] * 1e3:8.3f}ms  {r['numpy_s'] * 1e3:8.3f}ms"
              f"  {r['speedup']:6.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
