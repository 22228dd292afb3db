"""Time the numba kernels against their pure-numpy twins.

    python benchmarks/bench_kernels.py [--repeat 5] [--csv out.csv]

Each row is run on identical inputs for both backends and the outputs are
checked for agreement before timing is reported.
"""
import argparse
import csv
import sys
import time

import numpy as np

from sbm_lab import kernels
from sbm_lab.experiment import planted_and_inverted, sbm8_config
from sbm_lab.graph import counts_from_density
from sbm_lab.sampler import SeedSpec, floyd_draws, sample_uniform


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases():
    cfg = sbm8_config()
    model = counts_from_density(cfg.density_model(0.25))
    planted, inverted = planted_and_inverted(cfg.sizes)
    g = sample_uniform(model, SeedSpec(1))
    W, a, p = g.W, inverted.assignment, inverted.p
    M = kernels.numpy_backend.block_matrix(W, a, p)
    rng = np.random.default_rng(0)

    yield "block_matrix n=200 p=11", lambda be: be.block_matrix(W, a, p)
    yield "entropy_sum p=11", lambda be: be.entropy_sum(inverted.sizes, M)

    pos = rng.integers(1, 10_000, size=200_000).astype(float)
    edges = rng.integers(0, 10_000, size=200_000).astype(float)
    yield "log_multiset 2e5 terms", lambda be: be.log_multiset_array(pos, edges)

    draws1 = floyd_draws(rng, 10_000 + 2500 - 1, 2500)
    yield "floyd_subset m=2500", lambda be: be.floyd_subset(10_000 + 2500 - 1, draws1)

    batch = floyd_draws(rng, 4 + 29 - 1, 29, size=20_000)
    yield "block_counts_batch 2e4 x m=29", lambda be: be.block_counts_batch(4, batch)

    u, v = np.triu_indices(W.shape[0], 1)
    order = rng.permutation(u.size)
    u, v = u[order].astype(np.int64), v[order].astype(np.int64)

    def climb(be):
        aa = planted.assignment.copy()
        MM = be.block_matrix(W, aa, planted.p).copy()
        be.hill_climb(W, aa, MM, planted.sizes.copy(), u, v, 20_000, 1e-9)
        return aa

    yield "hill_climb 2e4 swaps n=200", climb


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--csv")
    args = ap.parse_args(argv)
    if kernels.numba_backend is None:
        print("numba is not installed; nothing to compare", file=sys.stderr)
        return 1
    nb, nump = kernels.numba_backend, kernels.numpy_backend
    rows = []
    print(f"{'kernel':<32}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for name, fn in cases():
        fn(nb)  # compile
        t_np, out_np = best_of(lambda: fn(nump), args.repeat)
        t_nb, out_nb = best_of(lambda: fn(nb), args.repeat)
        np.testing.assert_allclose(np.asarray(out_np, dtype=float),
                                   np.asarray(out_nb, dtype=float), rtol=1e-10, atol=1e-9)
        rows.append((name, t_np * 1e3, t_nb * 1e3, t_np / t_nb))
        print(f"{name:<32}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}{t_np / t_nb:>9.1f}x")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["kernel", "numpy_ms", "numba_ms", "speedup"])
            w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
