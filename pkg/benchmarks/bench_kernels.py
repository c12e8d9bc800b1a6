"""Compare the numba and numpy kernels on batched block approximations.

    python benchmarks/bench_kernels.py [--batch 200000] [--sizes 4 8 32] [--repeat 5]
"""
import argparse
import sys
import timeit

import numpy as np

from roughif import _kernels


def make(batch: int, n: int, blocks: int, rng):
    labels = np.sort(rng.integers(0, blocks, n)).astype(np.int32)
    _, labels = np.unique(labels, return_inverse=True)
    labels = labels.astype(np.int32)
    mu = (rng.integers(0, 11, (batch, n)) * 1000).astype(np.int32)
    nu = (rng.integers(0, 11 - mu // 1000) * 1000).astype(np.int32)
    alpha = (rng.integers(0, 11, batch) * 1000).astype(np.int32)
    beta = (rng.integers(0, 11 - alpha // 1000) * 1000).astype(np.int32)
    return mu, nu, labels, int(labels.max()) + 1, alpha, beta


def best(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--batch", type=int, default=200_000)
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 32])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if not _kernels.HAVE_NUMBA:
        print("numba unavailable or disabled; nothing to compare", file=sys.stderr)
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"batch={args.batch} repeat={args.repeat} (best of, seconds)")
    print(f"{'n':>4} {'blocks':>6} {'kernel':<12} {'numpy':>9} {'numba':>9} {'speedup':>8}")
    for n in args.sizes:
        mu, nu, labels, k, alpha, beta = make(args.batch, n, max(1, n // 2), rng)
        cases = {
            "extrema": (_kernels._np_block_extrema, _kernels._nb_block_extrema,
                        (mu, nu, labels, k, True)),
            "approx_cut": (_kernels._np_approx_cut, _kernels._nb_approx_cut,
                           (mu, nu, labels, k, True, alpha, beta)),
        }
        for name, (np_fn, nb_fn, fargs) in cases.items():
            a, b = np_fn(*fargs), nb_fn(*fargs)  # warm-up and JIT compile
            for x, y in zip(a if isinstance(a, tuple) else (a,), b if isinstance(b, tuple) else (b,)):
                assert np.array_equal(x, y), f"{name}: implementations disagree"
            t_np = best(lambda: np_fn(*fargs), args.repeat)
            t_nb = best(lambda: nb_fn(*fargs), args.repeat)
            print(f"{n:>4} {k:>6} {name:<12} {t_np:>9.4f} {t_nb:>9.4f} {t_np / t_nb:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
