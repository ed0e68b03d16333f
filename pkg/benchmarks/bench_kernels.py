"""Numba kernels against their numpy (or plain Python) counterparts.

    python3 benchmarks/bench_kernels.py [--size N] [--repeat R]
"""
import argparse
import timeit

import numpy as np

from ramseylab import kernels as kn
from ramseylab._accel import USE_NUMBA


def best_of(fn, repeat):
    fn()  # compile / warm caches
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def cases(size, rng):
    bits = (rng.random(size) < 0.5).astype(np.uint8)
    sparse_a = (rng.random(size) < 0.005).astype(np.uint8)
    sparse_b = (rng.random(size) < 0.005).astype(np.uint8)
    colors = rng.integers(1, 3, size=min(size, 4000)).astype(np.int8)
    colors[:] = np.where(np.arange(colors.size) % 8 < 4, 1, 2)  # RRBB-ish, long scan
    return [
        ("longest_run", lambda: kn.longest_run_nb(bits, 1), lambda: kn.longest_run_np(bits, 1)),
        ("max_window_count", lambda: kn.max_window_count_nb(bits, 100), lambda: kn.max_window_count_np(bits, 100)),
        ("min_prefix_ratio", lambda: kn.min_prefix_ratio_nb(bits), lambda: kn.min_prefix_ratio_np(bits)),
        ("first_mono_ap k=5", lambda: kn.first_mono_ap_nb(colors, 5, -1), lambda: kn.first_mono_ap_np(colors, 5, -1)),
        ("positive_differences", lambda: kn.positive_differences_nb(sparse_a, sparse_b),
         lambda: kn.positive_differences_np(sparse_a, sparse_b)),
    ]


def vdw_case():
    buf = np.zeros(41, dtype=np.int8)
    compiled = lambda: kn.vdw_subtree(4, 2, buf.copy(), 0, 40, 0)
    plain = getattr(kn.vdw_subtree, "py_func", kn.vdw_subtree)
    return ("vdw_subtree W(4,2)", compiled, lambda: plain(4, 2, buf.copy(), 0, 40, 0))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not USE_NUMBA:
        print("numba disabled (RAMSEYLAB_NO_NUMBA); the 'numba' column runs interpreted")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<24}{'numba s':>12}{'numpy s':>12}{'ratio':>8}")
    rows = cases(args.size, rng) + [vdw_case()]
    for name, fast, ref in rows:
        repeat = 1 if name.startswith("vdw") else args.repeat
        t_nb = best_of(fast, repeat)
        t_np = best_of(ref, repeat)
        print(f"{name:<24}{t_nb:>12.5f}{t_np:>12.5f}{t_np / t_nb:>8.1f}")
    print("(vdw_subtree has no vectorised form; its second column is the interpreted loop)")


if __name__ == "__main__":
    main()
