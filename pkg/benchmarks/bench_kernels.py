"""Timing comparison of the compiled kernels against the numpy fallbacks.

Run as: python3 benchmarks/bench_kernels.py [--repeat N]

Both code paths are always imported here, so the comparison works in a
single process regardless of the OLAURENT_NO_NUMBA setting.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from olaurent import kernels


def _time(fn, *args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=7)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    # sizes mirror the package's hot paths: many-point series evaluation
    # (contour quadrature), moderate-order convolution and reciprocal
    horner_coeffs = 0.5 ** np.arange(300) * np.exp(2j * np.pi * rng.random(300))
    horner_coeffs[0] = 1.0
    pts = 0.8 * np.exp(2j * np.pi * rng.random(200_000))
    conv = np.exp(2j * np.pi * rng.random(4000))
    # geometric decay keeps the reciprocal bounded: 1/f of a partial sum of
    # 1/(1 - z/2) is 1 - z/2 + O(truncation)
    recip = (0.5 + 0j) ** np.arange(1000)

    cases = [
        ("eval_poly", (horner_coeffs, pts)),
        ("cauchy_product", (conv, conv, conv.size)),
        ("reciprocal_coeffs", (recip,)),
    ]

    rows = []
    for name, call_args in cases:
        np_fn = getattr(kernels, f"{name}_numpy")
        t_np = _time(np_fn, *call_args, repeat=args.repeat)
        if kernels.HAS_NUMBA:
            nb_fn = getattr(kernels, f"{name}_numba")
            nb_fn(*call_args)
            t_nb = _time(nb_fn, *call_args, repeat=args.repeat)
            rows.append((name, t_np, t_nb, t_np / t_nb))
        else:
            rows.append((name, t_np, None, None))

    print(f"active backend: {kernels.backend()}  (repeat={args.repeat})")
    header = f"{'kernel':<20}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, t_np, t_nb, ratio in rows:
        if t_nb is None:
            print(f"{name:<20}{t_np * 1e3:>12.3f}{'n/a':>12}{'n/a':>10}")
        else:
            print(f"{name:<20}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}{ratio:>10.2f}")


if __name__ == "__main__":
    main()
