#!/usr/bin/env python3
"""Benchmark the jitted scattering kernels against the pure-numpy fallback.

Usage:
    python benchmarks/bench_kernels.py [--samples N] [--repeats R]

Times a full-band two-port sweep and a three-port sweep on both code
paths and checks that they agree to round-off.
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from crwscatter import kernels


def _inputs(samples: int):
    k = np.linspace(1e-3, math.pi - 1e-3, samples)
    energies = -2.0 * np.cos(k)
    phis = np.full(samples, math.pi / 2)
    omega_cs = np.zeros(samples)
    return energies, phis, omega_cs


def _time(fn, *args, repeats: int):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=200_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    energies, phis, omega_cs = _inputs(args.samples)
    two_args = (energies, phis, omega_cs, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0)
    three_args = (energies, phis, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0)

    rows = []
    t_np2, s_np2 = _time(kernels.two_port_smatrix_numpy, *two_args, repeats=args.repeats)
    rows.append(("two-port  numpy", t_np2, 1.0))
    t_np3, s_np3 = _time(kernels.three_port_smatrix_numpy, *three_args, repeats=args.repeats)
    rows.append(("three-port numpy", t_np3, 1.0))

    if kernels.two_port_smatrix_numba is not None:
        kernels.two_port_smatrix_numba(*(a[:8] if isinstance(a, np.ndarray) else a
                                         for a in two_args))  # warm the JIT
        t_nb2, s_nb2 = _time(kernels.two_port_smatrix_numba, *two_args,
                             repeats=args.repeats)
        rows.append(("two-port  numba", t_nb2, t_np2 / t_nb2))
        kernels.three_port_smatrix_numba(*(a[:8] if isinstance(a, np.ndarray) else a
                                           for a in three_args))
        t_nb3, s_nb3 = _time(kernels.three_port_smatrix_numba, *three_args,
                             repeats=args.repeats)
        rows.append(("three-port numba", t_nb3, t_np3 / t_nb3))
    else:
        print("numba unavailable or disabled; timing the numpy path only")

    print(f"\n{args.samples} samples, best of {args.repeats}")
    print(f"{'kernel':<18} {'time (ms)':>10} {'speedup':>9}")
    print("-" * 39)
    for label, t, speedup in rows:
        print(f"{label:<18} {t * 1e3:>10.2f} {speedup:>8.2f}x")

    if kernels.two_port_smatrix_numba is not None:
        dev2 = np.nanmax(np.abs(s_np2[0] - s_nb2[0]))
        dev3 = np.nanmax(np.abs(s_np3[0] - s_nb3[0]))
        print(f"\nagreement: two-port max |ds| = {dev2:.3e}, "
              f"three-port max |ds| = {dev3:.3e}")
        ok = dev2 < 1e-12 and dev3 < 1e-12
        print("agreement " + ("OK" if ok else "FAILED"))
        return 0 if ok else 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
