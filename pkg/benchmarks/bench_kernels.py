"""Compiled versus pure-Python kernels.

Run ``python3 benchmarks/bench_kernels.py``. Kernel timings call both
backends directly on the same random inputs; the end-to-end row runs the
{K4, Theta5} enumeration in a subprocess with and without ``PTL_PURE``.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time

from ptl import _kernels_py as py

try:
    from ptl import _kernels as cy
except ImportError:  # extension not built
    cy = None

ENUM = (
    "import time;from ptl.graph import enumerate_graphs;from ptl.search import FamilyPruner;"
    "t=time.perf_counter();c=sum(1 for _ in enumerate_graphs({n}, FamilyPruner('K4+Theta5')));"
    "print(c, time.perf_counter()-t)"
)


def random_rows(rng: random.Random, n: int, p: float) -> list[int]:
    rows = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return rows


def bench(fn, inputs, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for args in inputs:
            fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--graphs", type=int, default=500)
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--enum-n", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if cy is None:
        sys.exit("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")

    rng = random.Random(1)
    graphs = [(args.n, random_rows(rng, args.n, rng.choice((0.2, 0.3, 0.45)))) for _ in range(args.graphs)]
    aug_inputs = []
    for n, r in graphs[:50]:
        k = n - 3
        mask = (1 << k) - 1
        aug_inputs.append((k, [x & mask for x in r[:k]]))
    cases = {
        "canonical_labelling": [(n, r) for n, r in graphs],
        "augment_candidates": aug_inputs,
        "find_k4": [(n, r, -1) for n, r in graphs],
        "find_theta5": [(n, r, -1) for n, r in graphs],
    }

    print(f"{'kernel':22s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, inputs in cases.items():
        tp = bench(getattr(py, name), inputs, args.repeat)
        tc = bench(getattr(cy, name), inputs, args.repeat)
        print(f"{name:22s} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")

    code = ENUM.format(n=args.enum_n)
    env_py = dict(os.environ, PTL_PURE="1")
    env_cy = {k: v for k, v in os.environ.items() if k != "PTL_PURE"}
    out_py = subprocess.run([sys.executable, "-c", code], env=env_py, capture_output=True, text=True, check=True)
    out_cy = subprocess.run([sys.executable, "-c", code], env=env_cy, capture_output=True, text=True, check=True)
    cnt_py, tp = out_py.stdout.split()
    cnt_cy, tc = out_cy.stdout.split()
    assert cnt_py == cnt_cy, "backends disagree on the enumeration"
    tp, tc = float(tp), float(tc)
    print(f"{'enumerate n=' + str(args.enum_n):22s} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x  ({cnt_cy} free planar classes)")


if __name__ == "__main__":
    main()
