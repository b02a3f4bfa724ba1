"""Timing comparison of the compiled and numpy tensor kernels.

Runs single-point and batched apply/jacobian over a grid of dimensions and
orders, printing one table row per case with the speedup of the compiled
extension over the numpy einsum path.

Usage:
    python3 benchmarks/bench_kernels.py [--repeats 5] [--batch 512]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from pcpkit import backend
from pcpkit._core_numpy import NumpyKernel


def _best_of(fn, repeats: int) -> float:
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_case(n: int, order: int, batch: int, repeats: int, rng) -> list[str]:
    coeffs = rng.normal(size=(n,) * order)
    compiled = backend.CompiledKernel(coeffs)
    reference = NumpyKernel(coeffs)
    x1 = rng.normal(size=(1, n))
    xb = rng.normal(size=(batch, n))

    rows = []
    for label, X in (("single", x1), (f"batch{batch}", xb)):
        # amortize timer resolution on the tiny single-point case
        loops = 200 if X.shape[0] == 1 else 1
        for op in ("apply", "jacobian"):
            fc = getattr(compiled, op)
            fr = getattr(reference, op)
            assert np.allclose(fc(X), fr(X), atol=1e-10 * max(1.0, np.abs(fr(X)).max()))
            tc = _best_of(lambda: [fc(X) for _ in range(loops)], repeats) / loops
            tr = _best_of(lambda: [fr(X) for _ in range(loops)], repeats) / loops
            rows.append(
                f"{n:>3} {order:>5} {label:>9} {op:>8} "
                f"{tc * 1e6:>12.1f} {tr * 1e6:>12.1f} {tr / tc:>8.2f}x"
            )
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--batch", type=int, default=512)
    args = ap.parse_args()

    if not backend._HAVE_COMPILED:
        raise SystemExit("compiled extension not importable; nothing to compare")

    rng = np.random.default_rng(0)
    print(f"active backend: {backend.backend_name()}")
    print(f"{'dim':>3} {'order':>5} {'shape':>9} {'op':>8} "
          f"{'compiled_us':>12} {'numpy_us':>12} {'speedup':>9}")
    for n, order in ((2, 3), (2, 4), (3, 4), (4, 3), (3, 6), (8, 3)):
        for row in bench_case(n, order, args.batch, args.repeats, rng):
            print(row)


if __name__ == "__main__":
    main()
