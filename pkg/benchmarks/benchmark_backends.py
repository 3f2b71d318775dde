#!/usr/bin/env python3
"""Time the compiled scalar core against the pure-Python fallback.

Runs the hot kernels (normalized Bessel, 2F1, Legendre, triple-Bessel
branches) and two end-to-end workloads (a product-formula residual and a
TV norm) under each backend and prints the per-call times and speedups.

Usage: python benchmarks/benchmark_backends.py [--repeat N]
"""

import argparse
import os
import subprocess
import sys
import time

KERNEL_CASES = [
    ("normalized_bessel_j(0.375, 3.7)", "core.normalized_bessel_j(0.375, 3.7)"),
    ("normalized_bessel_j(1.875, 32.0)", "core.normalized_bessel_j(1.875, 32.0)"),
    ("hyp2f1(1.375, 0.125, 0.875, 0.3)", "core.hyp2f1(1.375, 0.125, 0.875, 0.3)"),
    ("hyp2f1(.., 0.77) [connection]", "core.hyp2f1(1.375, 0.125, 0.875, 0.77)"),
    ("legendre_p(0.125, 1.375, -0.4)", "core.legendre_p(0.125, 1.375, -0.4)"),
    ("legendre_q_phase_free(0.125, 1.375, 1.5)", "core.legendre_q_phase_free(0.125, 1.375, 1.5)"),
    ("r_band(0.375, 1.875, 1.0, 1.2, 1.5)", "core.r_band(0.375, 1.875, 1.0, 1.2, 1.5)"),
    ("r_outer(0.375, 1.875, 1.0, 1.2, 2.6)", "core.r_outer(0.375, 1.875, 1.0, 1.2, 2.6)"),
]

WORKLOADS = [
    ("product_residual (k=0.75, a=4/3)",
     "product_residual(P, 1.1, 0.7, 1.3, SPEC)", 5),
    ("tv_norm (k=0.75, a=4/3)",
     "tv_norm(P, 1.0, 1.3, SPEC)", 5),
]


def bench_one_backend(repeat: int) -> dict:
    from gfkernel import backend_name
    from gfkernel._backend import core
    from gfkernel.genkernel import Params
    from gfkernel.harness import product_residual, tv_norm
    from gfkernel.quadrature import QuadratureSpec

    P = Params(0.75, 4.0 / 3.0)
    SPEC = QuadratureSpec()
    env = {"core": core, "P": P, "SPEC": SPEC,
           "product_residual": product_residual, "tv_norm": tv_norm}
    out = {"backend": backend_name()}
    for label, expr in KERNEL_CASES:
        code = compile(expr, "<bench>", "eval")
        n = 200 * repeat
        eval(code, env)  # warm
        t0 = time.perf_counter()
        for _ in range(n):
            eval(code, env)
        out[label] = (time.perf_counter() - t0) / n
    for label, expr, n in WORKLOADS:
        code = compile(expr, "<bench>", "eval")
        eval(code, env)
        t0 = time.perf_counter()
        for _ in range(n):
            eval(code, env)
        out[label] = (time.perf_counter() - t0) / n
    return out


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--emit", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.emit:
        res = bench_one_backend(args.repeat)
        for k, v in res.items():
            print(f"{k}\t{v}")
        return 0

    results = {}
    for backend in ("c", "python"):
        env = dict(os.environ, GFKERNEL_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--emit",
             "--repeat", str(args.repeat)],
            capture_output=True, text=True, env=env)
        if proc.returncode != 0:
            if backend == "c":
                print("compiled backend unavailable; nothing to compare", file=sys.stderr)
                print(proc.stderr, file=sys.stderr)
                continue
            print(proc.stderr, file=sys.stderr)
            return 1
        rows = dict(line.split("\t") for line in proc.stdout.strip().splitlines())
        name = rows.pop("backend")
        results[name] = {k: float(v) for k, v in rows.items()}

    if "c" not in results or "python" not in results:
        return 1
    width = max(len(k) for k in results["python"])
    print(f"{'case'.ljust(width)}  {'python':>12}  {'compiled':>12}  {'speedup':>8}")
    for label in results["python"]:
        tp = results["python"][label]
        tc = results["c"].get(label)
        if tc is None:
            continue
        print(f"{label.ljust(width)}  {tp * 1e6:>10.2f}us  {tc * 1e6:>10.2f}us  "
              f"{tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
