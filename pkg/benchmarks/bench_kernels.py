#!/usr/bin/env python3
"""Compare the compiled term-arithmetic kernels against the pure-Python twin.

Two layers:

* micro: time the raw kernel functions on polynomial data lifted from a real
  generic expansion (partial Bell polynomials are exactly the kind of sparse
  Laurent operands the expander multiplies all day);
* end to end: run the same symbolic expansion in fresh subprocesses, once per
  backend, and report wall time plus a byte-equality check of the output.

Usage: python benchmarks/bench_kernels.py [--order N]  (default N=12)
"""

import argparse
import os
import subprocess
import sys
import time

from implicitseries import _kernels_py

try:
    from implicitseries import _kernels
except ImportError:
    _kernels = None

from implicitseries.combinatorics import bell_partial

BACKENDS = [("python", _kernels_py)]
if _kernels is not None:
    BACKENDS.insert(0, ("cython", _kernels))


def best_of(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def micro_cases():
    # raw dicts; the data is backend-independent, only the ops differ
    a = dict(bell_partial(12, 4).terms())
    b = dict(bell_partial(12, 5).terms())
    big = dict(bell_partial(14, 5).terms())
    mons = sorted(big)[:64]
    pairs = [(m, n) for m in mons[:16] for n in mons[16:32]]

    def case_mon_mul(k):
        def run():
            for m, n in pairs:
                for _ in range(50):
                    k.mon_mul(m, n)
        return run

    def case_mon_pow(k):
        def run():
            for m in mons:
                for e in (2, 3, 5):
                    k.mon_pow(m, e)
        return run

    def case_mul_terms(k):
        def run():
            k.mul_terms(a, b)
        return run

    def case_square_big(k):
        def run():
            k.mul_terms(big, big)
        return run

    def case_add_scaled(k):
        def run():
            acc = dict(a)
            for c in (2, -3, 5, -7, 11):
                k.add_scaled(acc, b, c)
        return run

    return [
        (f"mon_mul x{len(pairs) * 50}", case_mon_mul),
        (f"mon_pow x{len(mons) * 3}", case_mon_pow),
        (f"mul_terms {len(a)}x{len(b)} terms", case_mul_terms),
        (f"mul_terms {len(big)}x{len(big)} terms", case_square_big),
        ("add_scaled x5", case_add_scaled),
    ]


def run_micro():
    print("== kernel microbenchmarks (best of 5) ==")
    header = f"{'case':<34}" + "".join(f"{name:>12}" for name, _ in BACKENDS)
    if len(BACKENDS) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for label, make in micro_cases():
        times = [best_of(make(mod)) for _, mod in BACKENDS]
        row = f"{label:<34}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2 and times[0] > 0:
            row += f"{times[1] / times[0]:>9.1f}x"
        print(row)


SCRIPT = """\
import hashlib, sys, time
from implicitseries.algebra import KERNEL_BACKEND
from implicitseries.implicit import CoeffTable, monomial_count, y_coeff_direct
order = int(sys.argv[1])
t0 = time.perf_counter()
y = y_coeff_direct(CoeffTable.symbolic(order), order)
dt = time.perf_counter() - t0
digest = hashlib.sha256(str(y).encode()).hexdigest()[:16]
print(f"{KERNEL_BACKEND} {dt:.3f} {monomial_count(y)} {digest}")
"""


def run_end_to_end(order):
    print(f"\n== end to end: generic symbolic coefficient at order {order} ==")
    rows = []
    for name, _ in BACKENDS:
        env = dict(os.environ)
        env["IMPLICITSERIES_PURE"] = "1" if name == "python" else ""
        out = subprocess.run(
            [sys.executable, "-c", SCRIPT, str(order)],
            env=env, capture_output=True, text=True, check=True,
        ).stdout.split()
        rows.append(out)
        print(f"{out[0]:<10} {float(out[1]):8.2f}s   {out[2]} monomials")
    if len(rows) == 2:
        if rows[0][2:] != rows[1][2:]:
            print("BACKENDS DISAGREE on the result")
            return 1
        print(f"speedup {float(rows[1][1]) / float(rows[0][1]):.2f}x, "
              f"results identical (digest {rows[0][3]})")
    return 0


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=12)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernels unavailable; timing the pure backend only")
    run_micro()
    return run_end_to_end(args.order)


if __name__ == "__main__":
    sys.exit(main())
