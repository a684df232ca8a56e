#!/usr/bin/env python3
"""Compare the compiled and pure-Python kernels on representative workloads.

Each case runs in a fresh subprocess so the backend choice (made at import
time) is honored; HYPARR_PURE=1 forces the pure backend.  Usage:

    python3 benchmarks/bench_kernel.py            # full table
    python3 benchmarks/bench_kernel.py --repeat 3
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

CASES = ["rref-rational", "rref-cyclotomic", "lattice-F4", "lattice-G29",
         "rank2-scan-G29", "witness-claims"]


def run_case(case: str) -> float:
    import random
    import time

    import hyparr
    from hyparr import _kernel
    from hyparr.analysis import modular_flats_of_rank
    from hyparr.arrangement import build_lattice
    from hyparr.cyclo import field_context
    from hyparr.reflection import exceptional_arrangement

    rng = random.Random(20240 + len(case))

    if case == "rref-rational":
        ctx = field_context(1)
        mats = []
        for _ in range(400):
            rows = [(tuple(rng.randint(-9, 9) for _ in range(8)), rng.randint(1, 5))
                    for _ in range(8)]
            mats.append(rows)
        t0 = time.perf_counter()
        for rows in mats:
            _kernel.rref(list(rows), 8, ctx.degree, ctx.red, ctx.phi)
        return time.perf_counter() - t0

    if case == "rref-cyclotomic":
        ctx = field_context(4)
        mats = []
        for _ in range(400):
            rows = [(tuple(rng.randint(-4, 4) for _ in range(4 * ctx.degree)),
                     rng.randint(1, 3)) for _ in range(6)]
            mats.append(rows)
        t0 = time.perf_counter()
        for rows in mats:
            _kernel.rref(list(rows), 4, ctx.degree, ctx.red, ctx.phi)
        return time.perf_counter() - t0

    if case == "lattice-F4":
        arr = exceptional_arrangement("F4")
        t0 = time.perf_counter()
        build_lattice(arr)
        return time.perf_counter() - t0

    if case == "lattice-G29":
        arr = exceptional_arrangement("G29")
        t0 = time.perf_counter()
        build_lattice(arr)
        return time.perf_counter() - t0

    if case == "rank2-scan-G29":
        arr = exceptional_arrangement("G29")
        lattice = build_lattice(arr)
        t0 = time.perf_counter()
        modular_flats_of_rank(arr, lattice, 2)
        return time.perf_counter() - t0

    if case == "witness-claims":
        from hyparr.claims import run_claims
        t0 = time.perf_counter()
        results = run_claims("witnesses")
        assert all(r.passed for r in results)
        return time.perf_counter() - t0

    raise SystemExit(f"unknown case {case}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--worker", help=argparse.SUPPRESS)
    parser.add_argument("--repeat", type=int, default=1)
    args = parser.parse_args()

    if args.worker:
        import hyparr

        best = min(run_case(args.worker) for _ in range(max(1, args.repeat)))
        print(json.dumps({"backend": hyparr.kernel_backend(), "seconds": best}))
        return 0

    here = os.path.abspath(__file__)
    rows = []
    for case in CASES:
        timings = {}
        for mode, env_extra in (("compiled", {}), ("python", {"HYPARR_PURE": "1"})):
            env = {**os.environ, **env_extra}
            out = subprocess.run(
                [sys.executable, here, "--worker", case, "--repeat", str(args.repeat)],
                capture_output=True, text=True, env=env, check=True)
            payload = json.loads(out.stdout)
            timings[payload["backend"]] = payload["seconds"]
        rows.append((case, timings))

    have_compiled = any("compiled" in t for _, t in rows)
    print(f"{'case':<18} {'python':>9} {'compiled':>9} {'speedup':>8}")
    for case, t in rows:
        py = t.get("python")
        cy = t.get("compiled")
        if cy is None:
            print(f"{case:<18} {py:>8.3f}s {'n/a':>9} {'n/a':>8}")
        else:
            print(f"{case:<18} {py:>8.3f}s {cy:>8.3f}s {py / cy:>7.2f}x")
    if not have_compiled:
        print("note: the compiled kernel is not installed; both columns ran pure Python")
    return 0


if __name__ == "__main__":
    sys.exit(main())
