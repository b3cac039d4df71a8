"""Compare the compiled and pure-numpy kernel lanes on the hot paths.

Runs each lane in a subprocess (the lane is fixed at import time by the
CURVEWIND_NO_NUMBA environment flag), times the four batch kernels on a
shared deterministic workload, and prints a table with speedups.

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --points 50000 --json
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json
import sys
import time

import numpy as np

import curvewind as cw
from curvewind import _kernels
from curvewind.fixtures import cubic_blob
from curvewind.connectivity import ClearanceGrid

n_points = int(sys.argv[1])
repeats = int(sys.argv[2])

jc = cw.validate_jordan(cubic_blob(), h=1e-3)
car = jc.carrier
rng = np.random.default_rng(2024)
pts = rng.uniform(-1.9, 1.9, size=(n_points, 2))

a, b = jc.interval
n_scan = max(int(np.ceil((b - a) / 1e-3)), 8 * jc.spec.n_pieces)
ts = np.linspace(a, b, n_scan + 1)[:-1]
xy = jc.spec.points(ts)
eps = np.array([f * (b - a) for f in (0.02, 0.05, 0.1, 0.2, 0.3, 0.4)])

grid = ClearanceGrid.build(jc, jc.diameter() / 1024, jc.diameter() / 512)
ny, nx = grid.free.shape
queries = [((5, 5), (ny - 6, nx - 6)), ((5, nx - 6), (ny - 6, 5)),
           ((ny // 2, 5), (ny // 2, nx - 6))]


def timed(fn):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


results = {"lane": "numba" if cw.USING_NUMBA else "numpy"}

t, (total, nodes, status) = timed(
    lambda: _kernels.winding_batch(car.kinds, car.data, pts)
)
results["winding_batch"] = {"s": t, "checksum": float(np.abs(total).sum())}

t, (lo, hi) = timed(
    lambda: _kernels.carrier_batch(car.kinds, car.data, car.samples,
                                   car.offsets, pts)
)
results["carrier_batch"] = {"s": t, "checksum": float(lo.sum() + hi.sum())}

t, scan = timed(lambda: _kernels.pair_scan(xy, ts, b - a, 1e-3, a, b, eps))
results["pair_scan"] = {"s": t, "checksum": float(scan[0] + scan[3].sum())}

def run_paths():
    count = 0
    for s, g in queries:
        p = _kernels.grid_path(grid.free, s, g)
        count += 0 if p is None else len(p)
    return count

t, count = timed(run_paths)
results["grid_path"] = {"s": t, "checksum": float(count)}

print(json.dumps(results))
"""


def run_lane(no_numba: bool, n_points: int, repeats: int) -> dict:
    env = dict(os.environ)
    env.pop("CURVEWIND_NO_NUMBA", None)
    if no_numba:
        env["CURVEWIND_NO_NUMBA"] = "1"
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, str(n_points), str(repeats)],
        capture_output=True, text=True, env=env, check=True,
    )
    return json.loads(proc.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=20000)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    fast = run_lane(False, args.points, args.repeats)
    slow = run_lane(True, args.points, args.repeats)
    kernels = ["winding_batch", "carrier_batch", "pair_scan", "grid_path"]

    if args.json:
        print(json.dumps({"numba": fast, "numpy": slow}, indent=2))
        return 0

    print(f"workload: {args.points} points, best of {args.repeats} runs")
    print(f"{'kernel':<16}{'numba':>12}{'numpy':>12}{'speedup':>10}  match")
    for k in kernels:
        tf, ts = fast[k]["s"], slow[k]["s"]
        same = abs(fast[k]["checksum"] - slow[k]["checksum"]) <= 1e-9 * max(
            1.0, abs(slow[k]["checksum"])
        )
        print(f"{k:<16}{tf * 1e3:>10.1f}ms{ts * 1e3:>10.1f}ms"
              f"{ts / tf:>9.1f}x  {'yes' if same else 'NO'}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
