"""Benchmark the compiled kernels against the numpy fallback path.

Runs the same workloads twice in subprocesses, once with CONVEXA_NUMBA=1
and once with CONVEXA_NUMBA=0, and prints a timing table.  Invoke as:

    python3 bench/benchmark.py
"""

import argparse
import json
import os
import subprocess
import sys
import time


def _workloads(n, p, seed):
    import numpy as np

    import convexa as cx
    from oracles import random_graph  # tests/ must be on sys.path

    rng = np.random.default_rng(seed)
    g = random_graph(rng, n, p, connected=True, weighted=True)
    toc = cx.generate(
        cx.GeneratorSpec(cx.Kind.TREE_OF_CLIQUES, {"cliques": n // 4, "smin": 4, "smax": 6}, seed)
    )
    return {
        "all_pairs_bfs": lambda: g.dist_matrix,
        "convexity_100_runs": lambda: cx.convexity(toc, runs=100, seed=seed),
        "node_betweenness": lambda: cx.betweenness(g),
        "edge_betweenness": lambda: cx.edge_betweenness(g),
        "convex_skeleton": lambda: cx.extract_convex_skeleton(g),
    }


def _child(args):
    sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "tests"))
    import convexa as cx

    results = {"backend": cx.BACKEND}
    jobs = _workloads(args.n, args.p, args.seed)
    for name, fn in jobs.items():
        fn()  # warm-up: triggers JIT compilation and fills caches
    jobs = _workloads(args.n, args.p, args.seed + 1)  # fresh graphs, cold caches
    for name, fn in jobs.items():
        t0 = time.perf_counter()
        fn()
        results[name] = time.perf_counter() - t0
    print(json.dumps(results))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=250)
    ap.add_argument("--p", type=float, default=0.05)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.child:
        return _child(args)

    rows = {}
    for flag in ("1", "0"):
        env = dict(os.environ, CONVEXA_NUMBA=flag)
        cmd = [sys.executable, __file__, "--child", "--n", str(args.n),
               "--p", str(args.p), "--seed", str(args.seed)]
        out = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
        rows[flag] = json.loads(out.stdout.strip().splitlines()[-1])
    print(f"workload (n={args.n}, p={args.p})          numba      numpy    speedup")
    keys = [k for k in rows["1"] if k != "backend"]
    for k in keys:
        a, b = rows["1"][k], rows["0"][k]
        print(f"{k:<36}{a:>9.4f}s {b:>9.4f}s {b / a:>9.1f}x")


if __name__ == "__main__":
    sys.exit(main())
