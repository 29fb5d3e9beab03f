"""Compare the compiled and pure-Python search kernels on fixed instances.

    python benchmarks/bench_kernel.py [--repeat N] [--quick]

Both backends walk the same search tree, so the node counts must agree; the
script checks that and reports wall time and speedup per instance.
"""

import argparse
import sys
import time

from lsdom import kernel
from lsdom.graph import build
from lsdom.latin import cyclic, q_step
from lsdom.solver import DOMINATING, ktuple, solve_exact

INSTANCES = [
    ("cyclic(5) dom", cyclic(5), DOMINATING),
    ("cyclic(5) k=3", cyclic(5), ktuple(3)),
    ("cyclic(6) dom", cyclic(6), DOMINATING),
    ("q_step(2,3) k=1", q_step(2, 3), ktuple(1)),
    ("cyclic(6) k=4", cyclic(6), ktuple(4)),
    ("cyclic(7) dom", cyclic(7), DOMINATING),
]
QUICK = 3


def timed(graph, mode, backend, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        cert = solve_exact(graph, mode, backend=backend)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return cert, best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="only the first few instances")
    args = ap.parse_args(argv)
    if "cython" not in kernel.available():
        print("compiled kernel not built; reinstall without LSDOM_NO_EXT=1", file=sys.stderr)
        return 1
    rows = INSTANCES[:QUICK] if args.quick else INSTANCES
    print(f"{'instance':<18} {'size':>4} {'nodes':>10} {'cython s':>9} {'python s':>9} {'speedup':>8}")
    for name, sq, mode in rows:
        g = build(sq)
        fast, t_fast = timed(g, mode, "cython", args.repeat)
        slow, t_slow = timed(g, mode, "python", args.repeat)
        if fast != slow or fast.nodes != slow.nodes:
            print(f"{name}: backends disagree ({fast.nodes} vs {slow.nodes} nodes)", file=sys.stderr)
            return 1
        print(f"{name:<18} {fast.size:>4} {fast.nodes:>10} {t_fast:>9.4f} {t_slow:>9.4f} {t_slow / t_fast:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
