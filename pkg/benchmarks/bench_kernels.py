"""Compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both implementations are imported directly, their outputs compared, and the
best-of-N wall time printed per workload.
"""
import argparse
import random
import time

from hallp1 import _kernels_py as pure

try:
    from hallp1 import _ckernels as compiled
except ImportError:
    compiled = None


def _nilpotent(n, p, rng):
    return [[rng.randrange(p) if j > i else 0 for j in range(n)] for i in range(n)]


def workloads(seed=0):
    rng = random.Random(seed)
    mats = [[[rng.randrange(3) for _ in range(12)] for _ in range(10)] for _ in range(200)]
    yield "rank_mod 200x(10x12) p=3", lambda k: [k.rank_mod(m, 12, 3) for m in mats]
    yield "nullspace_mod 200x(10x12) p=3", lambda k: [k.nullspace_mod(m, 12, 3) for m in mats]
    T = _nilpotent(5, 2, rng)
    yield "stable_subspaces n=5 k=2 p=2", lambda k: k.stable_subspaces(5, 2, 2, [T])
    T3 = _nilpotent(4, 3, rng)
    yield "stable_subspaces n=4 k=2 p=3", lambda k: k.stable_subspaces(4, 2, 3, [T3])
    yield "form_pair_census (3,3) p=2", lambda k: k.form_pair_census(3, 3, 2)
    yield "form_pair_census (2,2) p=3", lambda k: k.form_pair_census(2, 2, 3)


def best(fn, mod, repeat):
    out, ts = None, []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(mod)
        ts.append(time.perf_counter() - t)
    return out, min(ts)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    if compiled is None:
        print("compiled extension not built; timing the fallback only")
    print("%-34s %10s %10s %8s" % ("workload", "python", "cython", "speedup"))
    for name, fn in workloads():
        ref, tp = best(fn, pure, a.repeat)
        if compiled is None:
            print("%-34s %9.4fs %10s %8s" % (name, tp, "-", "-"))
            continue
        got, tc = best(fn, compiled, a.repeat)
        if got != ref:
            raise SystemExit("mismatch on %s" % name)
        print("%-34s %9.4fs %9.4fs %7.1fx" % (name, tp, tc, tp / tc))


if __name__ == "__main__":
    main()
