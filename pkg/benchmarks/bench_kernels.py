"""Compare the compiled elimination kernel against the pure-Python one.

Both backends are imported directly, so the comparison does not depend on
which one ``nearfrob.exactlin`` selected.  Every workload is checked for
identical output before it is timed.

    python benchmarks/bench_kernels.py [--repeat 3] [--seed 7]
"""

import argparse
import random
import sys
import timeit

from nearfrob import _kernels_py
from nearfrob import algebra as alg
from nearfrob import nfsolver as nf

try:
    from nearfrob import _kernels
except ImportError:
    _kernels = None


def random_sparse(rng, nrows, ncols, density, bound=9):
    rows = []
    for _ in range(nrows):
        r = {}
        for c in range(ncols):
            if rng.random() < density:
                v = rng.randint(-bound, bound)
                if v:
                    r[c] = v
        rows.append(r)
    return rows


def casimir_system(a):
    rows = nf.casimir_constraints(a, a.generators)
    return _kernels_py.integer_rows(rows), a.dim * a.dim


def workloads(seed):
    rng = random.Random(seed)
    out = []
    for n, d in ((60, 0.1), (120, 0.05), (200, 0.03)):
        out.append((f"random {n}x{n} density {d}", random_sparse(rng, n, n, d), n))
    for fam, params in (("cycle", (3, 3)), ("cycle", (4, 2, 3)), ("matrix", (4,)), ("An", (6,))):
        a = alg.builtin(fam, params)
        rows, ncols = casimir_system(a)
        out.append((f"casimir {fam}:{','.join(map(str, params))} ({len(rows)}x{ncols})", rows, ncols))
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernel not available; build with pip install -e . --no-build-isolation")
        return 1
    print(f"{'workload':48s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, rows, ncols in workloads(args.seed):
        ref = _kernels_py.rref_sparse(rows, ncols)
        assert _kernels.rref_sparse(rows, ncols) == ref, name
        tp = min(timeit.repeat(lambda: _kernels_py.rref_sparse(rows, ncols), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: _kernels.rref_sparse(rows, ncols), number=1, repeat=args.repeat))
        print(f"{name:48s} {tp:10.4f} {tc:10.4f} {tp / tc:8.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
