"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each kernel runs on inputs taken from the fixture groups; the compiled result
is checked against the fallback before timing.
"""
from __future__ import annotations

import argparse
import sys
import timeit
from pathlib import Path

import numpy as np

from cdj import kernels
from cdj.io import read_group

GROUPS = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "groups"
PRIME = 10007


def element_table(name):
    return read_group(GROUPS / f"{name}.pg").elements


def cases():
    big = element_table("g1092_25")
    mid = element_table("g288_627")
    args = (big.perms, big.base, big._sorted_keys, big._key_order, big.radix)
    yield "cayley_table |G|=1092", "cayley_table", args

    g = read_group(GROUPS / "g1092_25.pg")
    maps = np.stack([big.conj_map(big.index(x)) for x in g.generators])
    yield "orbit_labels |G|=1092", "orbit_labels", (maps,)

    rng = np.random.default_rng(0)
    gens = rng.integers(0, mid.n, size=2).astype(np.int32)
    yield "closure |G|=288", "closure", (mid.table, gens, mid.n)

    by = {k: np.flatnonzero(mid.order == k).astype(np.int32) for k in (2, 6)}
    yield ("product_tuples [0;2,2,2,6] |G|=288", "product_tuples",
           (mid.table, mid.inv, mid.order, int(by[2][0]), [by[2], by[2]], 6))

    a = rng.integers(0, PRIME, size=(40, 40))
    yield "rref_mod 40x40", "rref_mod", (a, PRIME)
    yield "nullspace_mod 40x40", "nullspace_mod", (a, PRIME)
    yield "charpoly_mod 40x40", "charpoly_mod", (a, PRIME)


def same(x, y):
    if isinstance(x, tuple):
        return all(same(a, b) for a, b in zip(x, y))
    if x is None or y is None:
        return x is y
    return np.array_equal(np.asarray(x), np.asarray(y))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    opts = ap.parse_args(argv)
    fast = kernels.compiled_backend
    slow = kernels.python_backend
    if fast is None:
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'kernel':40s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for label, fn, args in cases():
        f_py, f_cy = getattr(slow, fn), getattr(fast, fn)
        if not same(f_py(*args), f_cy(*args)):
            print(f"{label}: backends disagree", file=sys.stderr)
            return 2
        t_py = min(timeit.repeat(lambda: f_py(*args), number=1, repeat=opts.repeat))
        t_cy = min(timeit.repeat(lambda: f_cy(*args), number=1, repeat=opts.repeat))
        print(f"{label:40s} {t_py:10.4f} {t_cy:10.4f} {t_py / max(t_cy, 1e-9):8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
