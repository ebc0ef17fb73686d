"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import itertools
import timeit

import numpy as np

from polyadic import kernels
from polyadic.catalog import named


def cases():
    z6 = named("der5(Z6)")
    s3 = named("der3(S3)")
    s5 = named("der5(S3)")
    perms6 = np.array(list(itertools.permutations(range(6))), dtype=np.int64)
    ident = np.tile(np.arange(6, dtype=np.int64), (6, 1))
    dense = np.ascontiguousarray
    return [
        ("assoc_witness der5(Z6)", "assoc_witness", (dense(z6.table), 6, 5)),
        ("solvable_witness der5(Z6)", "solvable_witness", (dense(z6.table), 6, 5)),
        ("homotopy_witness der5(S3)", "homotopy_witness", (dense(s5.table), dense(s5.table), 6, 6, 5, ident)),
        ("medial_witness der3(Z6)", "medial_witness", (dense(named("der3(Z6)").table), 6, 3)),
        ("autotopy_search der3(S3)", "autotopy_search", (dense(s3.table), 6, 3, perms6)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = sorted(kernels.BACKENDS)
    print(f"{'kernel':<28}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, fn, a in cases():
        times = {}
        for n in names:
            impl = getattr(kernels.BACKENDS[n], fn)
            times[n] = min(timeit.repeat(lambda: impl(*a), number=1, repeat=args.repeat))
        row = f"{label:<28}" + "".join(f"{times[n]:>11.4f}s" for n in names)
        if len(names) == 2:
            row += f"{times['python'] / times['cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
