"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Each row times one hot loop on identical inputs with both backends and
checks that they return the same result.
"""

import argparse
import itertools
import random
import timeit

from freegroup import _pykernels, graph as gr, subgroups
from freegroup.words import Alphabet, random_word

try:
    from freegroup import _kernels
except ImportError:
    _kernels = None


def workloads():
    rng = random.Random(0)
    raw = [[rng.choice((1, -1, 2, -2)) for _ in range(40)] for _ in range(2000)]

    perms = list(itertools.permutations(range(5)))
    tuples = list(itertools.product(perms, repeat=2))

    covers = [s.graph for s in subgroups.enumerate_index(3, 4)[:300]]
    maps = [g.maps() for g in covers]
    alphabet = Alphabet.default(3)
    words = [random_word(30, alphabet, i).codes for i in range(200)]

    def reduce_(k):
        return [k.reduce_codes(r) for r in raw]

    def perm_key(k):
        return [k.perm_key(t, 5) for t in tuples]

    def traversal(k):
        return [k.traversal(f, b, len(f[0]), 0)[0] for f, b in maps]

    def trace(k):
        return [k.trace(f, b, w, 0) for f, b in maps[:50] for w in words]

    return {
        "reduce_codes (2000 x 40 letters)": reduce_,
        "perm_key (S5 x S5, 14400 tuples)": perm_key,
        "traversal (300 covers of degree 4)": traversal,
        "trace (50 covers x 200 words)": trace,
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _kernels is None:
        print("compiled kernels not built; only the fallback is available")
    print(f"{'kernel':40s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn in workloads().items():
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat))
        if _kernels is None:
            print(f"{name:40s} {py * 1e3:9.1f}ms {'-':>10s} {'-':>8s}")
            continue
        assert fn(_pykernels) == fn(_kernels), name
        cy = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
        print(f"{name:40s} {py * 1e3:9.1f}ms {cy * 1e3:9.1f}ms {py / cy:7.1f}x")

    for backend in ("python", "cython"):
        k = _pykernels if backend == "python" else _kernels
        if k is None:
            continue
        saved = gr.kernels, subgroups.kernels
        gr.kernels = subgroups.kernels = k
        try:
            t = min(timeit.repeat(lambda: subgroups.enumerate_index(2, 5), number=1,
                                  repeat=args.repeat))
        finally:
            gr.kernels, subgroups.kernels = saved
        print(f"enumerate_index(2, 5) end to end, {backend:6s}: {t * 1e3:.1f}ms")


if __name__ == "__main__":
    main()
