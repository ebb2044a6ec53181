"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both backends run on the same inputs: A_9 and A_10 for block counting,
and a prefix of u against a shifted copy for the distance numerators.
"""
import argparse
import timeit

import numpy as np

from hmchaos import _fallback
from hmchaos.symbolic.words import WordSystem

try:
    from hmchaos import _kernels
except ImportError:
    _kernels = None


def cases(words):
    block = np.frombuffer(b"\x01\x00\x01\x01\x01", dtype=np.uint8)
    u = words.prefix(5 ** 8 + 64)
    x, y = np.ascontiguousarray(u[:-1]), np.ascontiguousarray(u[1:])
    return {
        "block_count A_9": lambda m: m.block_count(words.word(9), block),
        "block_count A_10": lambda m: m.block_count(words.word(10), block),
        "match_mask A_9": lambda m: m.match_mask(words.word(9), block),
        "shift_distance 5^6 x 60": lambda m: m.shift_distance_numerators(x, y, 5 ** 6, 60),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    words = WordSystem(10)
    backends = [("numpy", _fallback)] + ([("cython", _kernels)] if _kernels else [])
    if _kernels is None:
        print("compiled extension not built; timing the numpy fallback only")
    print(f"{'case':28s}" + "".join(f"{name:>12s}" for name, _ in backends) + "     speedup")
    for label, fn in cases(words).items():
        results = [fn(mod) for _, mod in backends]
        for r in results[1:]:
            assert np.array_equal(np.asarray(r), np.asarray(results[0])), label
        best = [min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
                for _, mod in backends]
        row = f"{label:28s}" + "".join(f"{t * 1e3:10.2f}ms" for t in best)
        if len(best) > 1:
            row += f"  {best[0] / best[1]:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
