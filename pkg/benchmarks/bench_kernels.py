"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import random
import timeit

from poset_entropy import _kernels_py
from poset_entropy.corpus import random_width2

try:
    from poset_entropy import _kernels as compiled
except ImportError:
    compiled = None

CASES = [
    ("downset_count", 20, 20),
    ("bruteforce_count", 9, 5),
    ("canonical_code", 8, 20),
]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    if compiled is None:
        print("compiled extension not available; only the pure-Python timings are shown")
    rng = random.Random(args.seed)
    print(f"{'kernel':<18}{'n':>4}{'posets':>8}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for name, n, count in CASES:
        inputs = [random_width2(n, rng).pred_masks() for _ in range(count)]
        py = getattr(_kernels_py, name)
        t_py = min(timeit.repeat(lambda: [py(m, n) for m in inputs], number=1, repeat=args.repeat))
        if compiled is not None:
            cy = getattr(compiled, name)
            assert [cy(m, n) for m in inputs] == [py(m, n) for m in inputs]
            t_cy = min(timeit.repeat(lambda: [cy(m, n) for m in inputs], number=1, repeat=args.repeat))
            print(f"{name:<18}{n:>4}{count:>8}{t_py:>12.4f}{t_cy:>12.4f}{t_py / t_cy:>10.1f}x")
        else:
            print(f"{name:<18}{n:>4}{count:>8}{t_py:>12.4f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
