"""Time the compiled kernels against the pure-Python ones.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit
from fractions import Fraction

from ifsproduct import _kernels
from ifsproduct.ifs import build_cover, full_window, right_window, validate_params
from ifsproduct.products import product_union


def _random_intervals(rng, n, width, top):
    los = sorted(rng.randrange(top) for _ in range(n))
    return los, [lo + width for lo in los]


def cases():
    rng = random.Random(7)
    los1, his1 = _random_intervals(rng, 400, 50, 10**6)
    los2, his2 = _random_intervals(rng, 400, 50, 10**6)
    lefts = sorted(rng.sample(range(10**7), 20000))
    offsets = [0, 3 * 10**6, 7 * 10**6]
    mlos = sorted(a * b for a in los1 for b in los2)
    mhis = [lo + 2500 for lo in mlos]
    p = validate_params(Fraction(1, 3), Fraction(4, 9))
    cover = build_cover(p, right_window(p), 8)
    pts = sorted(rng.sample(range(10**4), 1500))
    plo, phi = _kernels.merge_intervals(mlos, mhis)
    return {
        "product_intervals 400x400": lambda: _kernels.product_intervals(los1, his1, los2, his2),
        "expand_lefts 20000x3": lambda: _kernels.expand_lefts(lefts, offsets),
        "merge_intervals 160000": lambda: _kernels.merge_intervals(mlos, mhis),
        "build_cover full level 9": lambda: build_cover(p, full_window(), 9),
        "product_union G_8 right window": lambda: product_union(cover.union, cover.union),
        "count_products_outside 1500^2": lambda: _kernels.count_products_outside(pts, pts, plo, phi),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels.BACKEND != "compiled":
        print("compiled kernels not built; timing the Python backend only")
    backends = ["python"] + (["compiled"] if _kernels.BACKEND == "compiled" else [])
    print(f"{'case':34s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup")
    for name, fn in cases().items():
        times = []
        for b in backends:
            _kernels.set_backend(b)
            times.append(min(timeit.repeat(fn, number=1, repeat=args.repeat)))
        speedup = f"{times[0] / times[1]:8.1f}x" if len(times) == 2 else ""
        print(f"{name:34s} " + " ".join(f"{t * 1e3:8.1f}ms" for t in times) + f"  {speedup}")
    _kernels.set_backend(_kernels.BACKEND)


if __name__ == "__main__":
    main()
