"""Time the full pipeline on every curve file given (default: the test fixtures).

    python scripts/benchmark.py [curve.json ...] [--method both]
"""

import argparse
import time
from pathlib import Path

from oldcong import modsym
from oldcong.congruence import congruence_primes
from oldcong.documents import load_curve

FIXTURES = sorted((Path(__file__).parent.parent / "tests" / "data").glob("curve*.json"),
                  key=lambda p: int(p.stem[5:]))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("curves", nargs="*", type=Path, default=FIXTURES)
    ap.add_argument("--method", default="both")
    args = ap.parse_args()

    print(f"{'label':<10} {'N':>5} {'B':>4} {'primes':<10} {'index':>6} {'sat':>4} {'secs':>7}")
    for path in args.curves:
        E = load_curve(path)
        modsym.build_space.cache_clear()
        modsym.integral_basis.cache_clear()
        t = time.perf_counter()
        r = congruence_primes(E, args.method)
        dt = time.perf_counter() - t
        primes = ",".join(map(str, r.congruence_primes)) or "-"
        idx = r.congruence_exponent if r.congruence_exponent is not None else "-"
        print(f"{E.label or path.stem:<10} {E.level:>5} {r.sturm_bound:>4} {primes:<10} "
              f"{idx:>6} {'y' if r.oldspace_saturated else 'n':>4} {dt:7.2f}")


if __name__ == "__main__":
    main()
