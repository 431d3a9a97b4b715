"""Compare the fixed-set-plus construction with the t-star bound over a grid.

    python scripts/conjecture_grid.py --m 3:12 --k 2:8 --t 2:3

Rows where the construction beats the bound lie outside the conjectured
regime; any such row inside it would be a counterexample.
"""

import argparse
from dataclasses import dataclass

from multiset_ekr.families import conjecture_bound, frankl_plus_family


@dataclass(frozen=True)
class Grid:
    m: range
    k: range
    t: range


def span(text):
    lo, _, hi = text.partition(":")
    return range(int(lo), int(hi or lo) + 1)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--m", type=span, default=span("3:12"))
    p.add_argument("--k", type=span, default=span("2:8"))
    p.add_argument("--t", type=span, default=span("2:3"))
    args = p.parse_args(argv)
    grid = Grid(args.m, args.k, args.t)

    counterexamples = 0
    print(f"{'m':>3} {'k':>3} {'t':>3} {'plus':>8} {'t-star':>8} regime  relation")
    for t in grid.t:
        for k in grid.k:
            if k < t + 1:
                continue
            for m in grid.m:
                if m < t + 2:
                    continue
                plus = len(frankl_plus_family(m, k, t))
                b = conjecture_bound(m, k, t)
                rel = "exceeds" if plus > b.formula_value else "equals" if plus == b.formula_value else "below"
                if b.in_regime and plus > b.formula_value:
                    counterexamples += 1
                print(f"{m:>3} {k:>3} {t:>3} {plus:>8} {b.formula_value:>8} "
                      f"{'yes' if b.in_regime else 'no':>6}  {rel}")
    print(f"counterexamples inside the regime: {counterexamples}")


if __name__ == "__main__":
    main()
