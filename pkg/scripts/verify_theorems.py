"""Solve small multiset Kneser graphs exactly and compare with the closed forms.

    python scripts/verify_theorems.py [--max-vertices 400] [--time-limit 60]

Prints one row per (m, k, t) instance: exact independence number, the bound
that applies there, and whether the two agree.
"""

import argparse
from dataclasses import dataclass

from multiset_ekr.families import applicable_bound
from multiset_ekr.kneser import GraphSpec, vertex_count
from multiset_ekr.solver import max_family


@dataclass(frozen=True)
class Config:
    max_vertices: int = 400
    max_m: int = 8
    max_k: int = 7
    max_t: int = 2
    time_limit: float = 60.0


def instances(cfg):
    for t in range(1, cfg.max_t + 1):
        for k in range(t, cfg.max_k + 1):
            for m in range(2, cfg.max_m + 1):
                spec = GraphSpec.multiset(m, k, t)
                if vertex_count(spec) <= cfg.max_vertices:
                    yield spec


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-vertices", type=int, default=Config.max_vertices)
    p.add_argument("--time-limit", type=float, default=Config.time_limit)
    args = p.parse_args(argv)
    cfg = Config(max_vertices=args.max_vertices, time_limit=args.time_limit)

    print(f"{'m':>3} {'k':>3} {'t':>3} {'V':>5} {'alpha':>6} {'bound':>12} {'value':>6}  status")
    for spec in instances(cfg):
        m, k, t = spec.universe, spec.k, spec.t
        res = max_family(spec, time_limit=cfg.time_limit)
        b = applicable_bound(m, k, t)
        if not res.proved_optimal:
            status = "unsolved"
        elif res.optimum == b.formula_value:
            status = "equal"
        else:
            status = "exceeds" if res.optimum > b.formula_value else "below"
            if b.in_regime:
                status += " (in regime!)"
        print(f"{m:>3} {k:>3} {t:>3} {vertex_count(spec):>5} {res.optimum:>6} "
              f"{b.formula_name:>12} {b.formula_value:>6}  {status}")


if __name__ == "__main__":
    main()
