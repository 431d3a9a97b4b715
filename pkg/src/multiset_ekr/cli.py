"""Command-line front end: ``mekr <command> [options]``.

Every command emits a JSON report (or a plain-text rendering with
``--format text``).  Exit codes: 0 all checks pass, 1 a checked claim
failed, 2 usage error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from typing import Any

from . import __version__
from .bijection import check_homomorphism, dump_map
from .compression import ExchangeError, compress_to_fixpoint
from .families import (
    above_half_family,
    applicable_bound,
    conjecture_bound,
    family_from_json,
    frankl_plus_family,
    t_star_family,
    theorem1_bound,
    theorem2_bound,
)
from .kneser import GraphSpec, GraphTooLarge, parse_dimacs, vertex_count, write_export
from .solver import (
    certified_lower_bound,
    enumerate_maximum_families,
    max_family,
)

EXIT_OK, EXIT_CLAIM, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def report(command: str, parameters: dict, results: dict, checks: list[dict]) -> dict:
    return {
        "command": command,
        "parameters": parameters,
        "results": results,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
        "provenance": {
            "tool": "multiset-ekr",
            "version": __version__,
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        },
    }


def check(name: str, passed: bool, detail: str = "") -> dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


# commands


def cmd_bound(m: int, k: int, t: int = 1, which: str = "auto") -> dict:
    if which == "auto":
        bounds = [applicable_bound(m, k, t)]
    elif which == "theorem1":
        bounds = [theorem1_bound(m, k)]
    elif which == "theorem2":
        bounds = [theorem2_bound(m, k)]
    elif which == "conjecture":
        bounds = [conjecture_bound(m, k, t)]
    elif which == "all":
        bounds = [theorem1_bound(m, k), theorem2_bound(m, k), conjecture_bound(m, k, t)]
    else:
        raise UsageError(f"unknown theorem selector {which!r}")
    return report("bound", {"m": m, "k": k, "t": t, "theorem": which},
                  {"bounds": [b.to_json() for b in bounds]}, [])


def cmd_verify(m: int, k: int, t: int = 1, cap: int = 10_000) -> dict:
    spec = GraphSpec.multiset(m, k, t)
    bound = applicable_bound(m, k, t)
    res = max_family(spec)
    census = enumerate_maximum_families(spec, cap=cap, optimum=res.optimum)
    fams = census.all_families()
    results: dict[str, Any] = {
        "vertices": vertex_count(spec),
        "optimum": res.optimum,
        "bound": bound.to_json(),
        "maximum_families": len(fams),
        "census_complete": census.complete,
        "labels": sorted({"+".join(lab) for lab in census.labels}),
        "witness": res.witness.to_json(),
    }
    checks = [check("census complete", census.complete, f"cap {cap}")]
    if t == 1:
        checks.append(check("optimum equals bound", res.optimum == bound.formula_value,
                            f"{res.optimum} vs {bound.formula_name} {bound.formula_value}"))
        if m > k + 1:
            stars = sum("star" in lab for lab in census.labels)
            checks.append(check("all maxima are stars", stars == len(fams) == m,
                                f"{stars} stars among {len(fams)} maxima, expected {m}"))
        elif m == k + 1:
            non_star = sum("star" not in lab for lab in census.labels)
            results["non_star_maxima"] = non_star
        elif m % 2:
            upper = above_half_family(m, k)
            checks.append(check("unique maximum is the above-half family",
                                fams == [upper], f"{len(fams)} maxima"))
        else:
            ok = all("above-half-plus-selection" in lab for lab in census.labels)
            checks.append(check("maxima are above-half plus a half selection", ok and bool(fams),
                                f"{len(fams)} maxima"))
    else:
        # conjecture regime: informational only, never a failed claim
        results["conjecture"] = {
            "in_regime": bound.in_regime,
            "optimum_minus_bound": res.optimum - bound.formula_value,
            "consistent": (not bound.in_regime) or res.optimum == bound.formula_value,
        }
    return report("verify", {"m": m, "k": k, "t": t, "cap": cap}, results, checks)


def _parse_range(text: str) -> range:
    try:
        if ":" in text:
            lo, hi = text.split(":")
            return range(int(lo), int(hi) + 1)
        v = int(text)
        return range(v, v + 1)
    except ValueError:
        raise UsageError(f"bad range {text!r}; use N or LO:HI") from None


def _conjecture_row(args: tuple[int, int, int, int, float | None]) -> dict:
    m, k, t, solve_limit, time_limit = args
    bound = conjecture_bound(m, k, t)
    frankl = len(frankl_plus_family(m, k, t))
    b = bound.formula_value
    rel = "exceeds" if frankl > b else "equals" if frankl == b else "below"
    row = {"m": m, "k": k, "t": t, "bound": b, "in_regime": bound.in_regime,
           "frankl_plus": frankl, "relation": rel,
           "consistent": not (bound.in_regime and frankl > b)}
    spec = GraphSpec.multiset(m, k, t)
    if solve_limit and vertex_count(spec) <= solve_limit:
        seed = frankl_plus_family(m, k, t) if frankl >= b else t_star_family(m, k, [1] * t)
        _, res = certified_lower_bound(spec, seed, node_limit=None, time_limit=time_limit)
        row["alpha"] = res.optimum
        row["alpha_proved"] = res.proved_optimal
    return row


def cmd_conjecture(m_range: range, k_range: range, t_range: range, threads: int = 1,
                   solve_limit: int = 0, time_limit: float | None = None) -> dict:
    jobs = [(m, k, t, solve_limit, time_limit)
            for t in t_range for k in k_range for m in m_range
            if 1 <= t and t + 1 <= k and t + 2 <= m]
    if threads > 1:
        with ProcessPoolExecutor(threads) as pool:
            rows = list(pool.map(_conjecture_row, jobs))
    else:
        rows = [_conjecture_row(j) for j in jobs]
    checks = [check("construction never beats the bound inside the conjecture regime",
                    all(r["consistent"] for r in rows),
                    f"{sum(not r['consistent'] for r in rows)} violations")]
    return report("conjecture", {"m": str(m_range), "k": str(k_range), "t": str(t_range)},
                  {"rows": rows}, checks)


def cmd_homomorphism(m: int, k: int, dump: str | None = None) -> dict:
    r = check_homomorphism(m, k)
    if dump:
        with open(dump, "w") as fh:
            fh.write(dump_map(m, k))
    checks = [check("bijective", r.bijective), check("support equals trace on [m]", r.support_ok),
              check("edge preserving", r.edge_preserving)]
    return report("homomorphism", {"m": m, "k": k}, r.to_json(), checks)


def cmd_export(spec: GraphSpec, path: str, fmt: str) -> dict:
    side = write_export(spec, path, fmt)
    return report("export", {"spec": spec.to_json(), "format": fmt},
                  {"path": path, "manifest": side, "vertices": vertex_count(spec)}, [])


def cmd_compress(path: str, m: int | None = None, k: int | None = None) -> dict:
    with open(path) as fh:
        f = family_from_json(fh.read(), m, k)
    out, traces = compress_to_fixpoint(f)
    return report("compress", {"input": path, "m": f.m, "k": f.k},
                  {"input_size": len(f), "output_size": len(out),
                   "family": out.to_json(), "trace": [tr.to_json() for tr in traces]},
                  [check("size non-decreasing", len(out) >= len(f))])


def cmd_solve(spec: GraphSpec | None, dimacs: str | None, node_limit: int | None,
              time_limit: float | None) -> dict:
    if dimacs is not None:
        with open(dimacs) as fh:
            target = parse_dimacs(fh.read())
        params: dict[str, Any] = {"dimacs": dimacs}
    else:
        target = spec
        params = {"spec": spec.to_json()}
    res = max_family(target, node_limit=node_limit, time_limit=time_limit)
    return report("solve", params, res.to_json(), [])


def cmd_certify(m: int, k: int, t: int, node_limit: int | None, time_limit: float | None) -> dict:
    """Certified lower bound from the best known construction, plus a bounded exact search."""
    spec = GraphSpec.multiset(m, k, t)
    candidates = [("t-star", t_star_family(m, k, [1] * t))]
    if t + 2 <= m and t + 1 <= k:
        candidates.append(("frankl-plus", frankl_plus_family(m, k, t)))
    name, fam = max(candidates, key=lambda c: len(c[1]))
    verdict, res = certified_lower_bound(spec, fam, node_limit=node_limit, time_limit=time_limit)
    results = {
        "construction": name,
        "certified_lower_bound": len(fam),
        "certificate": verdict.to_json(),
        "family": fam.to_json(),
        "search": {"best": res.optimum, "proved_optimal": res.proved_optimal, "nodes": res.nodes},
        "conjecture_bound": conjecture_bound(m, k, t).to_json(),
    }
    return report("certify", {"m": m, "k": k, "t": t, "node_limit": node_limit},
                  results, [check("certificate valid", verdict.valid, verdict.reason)])


# rendering and entry point


def render_text(rep: dict) -> str:
    lines = [f"{rep['command']}  {json.dumps(rep['parameters'])}"]
    res = rep["results"]
    if rep["command"] == "conjecture":
        cols = ["m", "k", "t", "bound", "in_regime", "frankl_plus", "relation", "alpha"]
        lines.append("  ".join(f"{c:>11}" for c in cols))
        for r in res["rows"]:
            lines.append("  ".join(f"{str(r.get(c, '')):>11}" for c in cols))
    else:
        for key, val in res.items():
            if key in ("family", "witness") and isinstance(val, list) and len(val) > 8:
                val = f"<{len(val)} members>"
            lines.append(f"  {key}: {json.dumps(val) if not isinstance(val, str) else val}")
    for c in rep["checks"]:
        lines.append(f"  [{'PASS' if c['passed'] else 'FAIL'}] {c['name']}  {c['detail']}")
    lines.append("PASS" if rep["passed"] else "FAIL")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--threads", type=int, default=1,
                        help="worker processes for independent grid points (output unchanged)")

    mk = argparse.ArgumentParser(add_help=False)
    mk.add_argument("--m", type=int, required=True)
    mk.add_argument("--k", type=int, required=True)
    mk.add_argument("--t", type=int, default=1)

    p = argparse.ArgumentParser(prog="mekr", description="Erdos-Ko-Rado checks for k-multisets.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", parents=[common, mk], help="closed-form bounds and regimes")
    b.add_argument("--theorem", choices=["auto", "theorem1", "theorem2", "conjecture", "all"],
                   default="auto")

    v = sub.add_parser("verify", parents=[common, mk], help="exact optimum and uniqueness census")
    v.add_argument("--cap", type=int, default=10_000)

    c = sub.add_parser("conjecture", parents=[common], help="t-star vs (t+2)-set construction grid")
    c.add_argument("--m-range", default="4:10")
    c.add_argument("--k-range", default="2:6")
    c.add_argument("--t-range", default="1:3")
    c.add_argument("--solve-limit", type=int, default=0,
                   help="also solve exactly when the graph has at most this many vertices")
    c.add_argument("--time-limit", type=float, default=None)

    h = sub.add_parser("homomorphism", parents=[common, mk], help="check the set->multiset map")
    h.add_argument("--dump-map", help="write 'subset-rank multiset-rank' pairs to this file")

    e = sub.add_parser("export", parents=[common, mk], help="write DIMACS / edge list + manifest")
    kind = e.add_mutually_exclusive_group()
    kind.add_argument("--multiset", dest="kind", action="store_const", const="multiset")
    kind.add_argument("--set", dest="kind", action="store_const", const="set")
    dest = e.add_mutually_exclusive_group(required=True)
    dest.add_argument("--dimacs", metavar="PATH")
    dest.add_argument("--edge-list", metavar="PATH")
    e.set_defaults(kind="multiset")

    cp = sub.add_parser("compress", parents=[common], help="support exchange to a fixpoint")
    cp.add_argument("--in", dest="infile", required=True)
    cp.add_argument("--m", type=int)
    cp.add_argument("--k", type=int)

    s = sub.add_parser("solve", parents=[common], help="maximum independent set of a spec or DIMACS file")
    s.add_argument("--dimacs", metavar="PATH")
    s.add_argument("--m", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--t", type=int, default=1)
    s.add_argument("--set", action="store_true", help="K(n,k,t) with n=--m instead of M(m,k,t)")
    s.add_argument("--node-limit", type=int)
    s.add_argument("--time-limit", type=float)

    ce = sub.add_parser("certify", parents=[common, mk], help="certified lower bound + bounded search")
    ce.add_argument("--node-limit", type=int, default=200_000)
    ce.add_argument("--time-limit", type=float)
    return p


def run(args: argparse.Namespace) -> dict:
    cmd = args.command
    if cmd == "bound":
        return cmd_bound(args.m, args.k, args.t, args.theorem)
    if cmd == "verify":
        return cmd_verify(args.m, args.k, args.t, args.cap)
    if cmd == "conjecture":
        return cmd_conjecture(_parse_range(args.m_range), _parse_range(args.k_range),
                              _parse_range(args.t_range), args.threads, args.solve_limit,
                              args.time_limit)
    if cmd == "homomorphism":
        return cmd_homomorphism(args.m, args.k, args.dump_map)
    if cmd == "export":
        spec = GraphSpec(args.kind, args.m, args.k, args.t)
        if args.dimacs:
            return cmd_export(spec, args.dimacs, "dimacs")
        return cmd_export(spec, args.edge_list, "edge_list")
    if cmd == "compress":
        return cmd_compress(args.infile, args.m, args.k)
    if cmd == "solve":
        spec = None
        if args.dimacs is None:
            if args.m is None or args.k is None:
                raise UsageError("solve needs --dimacs PATH or --m and --k")
            spec = GraphSpec("set" if args.set else "multiset", args.m, args.k, args.t)
        return cmd_solve(spec, args.dimacs, args.node_limit, args.time_limit)
    if cmd == "certify":
        return cmd_certify(args.m, args.k, args.t, args.node_limit, args.time_limit)
    raise UsageError(f"unknown command {cmd}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep = run(args)
    except GraphTooLarge as exc:
        print(f"mekr: resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (UsageError, ExchangeError, ValueError, OSError) as exc:
        print(f"mekr: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render_text(rep) if args.format == "text" else json.dumps(rep, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if rep["passed"] else EXIT_CLAIM


if __name__ == "__main__":
    sys.exit(main())
