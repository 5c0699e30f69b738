"""Command-line front end for the freepoint pipelines.

Every invocation prints one JSON document: a `manifest` block (full
parameter echo, fixture digests, seed, thread count, version, wall
time) and a `result` block produced by the owning module.  Reruns with
the same manifest differ only in the manifest's wall_ms field.  All
rationals appear as {"num": ..., "den": ...} strings; no floats.

Exit codes:
    0   success, every checked claim holds
    1   a mathematical claim failed (counterexample found)
    2   usage or input error (bad flags, malformed fixture or file)
    3   a configured budget was exceeded

`--threads` affects wall time only, never output bytes; `--seed` pins
all randomized strategies.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from importlib import metadata as _metadata
from math import comb

from .errors import BudgetExceeded, Error
from .fields import extended_tower
from .forms import ParamSet
from .search import SearchConfig, load_witness_cases, fixture_digests, run_search, verify_witness
from .bounds import (
    check_claim_chain,
    check_lemma_chain,
    check_qd_case,
    decimal_of,
    exact_json,
    psi,
    theta,
)
from .factor import _default_tower, census
from .linsys import LinearSystem, build_l_irr, build_l_red, verify_members

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _version() -> str:
    try:
        return _metadata.version("artifact")
    except _metadata.PackageNotFoundError:
        return "0.0.0"


@dataclass
class RunManifest:
    """Reproducibility header embedded in every output document."""

    subcommand: str
    parameters: dict
    fixtures: dict
    seed: int | None
    threads: int
    version: str
    wall_ms: int

    def to_dict(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "parameters": self.parameters,
            "fixtures": self.fixtures,
            "seed": self.seed,
            "threads": self.threads,
            "version": self.version,
            "wall_ms": self.wall_ms,
        }


def _render_table(doc: dict, out) -> None:
    """Flat key-path rendering of the JSON document (same data, no
    separate computation)."""

    def walk(prefix: str, node) -> None:
        if isinstance(node, dict):
            for k in sorted(node):
                walk(f"{prefix}.{k}" if prefix else str(k), node[k])
        elif isinstance(node, list):
            if not node:
                print(f"{prefix} = []", file=out)
            for i, v in enumerate(node):
                walk(f"{prefix}[{i}]", v)
        else:
            print(f"{prefix} = {node}", file=out)

    walk("", doc)


def _emit(args, subcommand: str, parameters: dict, result: dict,
          fixtures: dict | None = None, seed: int | None = None,
          threads: int = 1, started: float = 0.0) -> None:
    manifest = RunManifest(
        subcommand,
        parameters,
        fixtures or {},
        seed,
        threads,
        _version(),
        int((time.perf_counter() - started) * 1000),
    )
    doc = {"manifest": manifest.to_dict(), "result": result}
    out_path = getattr(args, "out", None)
    handle = open(out_path, "w", encoding="utf-8") if out_path else sys.stdout
    try:
        if getattr(args, "format", "json") == "table":
            _render_table(doc, handle)
        else:
            json.dump(doc, handle, indent=2, sort_keys=True)
            handle.write("\n")
    finally:
        if out_path:
            handle.close()


def _cmd_verify_exceptional(args) -> int:
    started = time.perf_counter()
    cases = load_witness_cases()
    if args.case != "all":
        want = int(args.case)
        cases = [c for c in cases if c.case == want]
        if not cases:
            raise Error(f"no witness case numbered {want}")
    entries = []
    all_free = True
    for case in cases:
        cert = verify_witness(case)
        entries.append(
            {
                "case": case.case,
                "label": case.label,
                "params": {"n": case.n, "d": case.d, "q": case.q},
                "verdict": cert.verdict,
                "free": cert.free,
            }
        )
        all_free = all_free and cert.free
    result = {"cases": entries, "all_free": all_free}
    _emit(args, "verify-exceptional", {"case": args.case}, result,
          fixtures=fixture_digests(), started=started)
    return EXIT_OK if all_free else EXIT_COUNTEREXAMPLE


def _cmd_find_free_point(args) -> int:
    started = time.perf_counter()
    params = ParamSet(args.n, args.d, args.q)
    tower, base_level = _default_tower(args.q)
    ext = extended_tower(tower, params.m)
    config = SearchConfig(strategy=args.strategy, seed=args.seed, budget=args.budget)
    report = run_search(params, ext, config, base_level)
    parameters = {
        "n": args.n, "d": args.d, "q": args.q,
        "strategy": args.strategy, "budget": args.budget,
    }
    _emit(args, "find-free-point", parameters, report.to_dict(),
          seed=args.seed, started=started)
    if report.theorem_contradicted:
        return EXIT_COUNTEREXAMPLE
    if report.found or report.exhausted_space:
        return EXIT_OK
    return EXIT_BUDGET


def _cmd_census(args) -> int:
    started = time.perf_counter()
    params = ParamSet(args.n, args.d, args.q)
    report = census(
        params,
        budget=args.budget,
        histogram=args.histogram,
        threads=args.threads,
        force_generic=args.force_generic,
    )
    parameters = {
        "n": args.n, "d": args.d, "q": args.q,
        "budget": args.budget, "histogram": args.histogram,
        "force_generic": args.force_generic,
    }
    _emit(args, "census", parameters, report.to_dict(),
          threads=args.threads, started=started)
    if not (report.t1_within_bound and report.t2_within_bound):
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def _parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    return int(lo), int(hi)


def _cmd_bounds(args) -> int:
    started = time.perf_counter()
    parameters: dict = {}
    result: dict = {}
    code = EXIT_OK
    if args.grid:
        nrange = _parse_range(args.grid[0])
        drange = _parse_range(args.grid[1])
        qs = [int(tok) for tok in args.grid[2].split(",")]
        parameters = {"grid": {"n": list(nrange), "d": list(drange), "q": qs}}
        points = 0
        lemma_failures = []
        claim_failures = []
        for n in range(nrange[0], nrange[1] + 1):
            for d in range(drange[0], drange[1] + 1):
                for q in qs:
                    points += 1
                    rep = check_lemma_chain(n, d, q)
                    for bad in rep.failed():
                        lemma_failures.append(
                            {"n": n, "d": d, "q": q, "check": bad.name}
                        )
                    if d >= 3 and q >= 3:
                        crep = check_claim_chain(n, d, q, comb(n + d, n))
                        if not crep.all_pass:
                            claim_failures.append(
                                {"n": n, "d": d, "q": q,
                                 "steps": [s.name for s in crep.steps if not s.holds]}
                            )
        result = {
            "points": points,
            "lemma_failures": lemma_failures,
            "claim_failures": claim_failures,
            "all_pass": not lemma_failures and not claim_failures,
        }
        if not result["all_pass"]:
            code = EXIT_COUNTEREXAMPLE
    elif args.theta:
        q, d = args.theta
        value = theta(q, d)
        parameters = {"theta": {"q": q, "d": d}}
        result = {"theta": exact_json(value), "decimal": decimal_of(value, 3)}
    elif args.psi:
        q, d = args.psi
        value = psi(q, d)
        parameters = {"psi": {"q": q, "d": d}}
        result = {"psi": exact_json(value), "decimal": decimal_of(value, 3)}
    else:
        if args.n is None or args.d is None or args.q is None:
            raise Error("bounds needs --n/--d/--q, --grid, --theta or --psi")
        parameters = {"n": args.n, "d": args.d, "q": args.q}
        rep = check_lemma_chain(args.n, args.d, args.q)
        result = rep.to_dict()
        if not rep.all_pass:
            code = EXIT_COUNTEREXAMPLE
    _emit(args, "bounds", parameters, result, started=started)
    return code


def _cmd_claim_chain(args) -> int:
    started = time.perf_counter()
    if args.qd_case:
        report = check_qd_case(args.n, args.d, args.q)
        parameters = {"n": args.n, "d": args.d, "q": args.q, "qd_case": True}
        _emit(args, "claim-chain", parameters, report.to_dict(), started=started)
        return EXIT_OK if report.holds else EXIT_COUNTEREXAMPLE
    m = comb(args.n + args.d, args.n)
    report = check_claim_chain(args.n, args.d, args.q, m)
    parameters = {"n": args.n, "d": args.d, "q": args.q, "qd_case": False}
    _emit(args, "claim-chain", parameters, report.to_dict(), started=started)
    return EXIT_OK if report.all_pass else EXIT_COUNTEREXAMPLE


def _cmd_linsys(args) -> int:
    started = time.perf_counter()
    if args.action == "build":
        params = ParamSet(args.n, args.d, args.q)
        if args.kind == "red":
            system = build_l_red(params)
        else:
            system = build_l_irr(params, seed=args.seed, budget=args.budget)
        parameters = {
            "action": "build", "kind": args.kind,
            "n": args.n, "d": args.d, "q": args.q,
        }
        _emit(args, "linsys", parameters, system.to_dict(),
              seed=args.seed, started=started)
        return EXIT_OK
    # verify
    with open(args.system, encoding="utf-8") as handle:
        doc = json.load(handle)
    system = LinearSystem.from_dict(doc.get("result", doc))
    report = verify_members(system, args.expect, budget=args.budget,
                            threads=args.threads)
    parameters = {
        "action": "verify", "system": args.system, "expect": args.expect,
        "budget": args.budget,
    }
    _emit(args, "linsys", parameters, report.to_dict(),
          threads=args.threads, started=started)
    return EXIT_OK if report.all_match else EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freepoint",
        description="Free points, hypersurface censuses and exact bound checks "
                    "over finite fields",
    )
    parser.add_argument("--format", choices=("json", "table"), default="json",
                        help="output rendering (default: json)")
    parser.add_argument("--out", help="write the document to a file instead of stdout")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("verify-exceptional",
                       help="certify the six recorded witness points free")
    p.add_argument("--case", default="all",
                   help="witness case number 1..6, or 'all' (default)")
    p.set_defaults(func=_cmd_verify_exceptional)

    p = sub.add_parser("find-free-point", help="search for a free point")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--strategy", choices=("sweep", "exhaustive", "random"),
                   default="sweep")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10**6,
                   help="maximum candidates to test (default 1e6)")
    p.set_defaults(func=_cmd_find_free_point)

    p = sub.add_parser("census", help="classify every scalar class of forms")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--budget", type=int, default=10**7)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--histogram", action="store_true",
                   help="include the point-count histogram")
    p.add_argument("--force-generic", action="store_true",
                   help="skip the vectorized path (cross-check aid)")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("bounds", help="exact inequality checks and bound values")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--grid", nargs=3, metavar=("NMIN:NMAX", "DMIN:DMAX", "QLIST"),
                   help="sweep the whole grid, e.g. --grid 2:8 3:40 3,4,5,7,9")
    p.add_argument("--theta", nargs=2, type=int, metavar=("Q", "D"),
                   help="print the reducibility tail majorant at (q, d)")
    p.add_argument("--psi", nargs=2, type=int, metavar=("Q", "D"),
                   help="print the principal tail majorant at (q, d)")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("claim-chain",
                       help="the final inequality chain, step by step")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--qd-case", action="store_true",
                   help="check the q > d divisibility comparison instead")
    p.set_defaults(func=_cmd_claim_chain)

    p = sub.add_parser("linsys", help="build or verify extremal linear systems")
    act = p.add_subparsers(dest="action", required=True)
    b = act.add_parser("build")
    b.add_argument("--kind", choices=("red", "irr"), required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--budget", type=int, default=10**7)
    b.set_defaults(func=_cmd_linsys)
    v = act.add_parser("verify")
    v.add_argument("--system", required=True, help="path to a build document")
    v.add_argument("--expect", choices=("reducible", "irreducible"), required=True)
    v.add_argument("--budget", type=int, default=10**6)
    v.add_argument("--threads", type=int, default=1)
    v.set_defaults(func=_cmd_linsys)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except Error as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
