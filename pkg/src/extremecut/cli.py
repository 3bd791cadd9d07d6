"""Command-line interface.

Exit codes: 0 ok, 1 input or internal error, 2 infeasible instance,
3 Monte Carlo failure.  Vertex ids are 1-based on the command line and in
files.  The default seed comes from $EXTREMECUT_SEED (else 0).
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
import time

from .deca import ChainDefect, solve_deca, split_off
from .extreme import MonteCarloFailure, RecursionStats, extreme_sets_tree, retry_cap, tree_to_records
from .flow import connectivity, count_flows
from .formats import format_edges, parse_beta, read_graph
from .generate import random_connected_graph
from .graph import GraphError, build_graph
from .oracles import BRUTE_LIMIT, Infeasible, brute_extreme_sets, verify_solution
from .threshold import BACKENDS, cut_threshold
from .tree import same_family

SEED_ENV = "EXTREMECUT_SEED"


class CliError(Exception):
    """Raised for bad command-line input (exit code 1)."""


def default_seed():
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _emit(obj):
    print(json.dumps(obj))


def _load_beta(arg, n):
    if arg is None:
        return [None] * n
    if os.path.exists(arg):
        with open(arg) as fh:
            return parse_beta(fh.read(), n)
    try:
        b = int(arg)
    except ValueError:
        raise CliError(f"--beta {arg!r} is neither a file nor an integer") from None
    if b < -1:
        raise CliError("--beta constant must be >= 0 or -1")
    return [None if b == -1 else b] * n


def _vertex(arg, n, name):
    if not 1 <= arg <= n:
        raise CliError(f"{name} must be in 1..{n}")
    return arg - 1


# --- commands ----------------------------------------------------------------

def cmd_extreme_sets(args):
    G = read_graph(args.input)
    T = extreme_sets_tree(G, args.seed, args.backend)
    if args.check_oracle:
        if G.n > BRUTE_LIMIT:
            print(f"warning: --check-oracle skipped, n > {BRUTE_LIMIT}", file=sys.stderr)
        elif not same_family(T, brute_extreme_sets(G)):
            print("error: tree disagrees with brute-force extreme sets", file=sys.stderr)
            return 1
    recs = tree_to_records(G, T)
    for r in recs:
        r["members"] = [v + 1 for v in r["members"]]
    if args.json:
        _emit({"nodes": recs})
        return 0

    def show(y, depth):
        r = recs[y]
        tag = "root" if y == T.root else ("leaf" if T.is_leaf(y) else "set")
        members = " ".join(map(str, r["members"]))
        print(f"{'  ' * depth}{tag} {y} delta={r['delta']} members={members}")
        for c in T.children[y]:
            show(c, depth + 1)

    sys.setrecursionlimit(max(1000, 4 * T.size))
    show(T.root, 0)
    return 0


def cmd_augment(args):
    G = read_graph(args.input)
    if args.tau < 0:
        raise CliError("--tau must be >= 0")
    beta = _load_beta(args.beta, G.n)
    sol = solve_deca(G, args.tau, beta, seed=args.seed, backend=args.backend)
    report = None
    if args.verify:
        report = verify_solution(G, args.tau, beta, sol.F, seed=args.seed)
    if args.json:
        out = {"edges": [[u + 1, v + 1, w] for u, v, w in sol.F], "total": sol.total_weight}
        if report is not None:
            out["verification"] = report.as_dict()
        _emit(out)
    else:
        sys.stdout.write(format_edges(sol.F))
        print(f"total {sol.total_weight}")
        if report is not None:
            print("verify " + ("pass" if report.passed else "FAIL") + " " + json.dumps(report.as_dict()))
    if report is not None and not report.passed:
        return 1
    return 0


def cmd_splitoff(args):
    G = read_graph(args.input)
    s = _vertex(args.vertex, G.n, "--vertex")
    F = split_off(G, s, seed=args.seed, backend=args.backend)
    ok = None
    if args.verify:
        others = [v for v in range(G.n) if v != s]
        H = build_graph(G.n, [e for e in G.edges if s not in e[:2]] + F)
        pairs = list(itertools.combinations(others, 2))
        if pairs:
            before = min(connectivity(G, x, y) for x, y in pairs)
            after = min(connectivity(H, x, y) for x, y in pairs)
            ok = before == after
        else:
            ok = True
    if args.json:
        out = {"edges": [[u + 1, v + 1, w] for u, v, w in F], "total": sum(w for *_, w in F)}
        if ok is not None:
            out["steiner_preserved"] = ok
        _emit(out)
    else:
        sys.stdout.write(format_edges(F))
        if ok is not None:
            print("verify " + ("pass" if ok else "FAIL"))
    return 0 if ok in (None, True) else 1


def cmd_cut_threshold(args):
    G = read_graph(args.input)
    s = _vertex(args.source, G.n, "--source")
    if args.phi < 0:
        raise CliError("--phi must be >= 0")
    res = cut_threshold(G, s, args.phi, args.backend)
    inside = sorted(v + 1 for v in res.inside)
    if args.json:
        _emit({"source": args.source, "phi": args.phi, "inside": inside,
               "complement": sorted(v + 1 for v in res.complement)})
    else:
        print(" ".join(map(str, inside)))
    return 0


def bench_once(G, seed, backend, tau=None, tau_offset=1, verify=False):
    """One timed extreme-sets tree plus augmentation; returns a record."""
    stats = RecursionStats()
    t0 = time.perf_counter()
    with count_flows() as tree_flows:
        T = extreme_sets_tree(G, seed, backend, stats)
    t1 = time.perf_counter()
    if tau is None:
        lam = min((T.labels[y] for y in range(T.size) if y != T.root), default=0)
        tau = lam + tau_offset
    beta = [None] * G.n
    with count_flows() as deca_flows:
        sol = solve_deca(G, tau, beta, seed=seed, backend=backend, tree=T)
    t2 = time.perf_counter()
    rec = {
        "n": G.n,
        "m": G.m,
        "seed": seed,
        "backend": backend,
        "tau": tau,
        "weight": sol.total_weight,
        "tree_nodes": T.size,
        "max_flow_calls": tree_flows.calls,
        "finish_flow_calls": deca_flows.calls,
        "recursion_depth": stats.max_depth,
        "subproblems": stats.subproblems,
        "sampling_attempts": stats.attempts,
        "max_retries": stats.max_retries,
        "retry_cap": retry_cap(max(G.n, 2)),
        "chain_batches": sol.audit.get("batches", 0),
    }
    if verify:
        rep = verify_solution(G, tau, beta, sol.F, expected_weight=None, seed=seed)
        rec["verification"] = rep.as_dict()
    rec["seconds"] = {"tree": round(t1 - t0, 4), "augment": round(t2 - t1, 4), "total": round(t2 - t0, 4)}
    return rec


def cmd_bench(args):
    if args.input:
        G = read_graph(args.input)
    else:
        n, m, wmax = args.random
        G = random_connected_graph(n, m, wmax, args.seed)
    if args.repeat < 1:
        raise CliError("--repeat must be >= 1")
    status = 0
    for i in range(args.repeat):
        rec = bench_once(G, args.seed, args.backend, args.tau, args.tau_offset, args.verify)
        rec["repeat"] = i
        _emit(rec)
        sys.stdout.flush()
        if args.verify and not rec["verification"]["pass"]:
            status = 1
    return status


# --- parser ------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="extremecut", description="Extreme sets, connectivity augmentation and splitting off.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, backend=True):
        sp.add_argument("--seed", type=int, default=None, help=f"random seed (default ${SEED_ENV} or 0)")
        sp.add_argument("--json", action="store_true", help="print one JSON object")
        if backend:
            sp.add_argument("--backend", choices=BACKENDS, default="naive", help="cut-threshold backend")

    sp = sub.add_parser("extreme-sets", help="print the extreme sets tree")
    sp.add_argument("--input", required=True)
    sp.add_argument("--check-oracle", action="store_true", help="compare with brute force (n <= 16)")
    common(sp)
    sp.set_defaults(func=cmd_extreme_sets)

    sp = sub.add_parser("augment", help="degree-constrained connectivity augmentation")
    sp.add_argument("--input", required=True)
    sp.add_argument("--tau", type=int, required=True)
    sp.add_argument("--beta", help="degree bound file, or one integer for all vertices (-1 = unbounded)")
    sp.add_argument("--verify", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_augment)

    sp = sub.add_parser("splitoff", help="split off all edges at a vertex")
    sp.add_argument("--input", required=True)
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--verify", action="store_true", help="check Steiner connectivity by pairwise flows")
    common(sp)
    sp.set_defaults(func=cmd_splitoff)

    sp = sub.add_parser("cut-threshold", help="vertices t with lambda(s, t) <= phi")
    sp.add_argument("--input", required=True)
    sp.add_argument("--source", type=int, required=True)
    sp.add_argument("--phi", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_cut_threshold)

    sp = sub.add_parser("bench", help="timed extreme-sets tree plus one augmentation")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--input")
    src.add_argument("--random", type=int, nargs=3, metavar=("N", "M", "WMAX"))
    sp.add_argument("--repeat", type=int, default=1)
    sp.add_argument("--tau", type=int, default=None, help="target (default: min cut + offset)")
    sp.add_argument("--tau-offset", type=int, default=1)
    sp.add_argument("--verify", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = default_seed()
        return args.func(args)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except MonteCarloFailure as exc:
        print(f"monte carlo failure: {exc}", file=sys.stderr)
        return 3
    except (CliError, GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ChainDefect, RecursionError, ValueError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
