"""Command-line entry point: ``hyperslice <command> ...``.

Exit codes: 0 ok, 1 a checked property failed, 2 bad input, 3 a search
budget ran out.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction
from itertools import combinations, product
from math import sqrt

import numpy as np

from . import generators as gen
from .checks import run_checks
from .compression import ratio_deficit, ratio_matching
from .core import GroundPartition, KGraph, down_closure, level_counts, local_lym_margin
from .errors import HypersliceError, HypothesisViolatedError, InvalidQueryError, ParseError
from .khg import format_khg, read_khg
from .matchings import matching_number, max_fractional_matching
from .reduced import reduced_entropy, slice_quality_report, weighted_reduced
from .report import write_report
from .slices import DensityVector, PartitionFamily, sample_slice, slice_probability, trivial_slice
from .tight import search_tight, tight_components, verify_tight

OK, VIOLATED, BAD_INPUT, BUDGET = 0, 1, 2, 3


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("HYPERSLICE_THREADS", "1")))
    except ValueError:
        return 1


def _grid(text: str) -> list:
    """``lo:hi:step`` (inclusive) as exact rationals."""
    try:
        lo, hi, step = (Fraction(x) for x in text.split(":"))
    except ValueError:
        raise InvalidQueryError(f"grid must look like lo:hi:step, got {text!r}") from None
    if step <= 0 or lo > hi:
        raise InvalidQueryError("grid needs lo <= hi and step > 0")
    out = []
    x = lo
    while x <= hi:
        out.append(x)
        x += step
    return out


def _child_seed(seed: int, *path: int) -> int:
    """Independent 32-bit seed for a sub-experiment, derived from the root seed."""
    return int(np.random.SeedSequence([seed, *path]).generate_state(1)[0])


def _emit(args, data, fmt=None, columns=None):
    if getattr(args, "timestamps", False):
        # JSON reports only; CSV rows stay comparable across runs
        if isinstance(data, dict):
            data = {**data, "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds")}
    blob = write_report(data, fmt or args.format, columns)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(blob)
    else:
        sys.stdout.buffer.write(blob)
        sys.stdout.flush()


# -- commands -----------------------------------------------------------

def cmd_analyze(args) -> int:
    G = read_khg(args.file)
    labels = tight_components(G)
    nu, wit = matching_number(G)
    fm = max_fractional_matching(G)
    C = down_closure(G)
    data = {
        "k": G.k, "n": G.n, "edges": len(G),
        "components": labels.count,
        "component_sizes": [len(c) for c in labels.components()],
        "matching_number": nu,
        "matching": [list(e) for e in wit.edges],
        "fractional_weight": fm.weight,
        "fractional_matching": fm.to_json(),
        "level_counts": list(level_counts(C)),
        "lym_margins": {str(i): local_lym_margin(C, i) for i in range(1, G.k + 1)} if G.n >= G.k else {},
    }
    t = args.clusters if args.clusters else (G.k if G.n % G.k == 0 else None)
    if t and G.n % t == 0 and t >= G.k:
        P = GroundPartition([v % t for v in range(G.n)], t)
        R = weighted_reduced(G, trivial_slice(P, G.k))
        data["clusters"] = t
        data["reduced_weights"] = R.to_json()
        data["entropy"] = f"{reduced_entropy(R):.12f}"
    else:
        data["clusters"] = None
        data["entropy"] = None
    _emit(args, data)
    return OK


def cmd_search(args) -> int:
    G = read_khg(args.file)
    res = search_tight(G, args.goal, args.length, args.budget, args.min_cycle_length)
    data = {"goal": args.goal, "status": res.status, "expansions": res.expansions,
            "witness": list(res.witness.vertices) if res.witness else None,
            "vertices": res.vertex_count}
    _emit(args, data)
    return BUDGET if res.status == "budget-exhausted" else OK


def _eg_cell(job):
    n, k, p, seed, budget = job
    G = gen.random_kgraph(n, k, p, seed)
    res = search_tight(G, "longest-cycle", budget=budget)
    if res.witness is not None and not verify_tight(res.witness.vertices, G, cyclic=True):
        raise AssertionError("sweep witness failed validation")
    return {"p": p, "seed": seed, "edges": len(G), "longest_cycle": res.vertex_count}, res.status


def _partite_cell(job):
    t, k, p, seed, budget = job
    rng = np.random.default_rng(seed)
    P = GroundPartition.consecutive(t * k, k)
    full = gen.complete_partite([t] * k, k)
    keep = rng.random(len(full)) < float(p)
    G = KGraph(k, t * k, (e for e, f in zip(full.edges, keep) if f))
    es = G.edge_set
    low = None
    for j in range(k):
        others = [q for q in range(k) if q != j]
        for base in (tuple(sorted(c)) for c in _transversals(P, others)):
            deg = sum(1 for v in P.parts[j] if tuple(sorted(base + (v,))) in es)
            low = deg if low is None else min(low, deg)
    res = search_tight(G, "longest-cycle", budget=budget)
    return {"p": p, "seed": seed, "edges": len(G), "min_codegree": low or 0,
            "longest_cycle": res.vertex_count}, res.status


def _transversals(P, parts):
    return product(*(P.parts[q] for q in parts))


def _sweep(args, worker, jobs, columns) -> int:
    threads = min(_threads(), len(jobs)) if jobs else 1
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(worker, jobs))
    else:
        results = [worker(j) for j in jobs]
    rows = [r for r, _ in results]
    rows.sort(key=lambda r: (r["p"], r["seed"]))
    _emit(args, rows, columns=columns)
    return BUDGET if any(s == "budget-exhausted" for _, s in results) else OK


def cmd_sweep_eg(args) -> int:
    jobs = [(args.n, args.k, p, _child_seed(args.seed, i, j), args.budget)
            for i, p in enumerate(_grid(args.p)) for j in range(args.trials)]
    return _sweep(args, _eg_cell, jobs, ["p", "seed", "edges", "longest_cycle"])


def cmd_sweep_partite(args) -> int:
    jobs = [(args.t, args.k, p, _child_seed(args.seed, i, j), args.budget)
            for i, p in enumerate(_grid(args.p)) for j in range(args.trials)]
    return _sweep(args, _partite_cell, jobs, ["p", "seed", "edges", "min_codegree", "longest_cycle"])


def cmd_slice_stats(args) -> int:
    if args.n % args.t:
        raise InvalidQueryError("n must be divisible by t")
    dens = DensityVector(args.k, {i: Fraction(1, args.inv_d) for i in range(2, args.k)})
    P = GroundPartition.consecutive(args.n, args.t)
    F = PartitionFamily.random(P, args.k, dens, seed=_child_seed(args.seed, 0))
    rng = np.random.default_rng(_child_seed(args.seed, 1))
    counts = {}
    first = None
    for _ in range(args.samples):
        S = sample_slice(F, rng)
        if first is None:
            first = S
        for i, level in S.labels.items():
            for A, lab in level.items():
                key = (i, A, lab)
                counts[key] = counts.get(key, 0) + 1
    freqs = []
    ok = True
    for i in range(2, args.k):
        m = dens.cells(i)
        q = 1 / m
        sigma = sqrt(q * (1 - q) / args.samples) if args.samples else 0.0
        for A in combinations(range(args.t), i):
            for lab in range(1, m + 1):
                f = counts.get((i, A, lab), 0) / args.samples if args.samples else 0.0
                good = abs(f - q) <= 3 * sigma + 1e-12
                ok &= good
                freqs.append({"level": i, "clusters": list(A), "label": lab,
                              "frequency": f"{f:.12f}", "within_3sigma": good})
    data = {"family": F.to_json(), "samples": args.samples, "label_frequencies": freqs,
            "frequencies_ok": ok}
    if first is not None:
        data["slice_probability"] = slice_probability(F, first)
        G = read_khg(args.graph) if args.graph else gen.random_kgraph(
            args.n, args.k, 0.5, _child_seed(args.seed, 2))
        if G.n != args.n or G.k != args.k:
            raise InvalidQueryError("graph does not match --n/--k")
        H = KGraph(args.k, args.k, [tuple(range(args.k))])
        data["quality"] = slice_quality_report(
            G, first, [H], list(range(args.t)), [(H, [0], [0])],
            d=Fraction(args.d), eps_k=Fraction(args.eps_k), seed=_child_seed(args.seed, 3))
    _emit(args, data)
    return OK if ok else VIOLATED


def cmd_compress(args) -> int:
    G = read_khg(args.file)
    C = down_closure(G)
    data = {"r": args.r, "initial_counts": list(level_counts(C)), "deficit": ratio_deficit(C, args.r)}
    try:
        res = ratio_matching(C, args.r)
    except HypothesisViolatedError as exc:
        data["error"] = str(exc)
        _emit(args, data)
        return VIOLATED
    data.update(
        trace=[{"step": op, "detail": [list(x) if isinstance(x, tuple) else x for x in arg]
                if op == "prune" else list(arg), "counts": list(c)} for op, arg, c in res.trace],
        final_counts=list(level_counts(res.compressed)),
        matching=[list(e) for e in res.matching.edges],
        oracle_matching_number=res.oracle_nu,
    )
    _emit(args, data)
    return OK


def cmd_gen(args) -> int:
    params = {"n": args.n, "k": args.k}
    if args.name == "star":
        params["a"] = args.a
    elif args.name == "clique_plus":
        params.update(a=args.a, r=args.r)
    elif args.name == "complete_partite":
        if not args.sizes:
            raise InvalidQueryError("complete_partite needs --sizes")
        params = {"sizes": [int(s) for s in args.sizes.split(",")], "k": args.k}
    elif args.name == "parity":
        params = {"n_per_part": args.n_per_part, "k": args.k, "alpha": Fraction(args.alpha)}
    elif args.name == "tight_cycle":
        params = {"length": args.length, "k": args.k}
    elif args.name == "tight_path":
        params = {"v": args.v, "k": args.k}
    elif args.name == "random":
        params.update(p=Fraction(args.p), seed=args.seed)
    if any(v is None for v in params.values()):
        raise InvalidQueryError(f"missing parameters for {args.name}: "
                                f"{[k for k, v in params.items() if v is None]}")
    c = gen.construct(args.name, **params)
    spec = " ".join(f"{k}={v if not isinstance(v, list) else ','.join(map(str, v))}"
                    for k, v in sorted(params.items()))
    text = format_khg(c.graph, [f"generated by hyperslice gen {args.name} {spec}"])
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_verify(args) -> int:
    results = run_checks()
    _emit(args, {"checks": results, "ok": all(r["ok"] for r in results)})
    return OK if all(r["ok"] for r in results) else VIOLATED


# -- parser -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperslice", description="Tight cycles, matchings and regular slices in k-graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, csv_ok=False):
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--format", choices=["json", "csv"] if csv_ok else ["json"],
                        default="csv" if csv_ok else "json")
        sp.add_argument("--timestamps", action="store_true", help="stamp JSON reports with the UTC time")

    a = sub.add_parser("analyze", help="components, matchings, entropy and LYM margins")
    a.add_argument("file")
    a.add_argument("--clusters", type=int, help="cluster count for the reduced graph (v mod t)")
    common(a)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("search", help="tight cycle / path search")
    s.add_argument("file")
    s.add_argument("--goal", choices=["cycle", "longest-cycle", "longest-path"], default="longest-cycle")
    s.add_argument("--length", type=int)
    s.add_argument("--budget", type=int)
    s.add_argument("--min-cycle-length", type=int)
    common(s)
    s.set_defaults(func=cmd_search)

    sw = sub.add_parser("sweep", help="density sweeps")
    swsub = sw.add_subparsers(dest="sweep", required=True)
    eg = swsub.add_parser("eg", help="random k-graphs over an edge-probability grid")
    eg.add_argument("--n", type=int, required=True)
    eg.add_argument("--k", type=int, required=True)
    eg.add_argument("--p", required=True, help="lo:hi:step")
    eg.add_argument("--trials", type=int, default=1)
    eg.add_argument("--seed", type=int, default=0)
    eg.add_argument("--budget", type=int)
    common(eg, csv_ok=True)
    eg.set_defaults(func=cmd_sweep_eg)
    pt = swsub.add_parser("partite", help="random k-partite k-graphs; records minimum partite codegree")
    pt.add_argument("--t", type=int, required=True, help="part size")
    pt.add_argument("--k", type=int, required=True)
    pt.add_argument("--p", required=True, help="lo:hi:step")
    pt.add_argument("--trials", type=int, default=1)
    pt.add_argument("--seed", type=int, default=0)
    pt.add_argument("--budget", type=int)
    common(pt, csv_ok=True)
    pt.set_defaults(func=cmd_sweep_partite)

    sl = sub.add_parser("slice", help="slice sampling")
    slsub = sl.add_subparsers(dest="slice", required=True)
    st = slsub.add_parser("stats", help="sample slices; frequencies, probabilities, quality report")
    st.add_argument("--n", type=int, required=True)
    st.add_argument("--t", type=int, required=True)
    st.add_argument("--k", type=int, default=3)
    st.add_argument("--inv-d", type=int, default=2, help="1/d_i for every level")
    st.add_argument("--samples", type=int, default=1000)
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--graph", help=".khg graph for the quality report (default: random)")
    st.add_argument("--d", default="1/2")
    st.add_argument("--eps-k", default="1/10")
    common(st)
    st.set_defaults(func=cmd_slice_stats)

    c = sub.add_parser("compress", help="prune/compress pipeline and ratio matching")
    c.add_argument("file")
    c.add_argument("--r", type=int, required=True)
    common(c)
    c.set_defaults(func=cmd_compress)

    g = sub.add_parser("gen", help="write a construction as .khg")
    g.add_argument("name", choices=["complete", "complete_partite", "star", "clique_plus",
                                    "parity", "tight_cycle", "tight_path", "random"])
    for flag in ("--n", "--k", "--a", "--r", "--n-per-part", "--length", "--v", "--seed"):
        g.add_argument(flag, type=int)
    g.add_argument("--sizes", help="comma-separated class sizes")
    g.add_argument("--alpha")
    g.add_argument("--p")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="run the bundled invariant checks")
    common(v)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "gen" and args.name == "random" and args.seed is None:
        args.seed = 0
    try:
        return args.func(args)
    except (ParseError, InvalidQueryError, ValueError, OSError) as exc:
        print(f"hyperslice: error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except HypersliceError as exc:
        print(f"hyperslice: error: {exc}", file=sys.stderr)
        return VIOLATED


if __name__ == "__main__":
    sys.exit(main())
