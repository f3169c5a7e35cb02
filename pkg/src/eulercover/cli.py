"""Command line entry point: count, lift, gadget, verify, search, corpus.

stdout carries the result JSON; progress and the run manifest go to stderr
(or to ``--manifest FILE``).  Exit codes: 0 ok, 1 violation, 2 usage/parse,
3 size cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from datetime import datetime, timezone

from . import __version__
from .corpus import FAMILIES, CorpusSpec, named_corpus
from .counting import CountKind, brute_force_count, count
from .covers import build_2lift, build_klift, parse_perms, random_klift, serialize_lift
from .gadgets import (
    build_schrijver_star,
    build_tutte_doublestar,
    count_perfect_matchings,
    gadget_to_json,
    permanent,
)
from .graph import CapExceeded, GraphFormatError, graph_to_json, parse_vector, read_graph, serialize_graph
from . import verify as vf

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

CLAIMS = ("recursion", "inequality", "bipartite-cover", "cover-orient", "cover-factor",
          "mixed-identity", "mixed-inequality", "balanced-max", "reversal", "lieb")

# edge limits used when a claim is run over a whole corpus
CORPUS_EDGE_LIMITS = {
    "recursion": 16, "inequality": None, "bipartite-cover": 10, "cover-orient": 16,
    "cover-factor": 16, "mixed-identity": 10, "mixed-inequality": 10,
    "balanced-max": 12, "reversal": 12,
}


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _progress(msg: str):
    print(msg, file=sys.stderr)


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _read_r(args, G):
    if args.r is None:
        return None
    r = parse_vector(_read_text(args.r))
    if len(r) != G.n:
        raise UsageError(f"--r has {len(r)} entries, graph has {G.n} vertices")
    return r


def _load_corpus(spec_arg: str) -> tuple[CorpusSpec, list]:
    if spec_arg == "default":
        spec = CorpusSpec()
    else:
        spec = CorpusSpec.from_json(json.loads(_read_text(spec_arg)))
    return spec, [(c.name, c.graph) for c in named_corpus(spec)]


def _graphs(args):
    """(corpus spec or None, [(name, graph, signs, roles)])."""
    if getattr(args, "graph", None):
        pg = read_graph(args.graph)
        name = os.path.splitext(os.path.basename(args.graph))[0]
        return None, [(name, pg.graph, pg.signs, pg.roles)]
    if getattr(args, "corpus", None):
        spec, graphs = _load_corpus(args.corpus)
        return spec, [(n, G, None, None) for n, G in graphs]
    raise UsageError("give --graph FILE or --corpus SPEC")


# --- subcommands -----------------------------------------------------------

def cmd_count(args, ctx):
    pg = read_graph(args.graph)
    G = pg.graph
    kind = CountKind(args.what)
    r = _read_r(args, G)
    if kind in (CountKind.R_ORIENTATIONS, CountKind.R_FACTORS) and r is None:
        raise UsageError(f"--what {args.what} needs --r FILE")
    dec = None
    if kind is CountKind.BALANCED_FACTORIENTATIONS:
        if pg.roles is None:
            raise UsageError("--what g needs a role column (o/s) in the graph file")
        dec = pg.roles
    fn = brute_force_count if args.oracle else count
    return {"count": str(fn(G, kind, r=r, dec=dec))}, EXIT_OK


def cmd_lift(args, ctx):
    pg = read_graph(args.graph)
    G = pg.graph
    if args.perms:
        perms = parse_perms(_read_text(args.perms), G.m, args.k)
        L = build_klift(G, perms, args.k)
    elif args.seed is not None:
        k = args.k or 2
        ctx["seed"] = args.seed
        L = build_klift(G, random_klift(G, k, args.seed), k)
    elif pg.signs is not None and args.k in (None, 2):
        L = build_2lift(G, pg.signs)
    else:
        raise UsageError("lift needs a signed graph file, --perms FILE, or --seed S")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(serialize_lift(L))
    result = {
        "k": L.k,
        "base": graph_to_json(G),
        "lift": graph_to_json(L.H),
        "projection": list(L.projection),
        "layer": [list(x) for x in L.layer],
    }
    return result, EXIT_OK


def cmd_gadget(args, ctx):
    G = read_graph(args.graph).graph
    r = _read_r(args, G)
    if r is None:
        raise UsageError("gadget needs --r FILE")
    if args.which == "star":
        bip, prov = build_schrijver_star(G, r)
        pm = permanent(bip.matrix) if bip.p == bip.q else 0
        out = gadget_to_json("star", r, bip.as_multigraph(), prov, pm)
    else:
        H, prov = build_tutte_doublestar(G, r)
        out = gadget_to_json("doublestar", r, H, prov, count_perfect_matchings(H))
    return out, EXIT_OK


def _need_seed(args, why: str):
    if args.seed is None:
        raise UsageError(f"{why} is randomized and needs --seed")
    return args.seed


def _run_claim(claim, name, G, signs, roles, args):
    threads = args.threads
    if claim == "recursion":
        return [vf.check_recursion(G, name, threads)]
    if claim == "inequality":
        return [vf.check_inequality(G, name)]
    if claim == "bipartite-cover":
        return [vf.check_bipartite_cover(G, name, threads)]
    if claim in ("cover-orient", "cover-factor"):
        r = _read_r(args, G) if args.graph else None
        seed = args.seed if G.m <= vf.EXHAUSTIVE_SIGNING_EDGES else _need_seed(args, "sampled signing sweep")
        sweep = vf.signing_sweep(G, seed)
        fn = vf.check_cover_orientation_max if claim == "cover-orient" else vf.check_cover_factor_max
        return [fn(G, r, sweep, name)]
    if claim == "mixed-identity":
        if signs is not None and roles is not None:
            return [vf.check_mixed_identity(G, signs, roles, name, threads)]
        seed = _need_seed(args, "mixed-identity without sign/role columns")
        pairs = [("+" * G.m, "o" * G.m), ("+" * G.m, "s" * G.m)] + vf.mixed_pairs(G, seed, args.pairs)
        return [vf.check_mixed_identity(G, s, d, name, threads) for s, d in pairs]
    if claim == "mixed-inequality":
        if roles is not None:
            return [vf.check_mixed_inequality(G, roles, name)]
        return [vf.check_mixed_inequality_sweep(G, None, name)]
    if claim == "balanced-max":
        return [vf.check_balanced_max(G, name)]
    if claim == "reversal":
        r = _read_r(args, G) if args.graph else None
        rs = [r] if r is not None else vf.feasible_r_vectors(G)
        return [vf.check_reversal_and_decomposition(G, list(x), name) for x in rs]
    raise UsageError(f"unknown claim {claim!r}")


def cmd_verify(args, ctx):
    claim = args.claim
    if claim not in CLAIMS:
        raise UsageError(f"unknown claim {claim!r}; choose from {', '.join(CLAIMS)}")
    ctx["seed"] = args.seed
    reports, skipped = [], []
    if claim == "lieb":
        reports.append(vf.check_lieb_bound(args.n, args.m))
    else:
        spec, graphs = _graphs(args)
        if spec is not None:
            ctx["corpus_spec_hash"] = spec.digest()
        limit = CORPUS_EDGE_LIMITS.get(claim)
        for name, G, signs, roles in graphs:
            if spec is not None:
                needs_euler = claim not in ("cover-orient", "cover-factor", "mixed-identity", "reversal")
                if (limit is not None and G.m > limit) or (needs_euler and not vf.is_eulerian(G)):
                    skipped.append(name)
                    continue
            _progress(f"verify {claim} on {name} ({G.m} edges)")
            reports.extend(_run_claim(claim, name, G, signs, roles, args))
    if args.figure:
        from .plotting import plot_verification
        plot_verification(reports, args.figure)
    out = {
        "reports": [rep.to_json(timing=not args.no_timing) for rep in reports],
        "summary": vf.summarize(reports),
    }
    if skipped:
        out["skipped"] = skipped
    return out, EXIT_VIOLATION if any(not r.ok for r in reports) else EXIT_OK


def cmd_search(args, ctx):
    seed = _need_seed(args, "search")
    ctx["seed"] = seed
    spec, graphs = _graphs(args)
    if spec is not None:
        ctx["corpus_spec_hash"] = spec.digest()
        reports = vf.search_conjecture_corpus([(n, G) for n, G, _, _ in graphs], args.k,
                                              args.trials, seed, args.threads)
    else:
        name, G, _, _ = graphs[0]
        reports = [vf.search_conjecture(G, args.k, args.trials, seed, name, args.threads)]
    if args.figure:
        from .plotting import plot_conjecture
        plot_conjecture(reports, args.figure)
    out = {
        "reports": [rep.to_json(timing=not args.no_timing) for rep in reports],
        "summary": vf.summarize(reports),
    }
    return out, EXIT_VIOLATION if any(not r.ok for r in reports) else EXIT_OK


def cmd_corpus(args, ctx):
    seed = _need_seed(args, "corpus generation")
    families = tuple(args.families.split(",")) if args.families else FAMILIES
    spec = CorpusSpec(args.max_vertices, args.max_edges, families, seed,
                      not args.allow_non_eulerian, args.random_count)
    ctx["seed"] = seed
    ctx["corpus_spec_hash"] = spec.digest()
    entries = named_corpus(spec)
    listing = []
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "spec.json"), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(json.dumps(spec.to_json(), indent=1) + "\n")
    for c in entries:
        item = {"name": c.name, "family": c.family, "n": c.graph.n, "m": c.graph.m}
        if args.out:
            fname = c.name.replace(",", "_").replace("(", "_").replace(")", "") + ".txt"
            with open(os.path.join(args.out, fname), "w", encoding="utf-8", newline="\n") as fh:
                fh.write(serialize_graph(c.graph))
            item["file"] = fname
        listing.append(item)
    return {"spec": spec.to_json(), "graphs": listing}, EXIT_OK


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eulercover", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--manifest", help="write the run manifest here instead of stderr")
        sp.add_argument("--threads", type=int, default=1)
        return sp

    sp = common(sub.add_parser("count", help="count orientations / factors"))
    sp.add_argument("--graph", required=True)
    sp.add_argument("--what", required=True, choices=[k.value for k in CountKind])
    sp.add_argument("--r")
    sp.add_argument("--oracle", action="store_true", help="use the brute-force enumeration")
    sp.set_defaults(func=cmd_count)

    sp = common(sub.add_parser("lift", help="build a 2-lift or k-lift"))
    sp.add_argument("--graph", required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--perms")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out", help="also write the lift file here")
    sp.set_defaults(func=cmd_lift)

    sp = common(sub.add_parser("gadget", help="dump a matching gadget"))
    sp.add_argument("--graph", required=True)
    sp.add_argument("--which", required=True, choices=["star", "doublestar"])
    sp.add_argument("--r")
    sp.set_defaults(func=cmd_gadget)

    sp = common(sub.add_parser("verify", help="check one claim"))
    sp.add_argument("--claim", required=True)
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--graph")
    src.add_argument("--corpus", help="'default' or a CorpusSpec JSON file")
    sp.add_argument("--r")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--pairs", type=int, default=50, help="random (signing, decoration) pairs")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--figure", help="write a summary plot (png/pdf/svg)")
    sp.add_argument("--no-timing", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("search", help="random k-lift search against eps(G)^k >= eps(H)"))
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph")
    src.add_argument("--corpus")
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--figure")
    sp.add_argument("--no-timing", action="store_true")
    sp.set_defaults(func=cmd_search)

    sp = common(sub.add_parser("corpus", help="generate the graph corpus"))
    sp.add_argument("--max-vertices", type=int, default=CorpusSpec.max_vertices)
    sp.add_argument("--max-edges", type=int, default=CorpusSpec.max_edges)
    sp.add_argument("--families", help=f"comma list from {','.join(FAMILIES)}")
    sp.add_argument("--random-count", type=int, default=CorpusSpec.random_count)
    sp.add_argument("--allow-non-eulerian", action="store_true")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out", help="directory for one graph file per corpus member")
    sp.set_defaults(func=cmd_corpus)
    return p


def _stamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    ctx = {"seed": None, "corpus_spec_hash": None}
    started = _stamp()
    t0 = time.perf_counter()
    try:
        result, code = args.func(args, ctx)
    except CapExceeded as exc:
        _progress(f"error: {exc}")
        print(_dump({"error": str(exc), "cap": exc.cap, "what": exc.what}))
        return EXIT_CAP
    except (UsageError, GraphFormatError, ValueError, OSError) as exc:
        _progress(f"error: {exc}")
        return EXIT_USAGE
    print(_dump(result))
    manifest = {
        "command": ["eulercover", *argv],
        "seed": ctx["seed"],
        "corpus_spec_hash": ctx["corpus_spec_hash"],
        "version": __version__,
        "started": started,
        "finished": _stamp(),
        "seconds": round(time.perf_counter() - t0, 3),
    }
    if args.manifest:
        with open(args.manifest, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(json.dumps(manifest, indent=1) + "\n")
    else:
        _progress("manifest " + _dump(manifest))
    return code
