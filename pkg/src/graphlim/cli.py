"""Command-line surface: statistics, convergence, colorings, tries, and the
verification commands, all emitting deterministic JSON reports.

Exit codes: 0 success; 2 usage or ingestion failure; 3 validation failure
(malformed or inconsistent data); 4 verification failure (a checked identity
did not hold).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .chains import TypeTrie, build_trie, merge_tries, sample_chain, verify_invariance
from .coloring import build_bundle
from .errors import ParseError, ValidationError, VerificationError
from .graphs import load_graph
from .leafgraph import verify_reconstruction
from .stats import analyze_sequence, distribution

REPORT_VERSION = 1


def _load_sequence(paths, d):
    return [load_graph(p, d=d) for p in paths]


def cmd_stats(args) -> tuple[int, dict]:
    graphs = _load_sequence(args.paths, args.d)
    entries = []
    for path, g in zip(args.paths, graphs):
        bundle = build_bundle(g, max(args.r, 1))
        entries.append({
            "path": str(path),
            "n": g.n,
            "d": g.d,
            "uncolored": distribution(g, args.r).to_json_dict(),
            "colored": distribution(g, args.r, bundle).to_json_dict(),
        })
    return 0, {"command": "stats", "r": args.r, "graphs": entries}


def cmd_converge(args) -> tuple[int, dict]:
    graphs = _load_sequence(args.paths, args.d)
    bundles = None
    if args.colored:
        bundles = [build_bundle(g, args.depth) for g in graphs]
    report = analyze_sequence(graphs, args.depth, args.epsilon, bundles)
    return 0, {
        "command": "converge",
        "paths": [str(p) for p in args.paths],
        "report": report.to_json_dict(),
    }


def cmd_color(args) -> tuple[int, dict]:
    g = load_graph(args.paths[0], d=args.d)
    bundle = build_bundle(g, args.depth)
    return 0, {"command": "color", "path": str(args.paths[0]), "bundle": bundle.to_json_dict()}


def _trie_for(graphs, depth, mode):
    tries = [build_trie(g, build_bundle(g, depth), depth) for g in graphs]
    if mode == "cesaro":
        return merge_tries(tries)
    return tries[-1]


def cmd_build(args) -> tuple[int, dict]:
    graphs = _load_sequence(args.paths, args.d)
    trie = _trie_for(graphs, args.depth, args.mode)
    summary = []
    for r in range(1, trie.depth + 1):
        level = trie.level(r)
        mass = sum((nd.measure for nd in level), Fraction(0))
        summary.append({"radius": r, "nodes": len(level), "mass": str(mass)})
    return 0, {
        "command": "build",
        "mode": args.mode,
        "paths": [str(p) for p in args.paths],
        "summary": summary,
        "trie": trie.to_json_dict(),
    }


def _load_trie(path) -> TypeTrie:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON: {exc}") from exc
    # accept either a bare trie document or a full `build` report around one
    if isinstance(doc, dict) and doc.get("kind") != "type-trie" and "trie" in doc:
        doc = doc["trie"]
    return TypeTrie.from_json_dict(doc)


def cmd_verify_invariance(args) -> tuple[int, dict]:
    g = _load_sequence(args.paths, args.d)[-1]
    bundle = build_bundle(g, args.r + 1)
    if args.trie is not None:
        trie = _load_trie(args.trie)
    else:
        trie = build_trie(g, bundle, args.r + 1)
    report = verify_invariance(trie, g, bundle, None, args.r)
    doc = {"command": "verify-invariance", "path": str(args.paths[-1]), "report": report}
    return (0 if report["ok"] else 4), doc


def cmd_verify_leafball(args) -> tuple[int, dict]:
    g = _load_sequence(args.paths, args.d)[-1]
    bundle = build_bundle(g, max(3 * args.r, 1))
    report = verify_reconstruction(g, bundle, args.r, args.sample, args.seed)
    doc = {"command": "verify-leafball", "path": str(args.paths[-1]), "report": report}
    return (0 if report["ok"] else 4), doc


def cmd_verify(args) -> tuple[int, dict]:
    g = _load_sequence(args.paths, args.d)[-1]
    depth = max(args.r + 1, 3 * args.r, 1)
    bundle = build_bundle(g, depth)
    if args.trie is not None:
        trie = _load_trie(args.trie)
    else:
        trie = build_trie(g, bundle, args.r + 1)
    invariance = verify_invariance(trie, g, bundle, None, args.r)
    leafball = verify_reconstruction(g, bundle, args.r, args.sample, args.seed)
    ok = invariance["ok"] and leafball["ok"]
    doc = {
        "command": "verify",
        "path": str(args.paths[-1]),
        "invariance": invariance,
        "leafball": leafball,
        "ok": ok,
    }
    return (0 if ok else 4), doc


def cmd_chain_sample(args) -> tuple[int, dict]:
    graphs = _load_sequence(args.paths, args.d)
    trie = _trie_for(graphs, args.depth, args.mode)
    chains = [sample_chain(trie, args.seed + i) for i in range(args.count)]
    return 0, {
        "command": "chain-sample",
        "mode": args.mode,
        "count": args.count,
        "chains": [c.to_json_dict() for c in chains],
    }


def _add_common(sp, single=False):
    sp.add_argument("paths", nargs=1 if single else "+", metavar="FILE",
                    help="edge-list file(s), in sequence order")
    sp.add_argument("--d", type=int, default=None,
                    help="declared degree bound (default: per-file header or max degree)")
    sp.add_argument("--seed", type=int, default=0, help="seed for all sampled choices")
    sp.add_argument("--out", type=Path, default=None, help="write the JSON report here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphlim",
        description="Local statistics of bounded-degree graph sequences and "
                    "finite-depth chain-space verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("stats", help="per-graph ball-type distributions")
    _add_common(sp)
    sp.add_argument("--r", type=int, default=1, help="ball radius")
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("converge", help="sequence convergence diagnostics")
    _add_common(sp)
    sp.add_argument("--depth", type=int, default=1, help="maximum radius analyzed")
    sp.add_argument("--epsilon", type=float, default=1e-3, help="convergence tolerance")
    sp.add_argument("--colored", action="store_true", help="use colored types")
    sp.set_defaults(func=cmd_converge)

    sp = sub.add_parser("color", help="emit a coloring bundle for one graph")
    _add_common(sp, single=True)
    sp.add_argument("--depth", type=int, default=1, help="deepest vertex-coloring level")
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("build", help="build the colored type trie with measures")
    _add_common(sp)
    sp.add_argument("--depth", type=int, default=2, help="trie depth")
    sp.add_argument("--mode", choices=("last", "cesaro"), default="last",
                    help="estimate measures from the last graph or their average")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("verify-invariance", help="check the exact counting identity")
    _add_common(sp)
    sp.add_argument("--r", type=int, default=1, help="type radius checked")
    sp.add_argument("--trie", type=Path, default=None,
                    help="verify against this serialized trie instead of rebuilding")
    sp.set_defaults(func=cmd_verify_invariance)

    sp = sub.add_parser("verify-leafball", help="check ball reconstruction from chains")
    _add_common(sp)
    sp.add_argument("--r", type=int, default=1, help="ball radius reconstructed")
    sp.add_argument("--sample", type=int, default=20, help="number of sampled vertices")
    sp.set_defaults(func=cmd_verify_leafball)

    sp = sub.add_parser("verify", help="combined invariance and reconstruction checks")
    _add_common(sp)
    sp.add_argument("--r", type=int, default=1, help="radius for both checks")
    sp.add_argument("--sample", type=int, default=20, help="number of sampled vertices")
    sp.add_argument("--trie", type=Path, default=None,
                    help="verify against this serialized trie instead of rebuilding")
    sp.set_defaults(func=cmd_verify)

    sp_chain = sub.add_parser("chain", help="chain-space operations")
    chain_sub = sp_chain.add_subparsers(dest="chain_command", required=True)
    sp = chain_sub.add_parser("sample", help="draw chains distributed by the measure")
    _add_common(sp)
    sp.add_argument("--depth", type=int, default=2, help="trie and chain depth")
    sp.add_argument("--mode", choices=("last", "cesaro"), default="last")
    sp.add_argument("--count", type=int, default=1, help="number of chains to draw")
    sp.set_defaults(func=cmd_chain_sample)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, doc = args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    doc = {"version": REPORT_VERSION, "seed": args.seed, **doc}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
