"""Command-line front end.

Exit status: 0 on success, 1 when a check finds violations (or a domain
error occurs), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from collections.abc import Sequence

from . import formats
from .cliques import check_witnessing
from .coding import build_Sk, build_TR, build_Tk, check_kfbc, decode_graph
from .errors import RCTError
from .ramseylab import DEFAULT_BUDGET, finite_ramsey_check, verify_sierpinski_persistence
from .seqtree import check_binseq
from .similarity import STRICT, STRONG, enumerate_types

BUILD_KINDS = ("sk", "tk", "tr")


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("RCT_JOBS", "1")))
    except ValueError:
        return 1


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rct", description="Coding trees, similarity types and finite Ramsey checks.")
    p.add_argument("--jobs", type=int, default=_default_jobs(), help="worker processes (default: $RCT_JOBS or 1)")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    b = sub.add_parser("build", help="build a coding-tree prefix")
    b.add_argument("--kind", choices=BUILD_KINDS, required=True)
    b.add_argument("--k", type=int, default=3, help="forbidden clique size (sk, tk)")
    b.add_argument("--coding", type=int, required=True, help="number of coding nodes")
    b.add_argument("--out")
    b.add_argument("--format", choices=["json", "dot"], default="json")

    d = sub.add_parser("decode", help="decode the graph coded by a tree or a chain of nodes")
    src = d.add_mutually_exclusive_group(required=True)
    src.add_argument("--tree")
    src.add_argument("--chain", nargs="+", metavar="NODE")
    d.add_argument("--include-pseudo", action="store_true")
    d.add_argument("--out")
    d.add_argument("--format", choices=["json", "dot"], default="json")

    f = sub.add_parser("check-fbc", help="check the K_k-free branching criterion")
    f.add_argument("--tree", required=True)
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--out")

    w = sub.add_parser("check-witness", help="check the Witnessing Property of a subtree")
    w.add_argument("--tree", required=True, help="host coding tree")
    w.add_argument("--subtree", help='JSON {"nodes": [...], "coding": [...]}; default: the whole host')
    w.add_argument("--new-only", action="store_true", help="only require newly appearing pre-cliques to be witnessed")
    w.add_argument("--out")

    t = sub.add_parser("types", help="similarity types of antichains coding a graph")
    t.add_argument("--graph", required=True)
    t.add_argument("--host", required=True)
    t.add_argument("--mode", choices=[STRONG, STRICT], default=STRONG)
    t.add_argument("--depth", type=int, help="use coding nodes c_0..c_{depth-1}")
    t.add_argument("--out")

    r = sub.add_parser("ramsey", help="exhaustive finite Ramsey check")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--r", type=int, required=True)
    r.add_argument("--m", type=int, required=True)
    r.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    r.add_argument("--out")

    s = sub.add_parser("sierpinski", help="persistence of the Sierpinski coloring on strong subtrees")
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--out")

    x = sub.add_parser("export-dot", help="draw a tree file as Graphviz DOT")
    x.add_argument("--tree", required=True)
    x.add_argument("--out")
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _build(args) -> tuple[int, str]:
    if args.kind == "tr":
        tree = build_TR(args.coding)
    elif args.kind == "sk":
        tree = build_Sk(args.k, args.coding)
    else:
        tree = build_Tk(args.k, args.coding)
    text = formats.to_dot(tree) if args.format == "dot" else formats.tree_to_json(tree)
    return 0, text


def _decode(args) -> tuple[int, str]:
    if args.tree:
        graph = formats.read_coding_tree(args.tree).graph(include_pseudo=args.include_pseudo)
    else:
        # "-" stands for the empty sequence
        graph = decode_graph([check_binseq("" if n == "-" else n) for n in args.chain])
    if args.format == "dot":
        return 0, formats.graph_to_dot(graph)
    data = graph.to_dict()
    data["labels"] = list(graph.labels)
    return 0, formats.dumps(data)


def _check_fbc(args) -> tuple[int, str]:
    tree = formats.read_coding_tree(args.tree)
    report = check_kfbc(tree, args.k)
    return (0 if report.ok else 1), formats.dumps(report.to_dict())


def _check_witness(args) -> tuple[int, str]:
    host = formats.read_coding_tree(args.tree)
    if args.subtree:
        data = formats.read_json(args.subtree)
        nodes, own = data["nodes"], data.get("coding", [])
    else:
        nodes, own = host.tree.nodes, host.coding[host.n_pseudo :]
    report = check_witnessing(host, nodes, own, new_only=args.new_only)
    return (0 if report.ok else 1), formats.dumps(report.to_dict())


def _types(args) -> tuple[int, str]:
    graph = formats.read_graph(args.graph)
    host = formats.read_coding_tree(args.host)
    report = enumerate_types(graph, host, args.mode, args.depth, jobs=args.jobs)
    return 0, formats.dumps(report.to_dict())


def _ramsey(args) -> tuple[int, str]:
    res = finite_ramsey_check(args.n, args.k, args.r, args.m, budget=args.budget)
    return (0 if res.holds else 1), formats.dumps(res.to_dict())


def _sierpinski(args) -> tuple[int, str]:
    res = verify_sierpinski_persistence(args.depth)
    return (0 if res.holds else 1), formats.dumps(res.to_dict())


def _export_dot(args) -> tuple[int, str]:
    tree = formats.load_tree(formats.read_json(args.tree))
    return 0, formats.to_dot(tree)


HANDLERS = {
    "build": _build,
    "decode": _decode,
    "check-fbc": _check_fbc,
    "check-witness": _check_witness,
    "types": _types,
    "ramsey": _ramsey,
    "sierpinski": _sierpinski,
    "export-dot": _export_dot,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        status, text = HANDLERS[args.verb](args)
    except RCTError as exc:
        sys.stdout.write(formats.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 1
    except (OSError, ValueError, KeyError) as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"rct: error: {exc}\n")
        return 2
    _emit(text, getattr(args, "out", None))
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
