"""Canonical JSON and Graphviz DOT for trees, coding trees and graphs."""

from __future__ import annotations

import json
from pathlib import Path

from .coding import CodingTree, FiniteGraph
from .seqtree import LevelTree


def dumps(obj: dict) -> str:
    """Canonical JSON: sorted keys, compact separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def tree_to_json(tree: LevelTree | CodingTree) -> str:
    return dumps(tree.to_dict())


def load_tree(data: dict) -> LevelTree | CodingTree:
    """A coding tree when the object carries coding nodes or a kind, else a level tree."""
    if "coding" in data or "kind" in data:
        return CodingTree.from_dict(data)
    return LevelTree.from_dict(data)


def read_json(path: str | Path) -> dict:
    with open(path, encoding="ascii") as fh:
        return json.load(fh)


def read_coding_tree(path: str | Path) -> CodingTree:
    return CodingTree.from_dict(read_json(path))


def read_graph(path: str | Path) -> FiniteGraph:
    return FiniteGraph.from_dict(read_json(path))


def _dot_id(node: str) -> str:
    return f'"n{node}"'


def to_dot(tree: LevelTree | CodingTree, name: str = "tree") -> str:
    """DOT drawing with edges between consecutive levels.

    Coding nodes are filled black circles, pseudo-coding nodes gray.
    """
    coding = tree if isinstance(tree, CodingTree) else None
    lt = coding.tree if coding else tree
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle, label=\"\", width=0.15];"]
    for n in range(lt.num_heights):
        for t in lt.level(n):
            attrs = [f'tooltip="{t or "root"}"']
            if coding is not None and coding.is_coding(t):
                i = coding.index_of(t)
                color = "gray" if i < 0 else "black"
                attrs += ["style=filled", f"fillcolor={color}", f'xlabel="c{i}"']
            lines.append(f"  {_dot_id(t)} [{', '.join(attrs)}];")
    for n in range(lt.num_heights - 1):
        for t in lt.level(n):
            for u in lt.children(t):
                lines.append(f"  {_dot_id(t)} -> {_dot_id(u)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dot(graph: FiniteGraph, name: str = "graph") -> str:
    lines = [f"graph {name} {{"]
    for pos, label in enumerate(graph.labels):
        style = ", style=filled, fillcolor=gray" if label < 0 else ""
        lines.append(f'  v{pos} [label="v{label}"{style}];')
    for i, j in sorted(graph.edges):
        lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
