"""Pre-cliques in level sets and the Witnessing Property.

A level set ``X`` (nodes of one common length ``l``) has a pre-``a``-clique
witnessed by an index set ``I`` of ``a-2`` coding nodes when the largest of
them has length at most ``l``, the coding nodes in ``I`` code an
``(a-2)``-clique, and every node of ``X`` passes 1 at each of them.

When the largest coding node in ``I`` has length exactly ``l`` its bit is
not yet defined on ``X``; the check then moves to the one-step extensions of
``X`` (every successor must carry a 1 there).  Only genuine coding nodes
(index >= 0) take part in ``I``.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

from .coding import CodingTree
from .errors import LengthError, PreconditionError
from .seqtree import BinSeq, lex_key

Successors = Callable[[BinSeq], Sequence[BinSeq]]


@dataclass(frozen=True)
class PreClique:
    level_set: tuple[BinSeq, ...]
    a: int
    witness: tuple[int, ...]
    level: int
    first_level: int | None = None

    def to_dict(self) -> dict:
        out = {"level": self.level, "a": self.a, "witness": list(self.witness), "nodes": list(self.level_set)}
        if self.first_level is not None:
            out["first_level"] = self.first_level
        return out


def candidate_index_sets(host: CodingTree, a: int, max_length: int, among: Iterable[int] | None = None):
    """Index sets of size ``a-2`` coding an ``(a-2)``-clique with all lengths ``<= max_length``."""
    pool = host.indices(include_pseudo=False) if among is None else sorted(among)
    pool = [i for i in pool if i >= 0 and len(host.coding_node(i)) <= max_length]
    for combo in itertools.combinations(pool, a - 2):
        if all(host.adjacent(i, j) for i, j in itertools.combinations(combo, 2)):
            yield combo


def _host_successors(host: CodingTree) -> Successors:
    tree = host.tree

    def succ(x: BinSeq) -> Sequence[BinSeq]:
        return tree.succ(x) if x in tree else ()

    return succ


def passes_one(x: BinSeq, position: int, successors: Successors) -> bool:
    """Whether ``x`` (or, at its own length, every successor of ``x``) has bit 1 at ``position``."""
    if position < len(x):
        return x[position] == "1"
    if position > len(x):
        return False
    ext = successors(x)
    return bool(ext) and all(u[position] == "1" for u in ext)


def find_precliques(
    X: Iterable[BinSeq],
    host: CodingTree,
    a: int,
    successors: Successors | None = None,
) -> list[PreClique]:
    """All index sets witnessing a pre-``a``-clique in the level set ``X``.

    ``successors`` supplies one-step extensions; it defaults to the host
    tree's successor sets.
    """
    X = tuple(sorted(set(X), key=lex_key))
    if not X:
        raise PreconditionError("the level set must be nonempty")
    level = len(X[0])
    if any(len(x) != level for x in X):
        raise LengthError("level set members must share one length")
    if a < 3 or (host.k is not None and a > host.k):
        raise PreconditionError(f"a={a} outside [3, k]")
    succ = successors or _host_successors(host)
    out = []
    for combo in candidate_index_sets(host, a, level):
        positions = [len(host.coding_node(i)) for i in combo]
        if all(passes_one(x, p, succ) for x in X for p in positions):
            out.append(PreClique(X, a, combo, level))
    return out


@dataclass(frozen=True)
class WitnessReport:
    unwitnessed: tuple[PreClique, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.unwitnessed

    def to_dict(self) -> dict:
        if self.ok:
            return {"status": "ok"}
        return {"unwitnessed": [p.to_dict() for p in self.unwitnessed]}

    def keys(self) -> set[tuple[int, int, tuple[BinSeq, ...]]]:
        """Identity of each unwitnessed pre-clique: level, ``a`` and its nodes."""
        return {(p.level, p.a, p.level_set) for p in self.unwitnessed}


def _subtree_successors(levels: dict[int, list[BinSeq]]) -> Successors:
    lengths = sorted(levels)
    nxt = {a: b for a, b in zip(lengths, lengths[1:])}

    def succ(x: BinSeq) -> Sequence[BinSeq]:
        upper = nxt.get(len(x))
        if upper is None:
            return ()
        return sorted({u[: len(x) + 1] for u in levels[upper] if u.startswith(x)})

    return succ


def check_witnessing(
    tree: CodingTree,
    subtree: Iterable[BinSeq],
    subtree_coding: Iterable[BinSeq],
    new_only: bool = False,
) -> WitnessReport:
    """Witnessing Property of ``subtree`` relative to its coding nodes.

    For every level of the subtree and every ``a`` in ``[3, k]``, each
    maximal set of at least two level members sharing a pre-``a``-clique
    (over the host's coding nodes) must also share one whose coding nodes
    all lie in ``subtree_coding``.  With ``new_only`` a pre-clique is only
    required to be witnessed at the first subtree level where it appears.
    """
    if tree.kind != "henson":
        raise PreconditionError("the Witnessing Property is defined for henson trees")
    nodes = set(subtree)
    if not nodes <= tree.tree.nodes:
        raise PreconditionError("subtree must consist of host nodes")
    own = set()
    for c in subtree_coding:
        i = tree.index_of(c)
        if i is None:
            raise PreconditionError(f"{c!r} is not a coding node of the host")
        own.add(i)
    levels: dict[int, list[BinSeq]] = defaultdict(list)
    for t in nodes:
        levels[len(t)].append(t)
    succ = _subtree_successors(levels)
    lengths = sorted(levels)
    first_seen: dict[tuple[int, tuple[int, ...]], int] = {}
    found: dict[tuple[int, int, tuple[BinSeq, ...]], PreClique] = {}
    for pos, length in enumerate(lengths):
        X = sorted(levels[length], key=lex_key)
        for a in range(3, tree.k + 1):
            own_sets = [
                frozenset(x for x in X if all(passes_one(x, len(tree.coding_node(i)), succ) for i in combo))
                for combo in candidate_index_sets(tree, a, length, among=own)
            ]
            for combo in candidate_index_sets(tree, a, length):
                positions = [len(tree.coding_node(i)) for i in combo]
                Y = tuple(x for x in X if all(passes_one(x, p, succ) for p in positions))
                if len(Y) < 2:
                    continue
                first = first_seen.setdefault((a, combo), length)
                if new_only and pos > 0:
                    prev_len = lengths[pos - 1]
                    prev = {y[:prev_len] for y in Y}
                    prev_succ = _subtree_successors({prev_len: sorted(prev), length: list(Y)})
                    if len(prev) >= 2 and all(
                        passes_one(x, p, prev_succ) for x in prev for p in positions
                    ):
                        continue
                if any(set(Y) <= s for s in own_sets):
                    continue
                key = (length, a, Y)
                if key not in found:
                    found[key] = PreClique(Y, a, combo, length, first)
    ordered = sorted(found.values(), key=lambda p: (p.level, p.a, p.witness, [lex_key(x) for x in p.level_set]))
    return WitnessReport(tuple(ordered))


def pre_clique_levels(host: CodingTree, members: Sequence[BinSeq], a: int) -> list[tuple[tuple[int, ...], int]]:
    """Index sets under which all ``members`` pass 1, with the length of their top coding node.

    Only coding nodes strictly shorter than every member count, so the
    passing numbers are defined on the members themselves.
    """
    if not members:
        return []
    bound = min(len(m) for m in members) - 1
    out = []
    for combo in candidate_index_sets(host, a, bound):
        positions = [len(host.coding_node(i)) for i in combo]
        if all(m[p] == "1" for m in members for p in positions):
            out.append((combo, max(positions)))
    return out
