"""Trees with coding nodes and the graphs they code.

A coding node ``c_n`` stands for vertex ``v_n``; for ``m < n`` the vertices
are adjacent exactly when ``c_n`` has passing number 1 at ``c_m``, i.e. the
bit of ``c_n`` at position ``|c_m|`` is ``1``.

Builders produce finite prefixes of three trees:

* ``build_Sk`` -- the K_k-free tree branching by the K_k-Free Branching
  Criterion, with one coding node per level and ``k-2`` pseudo-coding nodes;
* ``build_Tk`` -- its skew version, one critical node (coding or splitting)
  per level;
* ``build_TR`` -- the full binary tree with one coding node per level,
  coding the Rado graph.
"""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .errors import LengthError, PreconditionError
from .seqtree import BinSeq, LevelTree, lex_key, make_level_tree

HENSON = "henson"
RADO = "rado"
GENERIC = "generic"
KINDS = (HENSON, RADO, GENERIC)


@dataclass(frozen=True)
class FiniteGraph:
    """Ordered finite graph on positions ``0..order-1``.

    ``labels`` carries the vertex names (e.g. negative indices for
    pseudo-coding vertices); identity uses order, labels and edges.
    """

    order: int
    edges: frozenset[tuple[int, int]] = frozenset()
    labels: tuple[int, ...] | None = None

    def __post_init__(self):
        norm = set()
        for i, j in self.edges:
            if i == j:
                raise PreconditionError(f"loop at vertex {i}")
            if not (0 <= i < self.order and 0 <= j < self.order):
                raise PreconditionError(f"edge ({i}, {j}) outside 0..{self.order - 1}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))
        labels = tuple(range(self.order)) if self.labels is None else tuple(self.labels)
        if len(labels) != self.order:
            raise PreconditionError("one label per vertex is required")
        object.__setattr__(self, "labels", labels)

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        masks = [0] * self.order
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return tuple(masks)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        return all(self.adjacent(a, b) for a, b in itertools.combinations(vertices, 2))

    def find_clique(self, size: int) -> tuple[int, ...] | None:
        """Some ``size``-clique as increasing positions, or ``None``."""
        found = _find_clique((1 << self.order) - 1, size, self.neighbor_masks)
        return None if found is None else tuple(sorted(found))

    def has_clique(self, size: int) -> bool:
        return self.find_clique(size) is not None

    def induced(self, positions: Sequence[int]) -> FiniteGraph:
        index = {p: n for n, p in enumerate(positions)}
        edges = {(index[i], index[j]) for i, j in self.edges if i in index and j in index}
        return FiniteGraph(len(positions), frozenset(edges))

    def to_dict(self) -> dict:
        return {"order": self.order, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_dict(cls, data: dict) -> FiniteGraph:
        return cls(int(data["order"]), frozenset(tuple(e) for e in data.get("edges", [])))


def _find_clique(mask: int, size: int, adj: Sequence[int]) -> list[int] | None:
    if size <= 0:
        return []
    while mask:
        if mask.bit_count() < size:
            return None
        v = (mask & -mask).bit_length() - 1
        mask &= ~(1 << v)
        rest = _find_clique(mask & adj[v], size - 1, adj)
        if rest is not None:
            return [v, *rest]
    return None


def decode_graph(chain: Sequence[BinSeq], labels: Sequence[int] | None = None) -> FiniteGraph:
    """The graph coded by nodes of strictly increasing length."""
    for a, b in zip(chain, chain[1:]):
        if len(a) >= len(b):
            raise LengthError(f"lengths must strictly increase: {len(a)} then {len(b)}")
    edges = {(m, n) for n, t in enumerate(chain) for m in range(n) if t[len(chain[m])] == "1"}
    return FiniteGraph(len(chain), frozenset(edges), None if labels is None else tuple(labels))


@dataclass(frozen=True)
class CodingTree:
    """A level tree together with an ordered sequence of coding nodes.

    ``coding`` lists every coding node in index order; the first
    ``n_pseudo`` entries are pseudo-coding nodes with indices
    ``-n_pseudo..-1``.
    """

    tree: LevelTree
    coding: tuple[BinSeq, ...]
    kind: str = GENERIC
    k: int | None = None
    skew: bool = False
    n_pseudo: int = 0
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coding", tuple(self.coding))
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown kind {self.kind!r}")
        if self.kind == HENSON and (self.k is None or self.k < 3):
            raise PreconditionError("henson trees need k >= 3")
        if not 0 <= self.n_pseudo <= len(self.coding):
            raise PreconditionError("n_pseudo out of range")
        for c in self.coding:
            if c not in self.tree:
                raise PreconditionError(f"coding node {c!r} is not in the tree")
        for a, b in zip(self.coding, self.coding[1:]):
            if len(a) >= len(b):
                raise PreconditionError("coding node lengths must strictly increase")
        index = {c: n - self.n_pseudo for n, c in enumerate(self.coding)}
        object.__setattr__(self, "_index", index)

    # -- coding-node access -------------------------------------------------

    @property
    def n_coding(self) -> int:
        """Number of genuine (non-pseudo) coding nodes."""
        return len(self.coding) - self.n_pseudo

    def indices(self, include_pseudo: bool = True) -> range:
        return range(-self.n_pseudo if include_pseudo else 0, self.n_coding)

    def coding_node(self, i: int) -> BinSeq:
        if not -self.n_pseudo <= i < self.n_coding:
            raise IndexError(i)
        return self.coding[i + self.n_pseudo]

    def index_of(self, node: BinSeq) -> int | None:
        return self._index.get(node)

    def is_coding(self, node: BinSeq) -> bool:
        return node in self._index

    @cached_property
    def coding_lengths(self) -> dict[int, int]:
        """Map from a coding-node length to its index."""
        return {len(c): i for c, i in self._index.items()}

    def coding_at_length(self, length: int) -> int | None:
        return self.coding_lengths.get(length)

    def graph(self, include_pseudo: bool = False) -> FiniteGraph:
        """Decode the coding nodes; pseudo-coding vertices are omitted by default."""
        start = 0 if include_pseudo else self.n_pseudo
        chain = self.coding[start:]
        labels = [i - self.n_pseudo for i in range(start, len(self.coding))]
        return decode_graph(chain, labels)

    @cached_property
    def full_graph(self) -> FiniteGraph:
        return self.graph(include_pseudo=True)

    def adjacent(self, i: int, j: int) -> bool:
        return self.full_graph.adjacent(i + self.n_pseudo, j + self.n_pseudo)

    def passing_set(self, t: BinSeq, upto: int | None = None) -> frozenset[int]:
        """Indices ``i`` with ``|c_i| < upto`` (default ``|t|``) and ``t(|c_i|) = 1``."""
        limit = len(t) if upto is None else min(upto, len(t))
        return frozenset(i for c, i in self._index.items() if len(c) < limit and t[len(c)] == "1")

    # -- structural checks ----------------------------------------------------

    def critical_nodes(self, length: int) -> list[BinSeq]:
        """Coding and splitting nodes of the given length."""
        out = []
        for t in self.tree.nodes_of_length(length):
            if self.is_coding(t) or len(self.tree.succ(t)) > 1:
                out.append(t)
        return out

    def is_skew(self) -> bool:
        return all(len(self.critical_nodes(n)) <= 1 for n in self.tree.levels)

    def invariant_violations(self) -> list[str]:
        problems = []
        if self.skew and not self.is_skew():
            bad = [n for n in self.tree.levels if len(self.critical_nodes(n)) > 1]
            problems.append(f"skew tree has several critical nodes at lengths {bad}")
        if self.kind == HENSON and self.n_pseudo and self.n_coding:
            # pseudo-coding vertices together with v_0 form a (k-1)-clique
            g = self.full_graph
            if not g.is_clique(range(self.n_pseudo + 1)):
                problems.append("pseudo-coding nodes and c_0 do not code a (k-1)-clique")
        return problems

    # -- serialisation -----------------------------------------------------------

    def to_dict(self) -> dict:
        out = self.tree.to_dict()
        out["kind"] = self.kind
        if self.k is not None:
            out["k"] = self.k
        out["skew"] = self.skew
        out["coding"] = [{"index": i, "node": c} for c, i in sorted(self._index.items(), key=lambda p: p[1])]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> CodingTree:
        tree = LevelTree.from_dict(data)
        entries = sorted(data.get("coding", []), key=lambda e: e["index"])
        n_pseudo = sum(1 for e in entries if e["index"] < 0)
        expected = list(range(-n_pseudo, len(entries) - n_pseudo))
        if [e["index"] for e in entries] != expected:
            raise PreconditionError("coding indices must be consecutive from -n_pseudo")
        return cls(
            tree,
            tuple(e["node"] for e in entries),
            kind=data.get("kind", GENERIC),
            k=data.get("k"),
            skew=bool(data.get("skew", False)),
            n_pseudo=n_pseudo,
        )


# -- the K_k-Free Branching Criterion ------------------------------------------


def forbidden_one_extension(tree: CodingTree, t: BinSeq, k: int) -> bool:
    """Whether ``t⌢1`` would let a later coding node complete a ``k``-clique.

    True iff the coding nodes of length at most ``|t|`` at which ``t⌢1``
    passes 1 contain a ``(k-1)``-clique.
    """
    if tree.kind != HENSON:
        raise PreconditionError("the branching criterion applies to henson trees")
    ext = t + "1"
    positions = [i + tree.n_pseudo for c, i in tree._index.items() if len(c) <= len(t) and ext[len(c)] == "1"]
    g = tree.full_graph
    mask = 0
    for p in positions:
        mask |= 1 << p
    return _find_clique(mask, k - 1, g.neighbor_masks) is not None


@dataclass(frozen=True)
class FBCReport:
    violations: tuple[tuple[BinSeq, str], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        if self.ok:
            return {"status": "ok"}
        return {"status": "violations", "violations": [{"node": n, "reason": r} for n, r in self.violations]}


def _projection(tree: CodingTree, t: BinSeq) -> str:
    return "".join(t[len(c)] for c in tree.coding if len(c) < len(t))


def check_kfbc(tree: CodingTree, k: int) -> FBCReport:
    """Check the branching criterion on every non-maximal level.

    For non-skew trees the criterion is checked node by node: ``t⌢0`` must
    be a successor and ``t⌢1`` a successor exactly when it is not forbidden.
    Skew trees cannot branch at coding levels, so there the check runs on
    coding projections (the bits of a node at coding-node lengths): at each
    coding level, the projections one level up must contain ``p⌢0`` for
    every projection ``p`` and ``p⌢1`` exactly when ``t⌢1`` is allowed.
    """
    if tree.kind != HENSON:
        raise PreconditionError(f"check_kfbc needs a henson tree, got {tree.kind}")
    if tree.k != k:
        raise PreconditionError(f"tree codes K_{tree.k}-free graphs, not K_{k}-free")
    violations: list[tuple[BinSeq, str]] = []
    levels = tree.tree.levels
    for n, length in enumerate(levels[:-1]):
        nodes = tree.tree.level(n)
        for t in nodes:
            if tree.tree.is_maximal(t):
                violations.append((t, "maximal node below the top level"))
        if not tree.skew:
            for t in nodes:
                succ = set(tree.tree.succ(t))
                if t + "0" not in succ:
                    violations.append((t, "missing 0-extension"))
                allowed = not forbidden_one_extension(tree, t, k)
                if allowed and t + "1" not in succ:
                    violations.append((t, "permitted 1-extension missing"))
                elif not allowed and t + "1" in succ:
                    violations.append((t, "forbidden 1-extension present"))
            continue
        if tree.coding_at_length(length) is None:
            continue
        upper = {_projection(tree, u) for u in tree.tree.level(n + 1)}
        seen = set()
        for t in nodes:
            p = _projection(tree, t)
            if p in seen:
                continue
            seen.add(p)
            if p + "0" not in upper:
                violations.append((t, "missing 0-extension"))
            allowed = not forbidden_one_extension(tree, t, k)
            if allowed and p + "1" not in upper:
                violations.append((t, "permitted 1-extension missing"))
            elif not allowed and p + "1" in upper:
                violations.append((t, "forbidden 1-extension present"))
    return FBCReport(tuple(violations))


# -- builders --------------------------------------------------------------------


def _grow_henson(k: int, n_coding: int):
    """Level lists and coding nodes of the K_k-free tree, one coding node per level.

    Returns ``(levels, coding)`` where ``levels[l]`` is the lex-sorted list
    of nodes of length ``l``.
    """
    n_pseudo = k - 2
    total = n_pseudo + n_coding
    level = [""]
    levels = [level]
    pmask = {"": 0}
    adj: list[int] = []
    coding: list[BinSeq] = []
    queue: deque[BinSeq] = deque()
    for length in range(max(total, 1)):
        if length >= total:
            break
        if length <= n_pseudo:
            # pseudo-coding nodes 1^j and c_0 = 1^(k-2) code a (k-1)-clique
            c = "1" * length
        else:
            c = queue.popleft()
            # extend rightmost: take 1 wherever the criterion allows it
            while len(c) < length:
                c += "1" if c + "1" in pmask else "0"
        v = len(coding)
        coding.append(c)
        mask = pmask[c]
        adj.append(mask)
        for w in range(v):
            if mask >> w & 1:
                adj[w] |= 1 << v
        if length == total - 1:
            break
        nxt = []
        for t in level:
            nxt.append(t + "0")
            pmask[t + "0"] = pmask[t]
            if _find_clique(pmask[t] & adj[v], k - 2, adj) is None:
                nxt.append(t + "1")
                pmask[t + "1"] = pmask[t] | (1 << v)
                queue.append(t + "0")
                queue.append(t + "1")
        level = nxt
        levels.append(level)
    return levels, coding


def build_Sk(k: int, n_coding: int) -> CodingTree:
    """Prefix of the strong K_k-free tree with ``n_coding`` coding nodes.

    Coding nodes sit one per level; pseudo-coding nodes ``1^j`` occupy
    lengths ``0..k-3`` and ``c_0 = 1^(k-2)``.  Each later coding node
    extends the oldest unserved split output, taking bit 1 whenever the
    branching criterion permits.
    """
    if k < 3:
        raise PreconditionError("k must be at least 3")
    if n_coding < 0:
        raise PreconditionError("n_coding must be non-negative")
    levels, coding = _grow_henson(k, n_coding)
    nodes = frozenset(itertools.chain.from_iterable(levels))
    tree = LevelTree(nodes, tuple(range(len(levels))))
    return CodingTree(tree, tuple(coding), kind=HENSON, k=k, skew=False, n_pseudo=k - 2)


def build_Tk(k: int, n_coding: int) -> CodingTree:
    """Skew version of :func:`build_Sk` coding the same ordered graph.

    Each level of the K_k-free tree becomes a block of skew levels: first one
    level per splitting node (left to right), each splitting only that node,
    then one coding level at which every node extends by the bit it carries
    in the unskewed tree.  Elsewhere nodes extend by 0.
    """
    if k < 3:
        raise PreconditionError("k must be at least 3")
    if n_coding < 0:
        raise PreconditionError("n_coding must be non-negative")
    s_levels, s_coding = _grow_henson(k, n_coding)
    s_nodes = set(itertools.chain.from_iterable(s_levels))
    # reps: (node in the unskewed tree, its skew image, bit it takes at the coding level)
    reps: list[tuple[BinSeq, BinSeq, str | None]] = [("", "", None)]
    t_levels: list[list[BinSeq]] = []
    coding: list[BinSeq] = []
    for length, s_level in enumerate(s_levels):
        c = s_coding[length]
        top = length == len(s_levels) - 1
        if top:
            reps = [(s, img, "0") for s, img, _ in reps]
        else:
            # split nodes first, each on its own level, left to right
            for s, img, _ in list(reps):
                if s + "1" in s_nodes:
                    t_levels.append([img for _, img, _ in reps])
                    reps_split = []
                    for s2, img2, b2 in reps:
                        if s2 == s:
                            reps_split.extend([(s2, img2 + "0", "0"), (s2, img2 + "1", "1")])
                        else:
                            reps_split.append((s2, img2 + "0", b2))
                    reps = reps_split
            reps = [(s, img, "0" if b is None else b) for s, img, b in reps]
        t_levels.append([img for _, img, _ in reps])
        coding.append(next(img for s, img, b in reps if s == c and b == "0"))
        if top:
            break
        reps = [(s + b, img + b, None) for s, img, b in reps]
    nodes = frozenset(itertools.chain.from_iterable(t_levels))
    tree = LevelTree(nodes, tuple(range(len(t_levels))))
    return CodingTree(tree, tuple(coding), kind=HENSON, k=k, skew=True, n_pseudo=k - 2)


def build_TR(n_coding: int) -> CodingTree:
    """Prefix of the Rado coding tree: ``2^{<n}`` with one coding node per length.

    ``c_n`` is the ``n``-th node of the tree in breadth-first order, padded
    with zeros to length ``n``, so patterns over earlier coding nodes are
    realised in binary-counter order.
    """
    if n_coding < 0:
        raise PreconditionError("n_coding must be non-negative")
    height = max(n_coding, 1)
    tree = LevelTree(
        frozenset("".join(b) for n in range(height) for b in itertools.product("01", repeat=n)),
        tuple(range(height)),
    )
    coding = []
    queue: deque[BinSeq] = deque([""])
    for n in range(n_coding):
        u = queue.popleft()
        queue.extend((u + "0", u + "1"))
        coding.append(u + "0" * (n - len(u)))
    return CodingTree(tree, tuple(coding), kind=RADO, skew=False)


# -- antichains coding a graph -------------------------------------------------


def graph_to_antichains(G: FiniteGraph, host: CodingTree, max_depth: int | None = None) -> list[tuple[BinSeq, ...]]:
    """Antichains of coding nodes among ``c_0..c_{max_depth-1}`` coding ``G``.

    The ``n``-th member (by length) of each antichain codes vertex ``n`` of
    ``G``, i.e. the order-preserving bijection is an isomorphism.  Results
    are in increasing lexicographic order of their index tuples.
    """
    depth = host.n_coding if max_depth is None else min(max_depth, host.n_coding)
    nodes = [host.coding_node(i) for i in range(depth)]
    out: list[tuple[BinSeq, ...]] = []

    def extend(chosen: list[int]):
        n = len(chosen)
        if n == G.order:
            out.append(tuple(nodes[i] for i in chosen))
            return
        start = chosen[-1] + 1 if chosen else 0
        for j in range(start, depth):
            cand = nodes[j]
            ok = True
            for m, i in enumerate(chosen):
                prev = nodes[i]
                if cand.startswith(prev) or (cand[len(prev)] == "1") != G.adjacent(m, n):
                    ok = False
                    break
            if ok:
                chosen.append(j)
                extend(chosen)
                chosen.pop()

    if G.order:
        extend([])
    return out


def sorted_nodes(nodes: Iterable[BinSeq]) -> list[BinSeq]:
    return sorted(nodes, key=lex_key)


def tree_from_nodes(nodes: Iterable[BinSeq]) -> LevelTree:
    nodes = set(nodes)
    tree, _ = make_level_tree(nodes, {len(t) for t in nodes})
    return tree
