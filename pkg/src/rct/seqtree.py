"""Binary sequences, level trees and strong subtrees.

Nodes are plain ``str`` objects over the alphabet ``{"0", "1"}``; the empty
string is the root.  A :class:`LevelTree` is a finite set of such nodes that
is closed under restriction to a fixed set of lengths (its *levels*).  Heights
are indices into that level list, so ``T(n)`` is the set of nodes whose
length is ``levels[n]``.

Strong subtrees follow the usual definition: a root, then at every selected
height each immediate successor (in the host) of each chosen node is extended
by exactly one chosen node.
"""

from __future__ import annotations

import enum
import itertools
from collections import defaultdict
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .errors import LengthError, LevelMismatch, PreconditionError

BinSeq = str

_LEX_TABLE = str.maketrans("01", "02")


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def check_binseq(s: str) -> str:
    if not isinstance(s, str) or s.strip("01"):
        raise ValueError(f"not a binary sequence: {s!r}")
    return s


def lex_key(s: BinSeq) -> str:
    """Sort key realising :func:`lex_cmp`.

    Bits are mapped to ``0``/``2`` and a terminator ``1`` is appended, so an
    initial segment sorts between its 0-side and 1-side extensions.
    """
    return s.translate(_LEX_TABLE) + "1"


def lex_cmp(s: BinSeq, t: BinSeq) -> Ordering:
    """Lexicographic order on ``2^{<omega}``.

    Incomparable sequences compare by their first differing bit.  When one
    sequence is a proper initial segment of the other, the missing bit of
    the shorter one counts as lying strictly between 0 and 1.
    """
    if s == t:
        return Ordering.EQ
    m = len(meet(s, t))
    if m < len(s) and m < len(t):
        return Ordering.LT if s[m] < t[m] else Ordering.GT
    if m == len(s):
        return Ordering.LT if t[m] == "1" else Ordering.GT
    return Ordering.LT if s[m] == "0" else Ordering.GT


def passing_number(t: BinSeq, s: BinSeq) -> int:
    """The bit of ``t`` at position ``|s|``."""
    if len(s) >= len(t):
        raise LengthError(f"passing number needs |s| < |t|, got {len(s)} >= {len(t)}")
    return int(t[len(s)])


def meet(s: BinSeq, t: BinSeq) -> BinSeq:
    """Longest common initial segment."""
    n = min(len(s), len(t))
    for i in range(n):
        if s[i] != t[i]:
            return s[:i]
    return s[:n]


def is_initial_segment(s: BinSeq, t: BinSeq) -> bool:
    """``s ⊑ t``."""
    return t.startswith(s)


def meet_closure(nodes: Iterable[BinSeq]) -> frozenset[BinSeq]:
    nodes = set(nodes)
    ordered = sorted(nodes, key=lex_key)
    # meets of lex-adjacent nodes already generate the closure
    closure = set(nodes)
    for a, b in zip(ordered, ordered[1:]):
        closure.add(meet(a, b))
    return frozenset(closure)


def full_binary_nodes(height: int) -> set[BinSeq]:
    """All sequences of length ``< height``."""
    return {"".join(bits) for n in range(height) for bits in itertools.product("01", repeat=n)}


@dataclass(frozen=True)
class LevelTree:
    """A finite tree closed under restriction to ``levels``.

    Construct through :func:`make_level_tree` unless the node set is already
    known to be closed; the constructor validates but does not repair.
    """

    nodes: frozenset[BinSeq]
    levels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "levels", tuple(self.levels))
        if any(b <= a for a, b in zip(self.levels, self.levels[1:])):
            raise PreconditionError(f"levels must be strictly increasing: {self.levels}")
        level_set = set(self.levels)
        for t in self.nodes:
            if len(t) not in level_set:
                raise LevelMismatch(f"node {t!r} has length {len(t)} not in levels")
        by_len = self._by_length
        for n, length in enumerate(self.levels):
            if length not in by_len:
                raise PreconditionError(f"level {length} carries no nodes")
            if n and any(t[: self.levels[n - 1]] not in self.nodes for t in by_len[length]):
                raise PreconditionError(f"nodes at level {length} are not closed downward")

    @cached_property
    def _by_length(self) -> dict[int, tuple[BinSeq, ...]]:
        groups = defaultdict(list)
        for t in self.nodes:
            groups[len(t)].append(t)
        return {n: tuple(sorted(g, key=lex_key)) for n, g in groups.items()}

    @cached_property
    def _children(self) -> dict[BinSeq, tuple[BinSeq, ...]]:
        out: dict[BinSeq, list[BinSeq]] = {t: [] for t in self.nodes}
        for n in range(1, len(self.levels)):
            prev = self.levels[n - 1]
            for u in self._by_length[self.levels[n]]:
                out[u[:prev]].append(u)
        return {t: tuple(c) for t, c in out.items()}

    @property
    def num_heights(self) -> int:
        return len(self.levels)

    def height(self, t: BinSeq) -> int:
        return self.levels.index(len(t))

    def level(self, n: int) -> tuple[BinSeq, ...]:
        """``T(n)``: nodes of height ``n`` in lexicographic order."""
        return self._by_length[self.levels[n]]

    def nodes_of_length(self, length: int) -> tuple[BinSeq, ...]:
        return self._by_length.get(length, ())

    def children(self, t: BinSeq) -> tuple[BinSeq, ...]:
        """Nodes at the next height extending ``t``."""
        return self._children[t]

    def succ(self, t: BinSeq) -> tuple[BinSeq, ...]:
        """``Succ_T(t)``: one-bit extensions of ``t`` through which the tree passes."""
        return tuple(sorted({u[: len(t) + 1] for u in self._children[t]}, key=lex_key))

    def is_maximal(self, t: BinSeq) -> bool:
        return not self._children[t]

    def __contains__(self, t: object) -> bool:
        return t in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def to_dict(self) -> dict:
        return {"levels": list(self.levels), "nodes": sorted(self.nodes, key=lambda s: (len(s), s))}

    @classmethod
    def from_dict(cls, data: dict) -> LevelTree:
        nodes = frozenset(check_binseq(s) for s in data["nodes"])
        return cls(nodes, tuple(data["levels"]))


def make_level_tree(nodes: Iterable[BinSeq], levels: Iterable[int]) -> tuple[LevelTree, bool]:
    """Close ``nodes`` under restriction to ``levels``.

    Returns the tree and whether the input was already closed.  Levels above
    the longest node carry no nodes and are dropped.
    """
    nodes = {check_binseq(s) for s in nodes}
    levels = sorted(set(levels))
    level_set = set(levels)
    for t in nodes:
        if len(t) not in level_set:
            raise LevelMismatch(f"node {t!r} has length {len(t)} not in levels {levels}")
    if not nodes:
        raise PreconditionError("a level tree needs at least one node")
    top = max(len(t) for t in nodes)
    levels = [n for n in levels if n <= top]
    closed = {t[:n] for t in nodes for n in levels if n <= len(t)}
    return LevelTree(frozenset(closed), tuple(levels)), closed == nodes


def full_binary_tree(height: int) -> LevelTree:
    """``2^{<height}`` with every length as a level."""
    return LevelTree(frozenset(full_binary_nodes(height)), tuple(range(height)))


@dataclass(frozen=True)
class StrongSubtree:
    """A strong subtree of ``host`` given by heights ``level_map`` and level sets.

    ``level_sets[n]`` is ``S(n)``, a lexicographically sorted tuple of nodes
    of ``host`` at height ``level_map[n]``.  Equality ignores the host.
    """

    host: LevelTree = field(compare=False, repr=False)
    level_map: tuple[int, ...]
    level_sets: tuple[tuple[BinSeq, ...], ...]

    @property
    def height(self) -> int:
        return len(self.level_map)

    @property
    def root(self) -> BinSeq:
        return self.level_sets[0][0]

    @cached_property
    def nodes(self) -> frozenset[BinSeq]:
        return frozenset(itertools.chain.from_iterable(self.level_sets))

    def as_tree(self) -> LevelTree:
        return LevelTree(self.nodes, tuple(self.host.levels[m] for m in self.level_map))

    def sort_key(self):
        return (self.level_map, tuple(tuple(lex_key(s) for s in lvl) for lvl in self.level_sets))


def _extend_level(host: LevelTree, current: tuple[BinSeq, ...], target_height: int) -> Iterator[tuple[BinSeq, ...]]:
    target = host.level(target_height)
    choices = []
    for s in current:
        for u in host.succ(s):
            options = [x for x in target if x.startswith(u)]
            if not options:
                return
            choices.append(options)
    for pick in itertools.product(*choices):
        yield tuple(sorted(pick, key=lex_key))


def _iter_with_level_map(host: LevelTree, level_map: tuple[int, ...]) -> Iterator[StrongSubtree]:
    def grow(sets: list[tuple[BinSeq, ...]]):
        n = len(sets)
        if n == len(level_map):
            yield StrongSubtree(host, level_map, tuple(sets))
            return
        for nxt in _extend_level(host, sets[-1], level_map[n]):
            sets.append(nxt)
            yield from grow(sets)
            sets.pop()

    for root in host.level(level_map[0]):
        yield from grow([(root,)])


def iter_strong_subtrees(host: LevelTree, k: int, level_map: Sequence[int] | None = None) -> Iterator[StrongSubtree]:
    """Lazily yield the ``k``-strong subtrees of ``host``.

    Order is by level map, then root, then level sets, each lexicographic.
    """
    if k < 1:
        raise PreconditionError("k must be at least 1")
    if level_map is not None:
        level_map = tuple(level_map)
        if len(level_map) != k:
            raise PreconditionError(f"level map {level_map} does not have length {k}")
        if any(b <= a for a, b in zip(level_map, level_map[1:])) or not all(
            0 <= m < host.num_heights for m in level_map
        ):
            raise PreconditionError(f"level map {level_map} is not increasing within the host")
        maps: Iterable[tuple[int, ...]] = [level_map]
    else:
        maps = itertools.combinations(range(host.num_heights), k)
    for lm in maps:
        # within one level map, sort by root then level sets
        yield from sorted(_iter_with_level_map(host, lm), key=StrongSubtree.sort_key)


def enumerate_strong_subtrees(host: LevelTree, k: int, level_map: Sequence[int] | None = None) -> list[StrongSubtree]:
    return list(iter_strong_subtrees(host, k, level_map))


def is_strong_subtree(host: LevelTree, nodes: Iterable[BinSeq], k: int | None = None) -> bool:
    """Check the strong-subtree conditions for an explicit node set."""
    nodes = set(nodes)
    if not nodes or not nodes <= host.nodes:
        return False
    by_height = defaultdict(set)
    for s in nodes:
        by_height[host.height(s)].add(s)
    heights = sorted(by_height)
    if k is not None and len(heights) != k:
        return False
    if len(by_height[heights[0]]) != 1:
        return False
    for m, m_next in zip(heights, heights[1:]):
        upper = by_height[m_next]
        for s in by_height[m]:
            for u in host.succ(s):
                if sum(1 for x in upper if x.startswith(u)) != 1:
                    return False
        # every upper node must come from some chosen node below
        if any(x[: host.levels[m]] not in by_height[m] for x in upper):
            return False
    return True


def _rehost(sub: StrongSubtree, host: LevelTree) -> StrongSubtree:
    lm = tuple(host.height(lvl[0]) for lvl in sub.level_sets)
    return StrongSubtree(host, lm, sub.level_sets)


def milliken_search(
    host: LevelTree,
    k: int,
    coloring: Callable[[StrongSubtree], int],
    target_height: int,
) -> StrongSubtree | None:
    """First strong subtree of ``target_height`` whose ``k``-strong subtrees are monochromatic.

    The coloring is called on ``k``-strong subtrees expressed relative to
    ``host``.  Colors are memoised per subtree.  ``None`` when the finite
    host holds no witness.
    """
    if target_height < k:
        raise PreconditionError("target height must be at least k")
    cache: dict[StrongSubtree, int] = {}

    def color(sub: StrongSubtree) -> int:
        if sub not in cache:
            cache[sub] = coloring(sub)
        return cache[sub]

    for candidate in iter_strong_subtrees(host, target_height):
        inner = candidate.as_tree()
        seen = None
        mono = True
        for sub in iter_strong_subtrees(inner, k):
            c = color(_rehost(sub, host))
            if seen is None:
                seen = c
            elif c != seen:
                mono = False
                break
        if mono:
            return candidate
    return None


def hl_search(
    forest: Sequence[LevelTree],
    coloring: Callable[[tuple[BinSeq, ...]], int],
    target_height: int,
) -> tuple[tuple[int, ...], list[StrongSubtree]] | None:
    """Finite Halpern-Läuchli witness search.

    Looks for one shared level map and strong subtrees ``S_i`` of each
    ``forest[i]`` such that ``coloring`` is constant on every tuple drawn
    from ``S_0(n) x ... x S_{d-1}(n)``.
    """
    if not forest:
        raise PreconditionError("the forest must contain at least one tree")
    if target_height < 1:
        raise PreconditionError("target height must be at least 1")
    common = min(t.num_heights for t in forest)
    for lm in itertools.combinations(range(common), target_height):
        per_tree = [enumerate_strong_subtrees(t, target_height, lm) for t in forest]
        for combo in itertools.product(*per_tree):
            colors = set()
            for n in range(target_height):
                for tup in itertools.product(*(s.level_sets[n] for s in combo)):
                    colors.add(coloring(tup))
                    if len(colors) > 1:
                        break
                if len(colors) > 1:
                    break
            if len(colors) == 1:
                return lm, list(combo)
    return None
