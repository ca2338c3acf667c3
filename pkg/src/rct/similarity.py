"""Strong and strict similarity of finite node sets.

Sets are closed under meets before comparison.  A strong similarity map
preserves lexicographic order, meets, relative lengths, initial segments,
coding nodes and passing numbers at coding nodes.  Because it preserves the
(total) lexicographic order, the only candidate between two sets is the
order-preserving pairing, which is what :func:`strong_similarity_map`
tests and what :func:`canonical_type` encodes.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cliques import pre_clique_levels
from .coding import HENSON, CodingTree, FiniteGraph, graph_to_antichains
from .errors import EqualInput, PreconditionError
from .seqtree import BinSeq, Ordering, is_initial_segment, lex_cmp, lex_key, meet, meet_closure

STRONG = "strong"
STRICT = "strict"


def triangle_order_cmp(s: BinSeq, t: BinSeq) -> Ordering:
    """The dense order on ``2^{<omega}`` isomorphic to the rationals."""
    if s == t:
        raise EqualInput("the order compares distinct sequences")
    m = meet(s, t)
    if len(m) < len(s) and len(m) < len(t):
        below = s[len(m)] < t[len(m)]
    elif len(m) == len(s):
        below = t[len(s)] == "1"
    else:
        below = s[len(t)] == "0"
    return Ordering.LT if below else Ordering.GT


def _respects(f: Mapping[BinSeq, BinSeq], coding_s: frozenset, coding_t: frozenset) -> bool:
    """The six strong-similarity conditions for an explicit bijection."""
    items = list(f.items())
    for s, fs in items:
        if (s in coding_s) != (fs in coding_t):
            return False
    for (s, fs), (t, ft) in itertools.product(items, repeat=2):
        if lex_cmp(s, t) != lex_cmp(fs, ft):
            return False
        m = meet(s, t)
        if m not in f or f[m] != meet(fs, ft):
            return False
        if (len(s) < len(t)) != (len(fs) < len(ft)) or (len(s) == len(t)) != (len(fs) == len(ft)):
            return False
        if is_initial_segment(s, t) != is_initial_segment(fs, ft):
            return False
        if s in coding_s and len(s) < len(t) and t[len(s)] != ft[len(fs)]:
            return False
    return True


def is_strong_similarity(
    f: Mapping[BinSeq, BinSeq],
    coding_s: Iterable[BinSeq] = (),
    coding_t: Iterable[BinSeq] = (),
) -> bool:
    """Check an explicit bijection between meet-closed sets."""
    if len(set(f.values())) != len(f):
        return False
    return _respects(f, frozenset(coding_s), frozenset(coding_t))


def strong_similarity_map(
    S: Iterable[BinSeq],
    T: Iterable[BinSeq],
    coding_s: Iterable[BinSeq] = (),
    coding_t: Iterable[BinSeq] = (),
) -> dict[BinSeq, BinSeq] | None:
    """The strong similarity map between the meet-closures of ``S`` and ``T``, if any.

    Coding nodes are the members of ``coding_s``/``coding_t`` that lie in the
    respective closures.
    """
    cs, ct = meet_closure(S), meet_closure(T)
    if len(cs) != len(ct):
        return None
    f = dict(zip(sorted(cs, key=lex_key), sorted(ct, key=lex_key)))
    coding_s = frozenset(coding_s) & cs
    coding_t = frozenset(coding_t) & ct
    return f if _respects(f, coding_s, coding_t) else None


@dataclass(frozen=True, order=True)
class SimilarityType:
    """Canonical form of a finite node set up to strong (or strict) similarity.

    ``form`` has one entry per node of the meet-closure in lexicographic
    order: ``(length rank, parent position, coding flag, passing numbers)``
    where the parent is the longest proper initial segment in the closure
    (``-1`` for none) and the passing numbers are ``(coding position, bit)``
    pairs over shorter coding nodes.  ``strict_trace`` is ``None`` for strong
    types.
    """

    form: tuple
    strict_trace: tuple | None = field(default=None)

    def to_dict(self) -> dict:
        out = {
            "nodes": [
                {"length_rank": r, "parent": p, "coding": bool(c), "passing": [list(x) for x in pn]}
                for r, p, c, pn in self.form
            ]
        }
        if self.strict_trace is not None:
            out["strict"] = [{"level": lvl, "a": a, "members": list(m)} for m, a, lvl in self.strict_trace]
        return out


def _relative_level(length: int, lengths: list[int]) -> int:
    """Position of ``length`` among sorted distinct ``lengths``: ``2*below + (1 if equal)``."""
    below = sum(1 for n in lengths if n < length)
    return 2 * below + (1 if length in lengths else 0)


def strong_form(nodes: Iterable[BinSeq], coding: Iterable[BinSeq] = ()) -> tuple:
    closure = sorted(meet_closure(nodes), key=lex_key)
    coding = frozenset(coding)
    pos = {t: n for n, t in enumerate(closure)}
    lengths = sorted({len(t) for t in closure})
    rank = {n: r for r, n in enumerate(lengths)}
    coded = [t for t in closure if t in coding]
    form = []
    for t in closure:
        parent = max((u for u in closure if u != t and t.startswith(u)), key=len, default=None)
        passing = tuple(sorted((pos[c], int(t[len(c)])) for c in coded if len(c) < len(t)))
        form.append((rank[len(t)], -1 if parent is None else pos[parent], int(t in coding), passing))
    return tuple(form)


def strict_trace(nodes: Iterable[BinSeq], host: CodingTree) -> tuple:
    """Pre-clique placement for the members of ``nodes``.

    For every subset ``P`` of at least two members and every ``a`` in
    ``[3, k]`` admitting a pre-``a``-clique, records ``P`` (as positions in
    the lexicographic order of the meet-closure), ``a``, and the relative
    level at which the earliest such pre-clique becomes available.
    """
    members = sorted(set(nodes), key=lex_key)
    closure = sorted(meet_closure(members), key=lex_key)
    pos = {t: n for n, t in enumerate(closure)}
    lengths = sorted({len(t) for t in closure})
    trace = []
    for size in range(2, len(members) + 1):
        for P in itertools.combinations(members, size):
            for a in range(3, host.k + 1):
                found = pre_clique_levels(host, P, a)
                if found:
                    first = min(level for _, level in found)
                    trace.append((tuple(pos[p] for p in P), a, _relative_level(first, lengths)))
    return tuple(sorted(trace))


def canonical_type(
    nodes: Iterable[BinSeq],
    mode: str = STRONG,
    host: CodingTree | None = None,
    coding: Iterable[BinSeq] | None = None,
) -> SimilarityType:
    """Canonical similarity type of ``nodes``.

    Coding nodes are ``coding`` if given, otherwise the host's coding nodes
    inside the meet-closure.  Strict mode adds the pre-clique trace and
    needs a henson host.
    """
    nodes = frozenset(nodes)
    if coding is None:
        coding = () if host is None else [t for t in meet_closure(nodes) if host.is_coding(t)]
    form = strong_form(nodes, coding)
    if mode == STRONG:
        return SimilarityType(form)
    if mode != STRICT:
        raise PreconditionError(f"unknown mode {mode!r}")
    if host is None or host.kind != HENSON:
        raise PreconditionError("strict similarity needs a henson host")
    return SimilarityType(form, strict_trace(nodes, host))


@dataclass(frozen=True)
class TypeReport:
    types: tuple[SimilarityType, ...]
    saturated: bool
    grew_at_last_step: bool
    counts_by_depth: tuple[tuple[int, int], ...]
    antichains: int

    @property
    def count(self) -> int:
        return len(self.types)

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "saturated": self.saturated,
            "grew_at_last_step": self.grew_at_last_step,
            "counts_by_depth": [list(p) for p in self.counts_by_depth],
            "antichains": self.antichains,
            "types": [t.to_dict() for t in self.types],
        }


def _type_batch(args):
    batch, mode, host = args
    return [canonical_type(a, mode, host) for a in batch]


def enumerate_types(
    G: FiniteGraph,
    host: CodingTree,
    mode: str = STRONG,
    max_depth: int | None = None,
    jobs: int = 1,
) -> TypeReport:
    """Similarity types of antichains of coding nodes coding ``G``.

    ``max_depth`` bounds the coding-node indices used (``c_0..c_{d-1}``).
    The report is saturated when the type set at ``d-2`` already equals the
    set at ``d``; this is evidence of completeness, not a proof.
    """
    if mode == STRICT and host.kind != HENSON:
        raise PreconditionError("strict similarity needs a henson host")
    depth = host.n_coding if max_depth is None else min(max_depth, host.n_coding)
    antichains = graph_to_antichains(G, host, depth)
    if jobs > 1 and len(antichains) >= 2 * jobs:
        chunks = [antichains[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            typed = list(itertools.chain.from_iterable(pool.map(_type_batch, [(c, mode, host) for c in chunks])))
        order = list(itertools.chain.from_iterable(chunks))
        types_of = dict(zip(order, typed))
    else:
        types_of = {a: canonical_type(a, mode, host) for a in antichains}
    # first depth at which each type appears
    first: dict[SimilarityType, int] = {}
    for a, ty in types_of.items():
        need = max(host.index_of(x) for x in a) + 1
        if ty not in first or need < first[ty]:
            first[ty] = need
    counts = tuple((d, sum(1 for v in first.values() if v <= d)) for d in range(depth + 1))
    at = dict(counts)
    saturated = depth >= 2 and at[depth - 2] == at[depth]
    grew = depth >= 1 and at[depth - 1] != at[depth]
    return TypeReport(tuple(sorted(first)), saturated, grew, counts, len(antichains))


def devlin_pairs(max_length: int = 4) -> list[tuple[BinSeq, BinSeq]]:
    """Antichain pairs ``(s, t)``, ``|s| < |t|``, in ``2^{<=max_length}`` with ``t(|s|) = 0``."""
    seqs = ["".join(b) for n in range(max_length + 1) for b in itertools.product("01", repeat=n)]
    out = []
    for s, t in itertools.product(seqs, repeat=2):
        if len(s) < len(t) and not t.startswith(s) and t[len(s)] == "0":
            out.append((s, t))
    return out


@dataclass(frozen=True)
class DevlinType:
    type: SimilarityType
    witness: tuple[BinSeq, BinSeq]


def devlin_pair_types(max_length: int = 4) -> list[DevlinType]:
    """Strong similarity types of rational-coding pairs, each with its first witness."""
    seen: dict[SimilarityType, tuple[BinSeq, BinSeq]] = {}
    for pair in devlin_pairs(max_length):
        ty = canonical_type(pair)
        seen.setdefault(ty, pair)
    return [DevlinType(ty, w) for ty, w in sorted(seen.items())]
