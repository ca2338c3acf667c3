"""Brute-force checks of finite Ramsey statements and coloring experiments."""

from __future__ import annotations

import itertools
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any

from .errors import BudgetExceeded, EqualInput, PreconditionError, UnknownUniverse
from .seqtree import (
    BinSeq,
    Ordering,
    StrongSubtree,
    full_binary_nodes,
    full_binary_tree,
    iter_strong_subtrees,
    lex_key,
    milliken_search,
)
from .similarity import triangle_order_cmp

DEFAULT_BUDGET = 2**24
MAX_SIERPINSKI_HEIGHT = 7


@dataclass(frozen=True)
class RamseyResult:
    n: int
    k: int
    r: int
    m: int
    holds: bool
    counterexample: tuple[int, ...] | None = None
    colorings_examined: int = 0

    def coloring_dict(self) -> dict[tuple[int, ...], int] | None:
        if self.counterexample is None:
            return None
        return dict(zip(itertools.combinations(range(self.n), self.k), self.counterexample))

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "r": self.r,
            "m": self.m,
            "holds": self.holds,
            "exhaustive": True,
            "colorings_examined": self.colorings_examined,
        }
        if self.counterexample is not None:
            out["counterexample"] = [
                {"set": list(s), "color": c} for s, c in zip(itertools.combinations(range(self.n), self.k), self.counterexample)
            ]
        return out


def monochromatic_subset(n: int, k: int, m: int, coloring: Callable[[tuple[int, ...]], int]) -> tuple[int, ...] | None:
    """Some ``m``-subset of ``range(n)`` all of whose ``k``-subsets share a color."""
    for cand in itertools.combinations(range(n), m):
        colors = {coloring(s) for s in itertools.combinations(cand, k)}
        if len(colors) <= 1:
            return cand
    return None


def finite_ramsey_check(n: int, k: int, r: int, m: int, budget: int = DEFAULT_BUDGET) -> RamseyResult:
    """Does every ``r``-coloring of ``[n]^k`` have a monochromatic ``m``-set?

    Colorings are enumerated by depth-first search over the ``k``-subsets in
    lexicographic order; a branch is cut as soon as an ``m``-set whose last
    ``k``-subset was just colored is monochromatic, so every coloring is
    accounted for.  Raises :class:`BudgetExceeded` when ``r**C(n, k)``
    exceeds ``budget``.
    """
    if not (1 <= k <= m <= n) or r < 1:
        raise PreconditionError("need 1 <= k <= m <= n and r >= 1")
    ksets = list(itertools.combinations(range(n), k))
    total = r ** len(ksets)
    if total > budget:
        raise BudgetExceeded(f"{r}^{len(ksets)} colorings exceed the budget of {budget}")
    index = {s: i for i, s in enumerate(ksets)}
    # m-sets grouped by the position of their last k-subset
    closing: list[list[list[int]]] = [[] for _ in ksets]
    for mset in itertools.combinations(range(n), m):
        members = [index[s] for s in itertools.combinations(mset, k)]
        closing[max(members)].append(members)
    colors = [0] * len(ksets)
    examined = 0

    def search(pos: int) -> bool:
        nonlocal examined
        if pos == len(ksets):
            examined += 1
            return True
        for c in range(r):
            colors[pos] = c
            if any(all(colors[i] == c for i in members) for members in closing[pos]):
                # pruned: every completion has a monochromatic m-set
                examined += r ** (len(ksets) - pos - 1)
                continue
            if search(pos + 1):
                return True
        return False

    if search(0):
        return RamseyResult(n, k, r, m, False, tuple(colors), examined)
    return RamseyResult(n, k, r, m, True, None, examined)


def sierpinski_color(s: BinSeq, t: BinSeq) -> int:
    """Color of the pair ``{s, t}``: 0 when the shorter node precedes the longer in the dense order.

    The pair is read as (shorter, longer); equal lengths are ordered
    lexicographically and therefore always get color 0.
    """
    if s == t:
        raise EqualInput("a pair needs two distinct nodes")
    if (len(t), lex_key(t)) < (len(s), lex_key(s)):
        s, t = t, s
    return 0 if triangle_order_cmp(s, t) == Ordering.LT else 1


def _both_colors(nodes: Sequence[BinSeq]) -> bool:
    seen = set()
    for s, t in itertools.combinations(nodes, 2):
        seen.add(sierpinski_color(s, t))
        if len(seen) == 2:
            return True
    return False


@dataclass(frozen=True)
class PersistenceResult:
    height: int
    holds: bool
    subtrees_checked: int
    counterexample: StrongSubtree | None = None

    def to_dict(self) -> dict:
        out = {"depth": self.height, "holds": self.holds, "subtrees_checked": self.subtrees_checked}
        if self.counterexample is not None:
            out["counterexample"] = [list(lvl) for lvl in self.counterexample.level_sets]
        return out


def verify_sierpinski_persistence(n: int) -> PersistenceResult:
    """Both colors appear in every strong subtree of ``2^{<n}`` with at least two levels.

    Every such subtree contains a 2-level strong subtree (its first two
    levels), so the 2-level ones are checked exhaustively.
    """
    if n > MAX_SIERPINSKI_HEIGHT:
        raise BudgetExceeded(f"height {n} exceeds the exhaustive limit {MAX_SIERPINSKI_HEIGHT}")
    if n < 2:
        return PersistenceResult(n, True, 0)
    host = full_binary_tree(n)
    checked = 0
    for sub in iter_strong_subtrees(host, 2):
        checked += 1
        if not _both_colors(sorted(sub.nodes, key=lex_key)):
            return PersistenceResult(n, False, checked, sub)
    return PersistenceResult(n, True, checked)


# -- generic experiment driver ---------------------------------------------------


@dataclass
class ColoringExperiment:
    universe: dict
    colors: int
    assignment: dict[Any, int]
    result: dict
    provenance: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        def key(obj):
            if isinstance(obj, StrongSubtree):
                return "|".join(",".join(lvl) for lvl in obj.level_sets)
            if isinstance(obj, tuple):
                return ",".join(str(x) for x in obj)
            return str(obj)

        return {
            "universe": self.universe,
            "colors": self.colors,
            "assignment": {key(o): c for o, c in self.assignment.items()},
            "result": self.result,
            "provenance": self.provenance,
        }


def _parity_sum(obj) -> int:
    return sum(obj) % 2


def _sierpinski_pair(obj) -> int:
    return sierpinski_color(*obj)


NAMED_COLORINGS: dict[str, Callable] = {"parity-sum": _parity_sum, "sierpinski": _sierpinski_pair}


def _universe(spec: dict) -> tuple[list, Any]:
    kind = spec.get("kind")
    if kind == "empty":
        return [], None
    if kind == "k-subsets":
        n, k = spec["n"], spec["k"]
        return list(itertools.combinations(range(n), k)), None
    if kind == "node-pairs":
        nodes = sorted(full_binary_nodes(spec["height"]), key=lambda s: (len(s), s))
        return list(itertools.combinations(nodes, 2)), None
    if kind == "strong-subtrees":
        host = full_binary_tree(spec["height"])
        return list(iter_strong_subtrees(host, spec["k"])), host
    raise UnknownUniverse(kind)


def color_experiment(
    universe_spec: dict,
    coloring: Callable | str,
    search_spec: dict,
    seed: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> ColoringExperiment:
    """Color a named universe and run one search over it.

    Universes: ``empty``, ``k-subsets`` (``n``, ``k``), ``node-pairs``
    (``height``), ``strong-subtrees`` (``height``, ``k``).  Searches:
    ``mono-subset`` (``m``, for k-subsets), ``both-colors``, ``milliken``
    (``target``, for strong subtrees).
    """
    objects, host = _universe(universe_spec)
    color = NAMED_COLORINGS[coloring] if isinstance(coloring, str) else coloring
    if len(objects) > budget:
        raise BudgetExceeded(f"{len(objects)} objects exceed the budget of {budget}")
    assignment = {o: int(color(o)) for o in objects}
    ncolors = len(set(assignment.values()))
    search = search_spec.get("kind")
    provenance = {
        "seed": seed,
        "depth": universe_spec.get("height", universe_spec.get("n")),
        "budget": budget,
        "search": search_spec,
    }
    if not objects:
        return ColoringExperiment(universe_spec, 0, {}, {"status": "vacuous"}, provenance)
    if search == "mono-subset":
        if universe_spec["kind"] != "k-subsets":
            raise PreconditionError("mono-subset search needs a k-subsets universe")
        found = monochromatic_subset(universe_spec["n"], universe_spec["k"], search_spec["m"], assignment.__getitem__)
        result = {"status": "witness", "set": list(found)} if found else {"status": "counterexample"}
    elif search == "both-colors":
        present = sorted(set(assignment.values()))
        result = {"status": "witness" if len(present) >= 2 else "counterexample", "colors": present}
    elif search == "milliken":
        if host is None:
            raise PreconditionError("milliken search needs a strong-subtrees universe")
        found = milliken_search(host, universe_spec["k"], assignment.__getitem__, search_spec["target"])
        result = (
            {"status": "witness", "subtree": [list(lvl) for lvl in found.level_sets]}
            if found
            else {"status": "none"}
        )
    else:
        raise PreconditionError(f"unknown search {search!r}")
    return ColoringExperiment(universe_spec, ncolors, assignment, result, provenance)
