import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from rct import formats
from rct.coding import (
    HENSON,
    RADO,
    CodingTree,
    FiniteGraph,
    build_Sk,
    build_TR,
    build_Tk,
    check_kfbc,
    decode_graph,
    forbidden_one_extension,
    graph_to_antichains,
)
from rct.errors import LengthError, PreconditionError
from rct.seqtree import LevelTree, full_binary_tree

EDGE = FiniteGraph(2, frozenset({(0, 1)}))


def hand_tree(extra=()):
    """Henson(3) tree up to length 3 with c_0="1", c_1="11" and no pseudo-coding nodes.

    Every node gets a 1-extension exactly when the criterion allows it.
    """
    coding = ("1", "11")
    nodes = {"", "0", "1"}
    for length in (1, 2):
        tmp = CodingTree(LevelTree(frozenset(nodes), tuple(range(length + 1))), coding[:length], HENSON, 3)
        for t in [t for t in nodes if len(t) == length]:
            nodes.add(t + "0")
            if not forbidden_one_extension(tmp, t, 3):
                nodes.add(t + "1")
    nodes |= set(extra)
    return CodingTree(LevelTree(frozenset(nodes), (0, 1, 2, 3)), coding, HENSON, 3)


@pytest.mark.parametrize(
    "chain, edges",
    [
        (["1", "01", "001"], {(0, 1), (1, 2)}),
        (["0", "10"], set()),
        (["0", "11", "111"], {(0, 1), (0, 2), (1, 2)}),
    ],
)
def test_decode_examples(chain, edges):
    assert decode_graph(chain).edges == edges


def test_decode_rejects_equal_lengths():
    with pytest.raises(LengthError):
        decode_graph(["1", "0"])


@given(st.data())
def test_decode_matches_oracle(data):
    lengths = sorted(data.draw(st.sets(st.integers(0, 8), min_size=1, max_size=6)))
    chain = [data.draw(st.text("01", min_size=n, max_size=n)) for n in lengths]
    assert decode_graph(chain).edges == oracles.decode_edges(chain)


def test_forbidden_examples():
    tree = hand_tree()
    assert forbidden_one_extension(tree, "11", 3)
    assert not forbidden_one_extension(tree, "10", 3)
    assert not forbidden_one_extension(tree, "00", 3)


def test_kfbc_hand_tree_and_tamper():
    assert check_kfbc(hand_tree(), 3).ok
    report = check_kfbc(hand_tree(extra={"111"}), 3)
    assert [node for node, _ in report.violations] == ["11"]


def test_kfbc_rejects_rado_tree():
    with pytest.raises(PreconditionError):
        check_kfbc(build_TR(3), 3)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_kfbc_on_built_trees(k):
    assert check_kfbc(build_Sk(k, 6), k).ok
    assert check_kfbc(build_Tk(k, 5), k).ok


def test_kfbc_flags_tampered_Sk():
    tree = build_Sk(3, 6)
    top = tree.tree.levels[-1]
    bad = next(t for t in sorted(tree.tree.nodes_of_length(top - 1)) if forbidden_one_extension(tree, t, 3))
    nodes = tree.tree.nodes | {bad + "1"}
    tampered = CodingTree(LevelTree(nodes, tree.tree.levels), tree.coding, HENSON, 3, n_pseudo=tree.n_pseudo)
    assert bad in [node for node, _ in check_kfbc(tampered, 3).violations]


def test_Sk_examples():
    g = build_Sk(3, 6).graph()
    assert g.order == 6 and g.edges and not g.has_clique(3)
    g4 = build_Sk(4, 6).graph()
    assert g4.has_clique(3) and not g4.has_clique(4)
    empty = build_Sk(3, 0)
    assert empty.n_coding == 0 and empty.n_pseudo == 1


@pytest.mark.parametrize("k", [3, 4, 5])
def test_Sk_is_Kk_free_oracle(k):
    for n in range(9):
        tree = build_Sk(k, n)
        g = tree.graph()
        assert not oracles.has_clique(g.order, g.edges, k)
        assert tree.invariant_violations() == []


@pytest.mark.parametrize("k", [3, 4, 5])
def test_pseudo_nodes_code_a_clique(k):
    tree = build_Sk(k, 3)
    assert tree.n_pseudo == k - 2
    chain = tree.coding[: tree.n_pseudo + 1]
    assert oracles.has_clique(len(chain), oracles.decode_edges(list(chain)), k - 1)


@pytest.mark.parametrize("k, n", [(3, 4), (3, 8), (4, 7), (5, 5)])
def test_Tk_matches_Sk_and_is_skew(k, n):
    t = build_Tk(k, n)
    assert t.graph() == build_Sk(k, n).graph()
    assert t.skew and t.is_skew()
    assert all(len(t.critical_nodes(length)) <= 1 for length in t.tree.levels)


def test_T5_small():
    t = build_Tk(5, 2)
    assert t.n_pseudo == 3 and t.invariant_violations() == []
    assert not t.graph(include_pseudo=True).has_clique(5)


def test_TR_coding_nodes():
    assert build_TR(7).coding == ("", "0", "10", "000", "0100", "10000", "110000")
    assert build_TR(0).tree.nodes == {""}


def test_TR_all_patterns_at_c1():
    t = build_TR(3)
    length = len(t.coding_node(1))
    patterns = {x[len(t.coding_node(0))] for x in t.tree.nodes_of_length(length)}
    assert patterns == {"0", "1"}


def test_TR_extension_property():
    g = build_TR(8).graph()
    for A_bits in itertools.product((None, 0, 1), repeat=2):
        A = [i for i, b in enumerate(A_bits) if b == 1]
        B = [i for i, b in enumerate(A_bits) if b == 0]
        assert any(
            all(g.adjacent(v, a) for a in A) and not any(g.adjacent(v, b) for b in B) for v in range(2, 8)
        ), (A, B)


def _pair_scan(host, depth):
    nodes = [host.coding_node(i) for i in range(depth)]
    return {
        (s, t)
        for s, t in itertools.combinations(nodes, 2)
        if not t.startswith(s) and t[len(s)] == "1"
    }


def test_antichains_examples():
    tr = build_TR(8)
    singles = graph_to_antichains(FiniteGraph(1), tr, 4)
    assert sorted(singles) == sorted((c,) for c in tr.coding[:4])
    for depth in (4, 8):
        assert set(graph_to_antichains(EDGE, tr, depth)) == _pair_scan(tr, depth)
    # the root coding node is below everything, so four nodes give no edge antichain
    assert graph_to_antichains(EDGE, tr, 4) == []
    assert graph_to_antichains(EDGE, tr, 8)
    triangle = FiniteGraph(3, frozenset({(0, 1), (0, 2), (1, 2)}))
    assert graph_to_antichains(triangle, build_Sk(3, 8)) == []


def test_antichains_are_antichains_coding_G():
    host = build_Sk(4, 8)
    path = FiniteGraph(3, frozenset({(0, 1), (1, 2)}))
    found = graph_to_antichains(path, host)
    assert found
    for chain in found:
        assert not any(t.startswith(s) for s, t in itertools.combinations(chain, 2))
        assert oracles.decode_edges(list(chain)) == {(0, 1), (1, 2)}


def test_antichains_skip_pseudo_nodes():
    s = build_Sk(4, 5)
    for chain in graph_to_antichains(EDGE, s):
        assert all(s.index_of(c) >= 0 for c in chain)


@pytest.mark.parametrize("builder", [lambda: build_Sk(3, 5), lambda: build_Tk(4, 4), lambda: build_TR(6)])
def test_json_round_trip(builder):
    tree = builder()
    text = formats.tree_to_json(tree)
    again = formats.load_tree(formats.json.loads(text))
    assert again == tree
    assert formats.tree_to_json(again) == text


def test_plain_level_tree_round_trip():
    host = full_binary_tree(3)
    assert formats.load_tree(host.to_dict()) == host


def test_dot_marks_coding_nodes():
    dot = formats.to_dot(build_Sk(3, 3))
    assert "fillcolor=gray" in dot and "fillcolor=black" in dot
    assert dot.startswith("digraph")


def test_coding_tree_validation():
    host = full_binary_tree(3)
    with pytest.raises(PreconditionError):
        CodingTree(host, ("1", "0"))
    with pytest.raises(PreconditionError):
        CodingTree(host, ("111",))
    with pytest.raises(PreconditionError):
        CodingTree(host, ("1",), RADO, skew=False, n_pseudo=2)


@pytest.mark.parametrize("k, n", [(3, 10), (4, 10)])
def test_small_Kk_free_graphs_embed(k, n):
    g = build_Sk(k, n).graph()
    pairs = list(itertools.combinations(range(3), 2))
    for size in (1, 2, 3):
        for mask in range(1 << len(pairs)):
            edges = {p for b, p in enumerate(pairs) if mask >> b & 1 and max(p) < size}
            if oracles.has_clique(size, edges, k):
                continue
            assert any(
                all(g.adjacent(vs[a], vs[b]) == ((a, b) in edges) for a, b in itertools.combinations(range(size), 2))
                for vs in itertools.permutations(range(g.order), size)
            ), (size, edges)
