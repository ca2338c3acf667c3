import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rct.cliques import check_witnessing, find_precliques, pre_clique_levels
from rct.coding import HENSON, CodingTree, build_Sk
from rct.errors import LengthError, PreconditionError
from rct.seqtree import LevelTree, full_binary_tree

S3 = build_Sk(3, 6)
S4 = build_Sk(4, 6)


def flat_host(coding, k, height=6):
    """Henson host on the full binary tree of the given height, no pseudo-coding nodes."""
    return CodingTree(full_binary_tree(height), tuple(coding), HENSON, k)


def test_pair_passing_at_c0():
    host = flat_host(["1"], 3)
    found = find_precliques({"011", "110"}, host, 3)
    assert [p.witness for p in found] == [(0,)]


def test_no_shared_one():
    host = flat_host(["1", "01"], 3)
    assert find_precliques({"000", "111"}, host, 3) == []


def test_pre_four_clique():
    host = flat_host(["1", "11"], 4)
    found = find_precliques({"111", "011"}, host, 4)
    assert [p.witness for p in found] == [(0, 1)]
    # drop the edge between c_0 and c_1 and the index set no longer codes a clique
    host2 = flat_host(["1", "00"], 4)
    assert all(p.witness != (0, 1) for p in find_precliques({"1111", "0111"}, host2, 4))
    assert find_precliques({"1111", "0111"}, host2, 3)


def test_top_coding_node_at_level_length_uses_successors():
    host = flat_host(["1", "011"], 3, height=5)
    # c_1 sits at length 3: the bit at position 3 lives on the successors
    found = find_precliques({"000", "010"}, host, 3)
    assert found == []
    sub = LevelTree(frozenset({"", "0", "00", "01", "000", "010", "0001", "0101"}), (0, 1, 2, 3, 4))
    narrow = CodingTree(sub, ("0", "010"), HENSON, 3)
    found = find_precliques({"000", "010"}, narrow, 3)
    assert [p.witness for p in found] == [(1,)]


def test_errors():
    host = flat_host(["1"], 3)
    with pytest.raises(LengthError):
        find_precliques({"01", "011"}, host, 3)
    with pytest.raises(PreconditionError):
        find_precliques({"01"}, host, 4)


def _oracle_a3(X, host):
    level = len(next(iter(X)))
    out = []
    for i in host.indices(include_pseudo=False):
        c = host.coding_node(i)
        if len(c) < level and all(x[len(c)] == "1" for x in X):
            out.append((i,))
        elif len(c) == level and all(all(u[level] == "1" for u in host.tree.succ(x)) and host.tree.succ(x) for x in X):
            out.append((i,))
    return out


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_a3_matches_one_line_oracle(data):
    host = data.draw(st.sampled_from([S3, S4]))
    length = data.draw(st.sampled_from(host.tree.levels[1:]))
    level = sorted(host.tree.nodes_of_length(length))
    X = data.draw(st.sets(st.sampled_from(level), min_size=1, max_size=4))
    got = [p.witness for p in find_precliques(X, host, 3)]
    assert got == _oracle_a3(X, host)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_preclique_invariants(data):
    host = S4
    length = data.draw(st.sampled_from(host.tree.levels[1:]))
    X = data.draw(st.sets(st.sampled_from(sorted(host.tree.nodes_of_length(length))), min_size=1, max_size=4))
    a = data.draw(st.sampled_from([3, 4]))
    for p in find_precliques(X, host, a):
        assert len(p.witness) == a - 2
        assert len({len(x) for x in p.level_set}) == 1
        lengths = [len(host.coding_node(i)) for i in p.witness]
        assert max(lengths) <= p.level
        assert all(host.adjacent(i, j) for i, j in itertools.combinations(p.witness, 2))
        for x in p.level_set:
            for n in lengths:
                bits = [x[n]] if n < len(x) else [u[n] for u in host.tree.succ(x)]
                assert bits and set(bits) == {"1"}


def test_full_prefix_is_witnessed():
    for host in (S3, S4, build_Sk(3, 8)):
        assert check_witnessing(host, host.tree.nodes, host.coding[host.n_pseudo :]).ok


def split_pair_host():
    nodes = {"", "0", "00", "01", "001", "010", "0010", "0100", "00101", "01001", "1", "10", "100", "1001"}
    tree = LevelTree(frozenset(nodes), (0, 1, 2, 3, 4, 5))
    return CodingTree(tree, ("1001",), HENSON, 3)


def test_split_pair_unwitnessed_then_repaired():
    host = split_pair_host()
    sub = {"0", "00101", "01001"}
    report = check_witnessing(host, sub, [])
    assert len(report.unwitnessed) == 1
    only = report.unwitnessed[0]
    assert only.level_set == ("00101", "01001") and only.witness == (0,) and only.a == 3
    assert report.to_dict()["unwitnessed"][0]["level"] == 5
    assert check_witnessing(host, sub | {"1001"}, ["1001"]).ok


def test_vacuous_when_nothing_shared():
    host = flat_host(["1", "01"], 3)
    assert check_witnessing(host, {"", "000", "110"}, []).to_dict() == {"status": "ok"}


def test_new_only_is_weaker():
    rng = random.Random(7)
    for _ in range(30):
        host = rng.choice([S3, S4])
        sub = set(rng.sample(sorted(host.tree.nodes), 12))
        own = rng.sample(list(host.coding[host.n_pseudo :]), 2)
        full = check_witnessing(host, sub, own).keys()
        new = check_witnessing(host, sub, own, new_only=True).keys()
        assert new <= full


def test_monotone_in_coding_nodes():
    rng = random.Random(11)
    for _ in range(40):
        host = rng.choice([S3, S4])
        sub = set(rng.sample(sorted(host.tree.nodes), rng.randint(4, 16)))
        coding = list(host.coding[host.n_pseudo :])
        small = rng.sample(coding, rng.randint(0, len(coding)))
        large = small + [c for c in coding if c not in small and rng.random() < 0.5]
        assert check_witnessing(host, sub, large).keys() <= check_witnessing(host, sub, small).keys()


def test_pre_clique_levels_uses_shorter_coding_nodes():
    host = flat_host(["1", "011"], 3, height=6)
    assert pre_clique_levels(host, ["01110", "11110"], 3) == [((0,), 1), ((1,), 3)]
    assert pre_clique_levels(host, ["011"], 3) == [((0,), 1)]


def test_witnessing_rejects_foreign_nodes():
    with pytest.raises(PreconditionError):
        check_witnessing(S3, {"2"}, [])
    with pytest.raises(PreconditionError):
        check_witnessing(S3, set(), ["0000000000"])
