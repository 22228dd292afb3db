import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra import numpy as hnp

from sbm_lab import fixtures
from sbm_lab.graph import (DensityModel, MultiGraph, Partition, SbmModel,
                           build_block_matrix, counts_from_density, find_big_block,
                           format_graph, format_partition, is_member, parse_graph,
                           parse_partition, split_merge_invert)


@st.composite
def graph_and_partition(draw, max_n=15, max_w=6):
    n = draw(st.integers(1, max_n))
    W = draw(hnp.arrays(np.int64, (n, n), elements=st.integers(0, max_w)))
    p = draw(st.integers(1, n))
    # every block non-empty: first p nodes seed the blocks, then shuffle
    rest = draw(st.lists(st.integers(0, p - 1), min_size=n - p, max_size=n - p))
    a = np.array(list(range(p)) + rest)
    perm = np.array(draw(st.permutations(range(n))))
    return MultiGraph(W), Partition(a[perm])


def test_singleton_partition_reproduces_weights():
    g = fixtures.shared_graph()
    np.testing.assert_array_equal(build_block_matrix(g, Partition.singletons(g.n)), g.W)


def test_empty_graph_gives_zero_matrix():
    M = build_block_matrix(MultiGraph.empty(7), Partition([0, 1, 1, 2, 0, 2, 2]))
    np.testing.assert_array_equal(M, np.zeros((3, 3)))


def test_shared_graph_under_c1():
    M = build_block_matrix(fixtures.shared_graph(), fixtures.sbm1_partition())
    np.testing.assert_array_equal(M, np.diag([360, 9, 9]))


def test_block_matrix_dimension_mismatch():
    with pytest.raises(ValueError):
        build_block_matrix(MultiGraph.empty(4), Partition([0, 1, 0]))


def test_shared_graph_member_of_both_models():
    g = fixtures.shared_graph()
    assert is_member(g, fixtures.sbm1_model(), fixtures.sbm1_partition())
    assert is_member(g, fixtures.sbm2_model(), fixtures.sbm2_partition())
    g2 = g.with_edge(0, 7)
    assert not is_member(g2, fixtures.sbm1_model(), fixtures.sbm1_partition())
    assert not is_member(g2, fixtures.sbm2_model(), fixtures.sbm2_partition())


def test_split_merge_invert_c1_to_c2():
    out = split_merge_invert(fixtures.sbm1_partition(), 0, 2)
    assert out == fixtures.sbm2_partition()
    assert out.blocks() == [[0, 1, 2], [3, 4, 5], [6, 7, 8, 9, 10, 11]]


def test_split_merge_invert_twice_keeps_sizes():
    once = split_merge_invert(fixtures.sbm1_partition(), 0, 2)
    big, q = find_big_block(once)
    twice = split_merge_invert(once, big, q)
    assert sorted(twice.sizes.tolist()) == [3, 3, 6]


def test_split_merge_invert_rejects_bad_profiles():
    p = Partition.from_blocks([range(6), [6], [7]])
    with pytest.raises(ValueError):
        split_merge_invert(p, 0, 3)
    with pytest.raises(ValueError):
        split_merge_invert(Partition.from_blocks([range(5), [5, 6], [7, 8]]), 0, 2)
    with pytest.raises(ValueError):
        split_merge_invert(fixtures.sbm1_partition(), 7, 2)


def test_counts_from_density_sbm8_blocks():
    D = np.array([[0.20, 0.01], [0.01, 0.15]])
    m = counts_from_density(DensityModel([100, 10], D))
    assert m.M[0, 0] == 100 * 100 // 5  # exact product 2000
    assert m.M[1, 1] == 15
    assert m.M[0, 1] == m.M[1, 0] == 10


def test_counts_from_density_rounds_half_to_even():
    m = counts_from_density(DensityModel([1, 1], [[2.5, 3.5], [0.5, 0.0]]))
    np.testing.assert_array_equal(m.M, [[2, 4], [0, 0]])


def test_counts_from_density_zero_and_negative():
    m = counts_from_density(DensityModel([3, 4], np.zeros((2, 2))))
    assert not m.M.any()
    with pytest.raises(ValueError):
        DensityModel([3, 4], [[0.1, -0.1], [0, 0]])


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition([0, 2, 2])  # block 1 empty
    with pytest.raises(ValueError):
        Partition([])
    with pytest.raises(ValueError):
        Partition.from_blocks([[0, 1], [1, 2]])
    assert Partition([1, 0, 1]).sizes.tolist() == [1, 2]


def test_graph_validation():
    with pytest.raises(ValueError):
        MultiGraph([[0, -1], [0, 0]])
    with pytest.raises(ValueError):
        MultiGraph([[0, 1, 2]])
    with pytest.raises(ValueError):
        MultiGraph([[0.5]])


def test_types_are_read_only():
    g = fixtures.shared_graph()
    with pytest.raises(ValueError):
        g.W[0, 0] = 3


def test_undirected_import_writes_both_orientations():
    g = MultiGraph.from_edges(3, [(0, 1), (1, 1, 2), (0, 1)], directed=False)
    np.testing.assert_array_equal(g.W, [[0, 2, 0], [2, 2, 0], [0, 0, 0]])


@given(graph_and_partition())
def test_block_matrix_conserves_edges(case):
    g, p = case
    assert build_block_matrix(g, p).sum() == g.total_edges


@given(graph_and_partition(), st.randoms())
def test_block_matrix_label_permutation(case, rnd):
    g, p = case
    perm = list(range(p.p))
    rnd.shuffle(perm)
    M = build_block_matrix(g, p)
    M2 = build_block_matrix(g, p.relabel(perm))
    np.testing.assert_array_equal(M2[np.ix_(perm, perm)], M)


@given(graph_and_partition())
def test_model_of_graph_is_member(case):
    g, p = case
    assert is_member(g, SbmModel.of_graph(g, p), p)


@given(st.integers(1, 6), st.integers(1, 5), st.permutations(range(40)))
def test_split_merge_preserves_size_multiset(q, small, perm):
    s = q * small
    n = s + q * small
    if n > 40:
        return
    labels = np.repeat(np.arange(q + 1), [s] + [small] * q)
    # scatter node ids so blocks are not contiguous
    nodes = np.array([x for x in perm if x < n])
    a = np.empty(n, dtype=np.int64)
    a[nodes] = labels
    part = Partition(a)
    out = split_merge_invert(part, 0, q)
    assert sorted(out.sizes.tolist()) == sorted(part.sizes.tolist())
    assert out.n == part.n
    big_nodes = part.members(0)
    # the merged block is exactly the old small blocks
    merged = [b for b in out.blocks() if len(b) == s and not set(b) & set(big_nodes.tolist())]
    assert merged or q == 1


def test_text_round_trip(tmp_path):
    g = fixtures.shared_graph().with_edge(3, 11, 7)
    assert parse_graph(format_graph(g)) == g
    p = fixtures.sbm2_partition()
    assert parse_partition(format_partition(p)) == p


@pytest.mark.parametrize("text", ["", "m 3\n", "n 2\n0 5 1\n", "n 2\n0 1\n", "n 2\n0 1 -3\n"])
def test_parse_graph_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_graph(text)
