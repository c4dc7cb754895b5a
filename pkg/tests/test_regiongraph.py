import numpy as np
import pytest

from regioncolors import (GridPartition, degree_stats, from_edge_list,
                          from_grid)

from conftest import TRI18_EDGES


def edges_by_label(graph):
    """Edge set expressed in original labels (falls back to indices)."""
    ids = graph.region_ids or tuple(range(graph.n))
    return {tuple(sorted((ids[i], ids[j]))) for i, j in graph.edges}


class TestFromEdgeList:
    def test_isolated(self):
        g = from_edge_list(2, [])
        assert g.n == 2
        assert g.adjacency == ((), ())

    def test_duplicates_collapse(self):
        g = from_edge_list(3, [(0, 1), (1, 0), (1, 2)])
        assert g.adjacency == ((1,), (0, 2), (1,))
        assert g.edge_count == 2

    def test_single_region(self):
        g = from_edge_list(1, [])
        assert g.n == 1

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError):
            from_edge_list(3, [(1, 1)])

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            from_edge_list(3, [(0, 3)])
        with pytest.raises(ValueError):
            from_edge_list(3, [(-1, 0)])

    def test_empty_graph_rejected(self):
        with pytest.raises(ValueError):
            from_edge_list(0, [])

    def test_symmetry_and_bound(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            n = int(rng.integers(1, 12))
            m = int(rng.integers(0, n * (n - 1) // 2 + 1))
            edges = set()
            while len(edges) < m:
                i, j = rng.integers(0, n, 2)
                if i != j:
                    edges.add((min(i, j), max(i, j)))
            g = from_edge_list(n, edges)
            assert g.edge_count <= n * (n - 1) // 2
            for i in range(n):
                for j in g.adjacency[i]:
                    assert i in g.adjacency[j]
                    assert j != i


class TestFromGrid:
    def test_2x2_four_neighbor(self):
        g = from_grid(GridPartition(np.array([[0, 1], [2, 3]])))
        assert edges_by_label(g) == {(0, 1), (0, 2), (1, 3), (2, 3)}

    def test_2x2_diagonal(self):
        g = from_grid(GridPartition(np.array([[0, 1], [2, 3]])), diagonal=True)
        assert edges_by_label(g) == {(0, 1), (0, 2), (1, 3), (2, 3), (0, 3), (1, 2)}

    def test_disconnected_same_label_merges(self):
        g = from_grid(GridPartition(np.array([[0, 1, 0]])))
        assert g.n == 2
        assert edges_by_label(g) == {(0, 1)}

    def test_canonical_renumbering(self):
        g = from_grid(GridPartition(np.array([[7, 7, 3], [7, 5, 3]])))
        assert g.region_ids == (7, 3, 5)
        assert g.n == 3

    def test_relabeling_gives_isomorphic_graph(self):
        rng = np.random.default_rng(1)
        labels = rng.integers(0, 6, (8, 8))
        perm = rng.permutation(100)  # injective relabeling of label values
        g1 = from_grid(GridPartition(labels))
        g2 = from_grid(GridPartition(perm[labels]))
        mapped = {tuple(sorted((int(perm[a]), int(perm[b]))))
                  for a, b in edges_by_label(g1)}
        assert mapped == edges_by_label(g2)

    def test_transpose_same_edges(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            labels = rng.integers(0, 7, (int(rng.integers(1, 9)), int(rng.integers(1, 9))))
            g1 = from_grid(GridPartition(labels))
            g2 = from_grid(GridPartition(labels.T))
            assert edges_by_label(g1) == edges_by_label(g2)

    def test_diagonal_transpose_same_edges(self):
        rng = np.random.default_rng(3)
        labels = rng.integers(0, 5, (6, 9))
        g1 = from_grid(GridPartition(labels), diagonal=True)
        g2 = from_grid(GridPartition(labels.T), diagonal=True)
        assert edges_by_label(g1) == edges_by_label(g2)

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            GridPartition(np.zeros((0, 3), dtype=int))
        with pytest.raises(ValueError):
            GridPartition(np.array([[1.5]]))
        with pytest.raises(ValueError):
            GridPartition(np.array([[-1]]))


class TestDegreeStats:
    def test_path(self):
        g = from_edge_list(3, [(0, 1), (1, 2)])
        assert degree_stats(g) == (1, 2, pytest.approx(4 / 3))

    def test_k4(self):
        g = from_edge_list(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
        assert degree_stats(g) == (3, 3, 3.0)

    def test_triangulation_fixture(self, tri18):
        # recount directly from the edge list, independent of the adjacency
        assert tri18.n == 18
        edges = tri18.edges
        assert len(edges) == TRI18_EDGES
        deg = [0] * 18
        for i, j in edges:
            deg[i] += 1
            deg[j] += 1
        assert degree_stats(tri18) == (min(deg), max(deg), sum(deg) / 18)
        assert degree_stats(tri18) == (3, 7, pytest.approx(14 / 3))


class TestCsr:
    def test_csr_matches_adjacency(self):
        g = from_edge_list(4, [(0, 1), (1, 2), (0, 3)])
        indptr, indices = g.csr
        assert indptr.tolist() == [0, 2, 4, 5, 6]
        assert indices.tolist() == [1, 3, 0, 2, 1, 0]
        assert g.inv_degree.tolist() == [0.5, 0.5, 1.0, 1.0]

    def test_isolated_inv_degree(self):
        g = from_edge_list(3, [(0, 1)])
        assert g.inv_degree.tolist() == [1.0, 1.0, 0.0]
