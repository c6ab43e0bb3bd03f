import random
from fractions import Fraction

import pytest

from clusternets import (
    DistanceMatrix,
    StructuralError,
    build_dendrogram,
    chain_distance,
    clusters_at,
    epsilon_components,
    sup_cluster,
)

import oracles

F = Fraction


def names(dendro, cluster):
    return "".join(dendro.member_names(cluster))


def cluster_name_set(dendro):
    return {names(dendro, c) for c in dendro.clusters}


def edge_name_set(dendro):
    return {
        (names(dendro, dendro.clusters[c]), names(dendro, dendro.clusters[p]))
        for c, p in dendro.edges
    }


def assert_axioms(dendro, dm):
    """Clustering axioms plus radius correctness and reconstruction."""
    um = chain_distance(dm)
    member_sets = [frozenset(dendro.member_names(c)) for c in dendro.clusters]
    oracles.check_tree_of_clusters(
        [frozenset(dendro.labels.index(x) for x in m) for m in member_sets],
        len(dendro.labels),
    )
    for c in dendro.clusters:
        members = dendro.member_names(c)
        diameter = max(
            (um.get(a, b) for a in members for b in members),
            default=F(0),
        )
        assert c.radius == diameter
    for a in dendro.labels:
        for b in dendro.labels:
            assert sup_cluster(dendro, a, b).radius == um.get(a, b)
    for child, parent in dendro.edges:
        small, big = dendro.clusters[child], dendro.clusters[parent]
        assert big.contains(small) and small.members != big.members
        between = [
            c
            for c in dendro.clusters
            if c.contains(small) and big.contains(c)
            and c.members not in (small.members, big.members)
        ]
        assert not between, "edge admits an intermediary cluster"


class TestTrioTrees:
    def test_first_placement(self, trio_a):
        d = build_dendrogram(trio_a)
        assert cluster_name_set(d) == {"A", "B", "C", "AB", "ABC"}
        assert edge_name_set(d) == {("A", "AB"), ("B", "AB"), ("AB", "ABC"), ("C", "ABC")}
        assert_axioms(d, trio_a)

    def test_deformed_placement(self, trio_b):
        d = build_dendrogram(trio_b)
        assert cluster_name_set(d) == {"A", "B", "C", "BC", "ABC"}
        assert edge_name_set(d) == {("B", "BC"), ("C", "BC"), ("BC", "ABC"), ("A", "ABC")}
        assert_axioms(d, trio_b)

    def test_quad_trees(self, quad_a, quad_b):
        da, db = build_dendrogram(quad_a), build_dendrogram(quad_b)
        assert cluster_name_set(da) == {"A", "B", "C", "D", "AB", "CD", "ABCD"}
        assert edge_name_set(da) == {
            ("A", "AB"), ("B", "AB"), ("C", "CD"), ("D", "CD"),
            ("AB", "ABCD"), ("CD", "ABCD"),
        }
        assert cluster_name_set(db) == {"A", "B", "C", "D", "AC", "BD", "ABCD"}
        assert edge_name_set(db) == {
            ("A", "AC"), ("C", "AC"), ("B", "BD"), ("D", "BD"),
            ("AC", "ABCD"), ("BD", "ABCD"),
        }
        assert_axioms(da, quad_a)
        assert_axioms(db, quad_b)


class TestEdgeCases:
    def test_single_point(self):
        d = build_dendrogram(DistanceMatrix(["only"], [[0]]))
        assert len(d.clusters) == 1
        assert d.edges == ()
        assert d.clusters[0].radius == 0

    def test_simultaneous_merge_skips_pair_clusters(self):
        dm = DistanceMatrix(["A", "B", "C"], [[0, 1, 1], [1, 0, 1], [1, 1, 0]])
        d = build_dendrogram(dm)
        assert cluster_name_set(d) == {"A", "B", "C", "ABC"}

    def test_degenerate_zero_leaves_are_blocks(self):
        dm = DistanceMatrix(["a", "b", "c"], [[0, 0, 1], [0, 0, 1], [1, 1, 0]])
        d = build_dendrogram(dm)
        assert cluster_name_set(d) == {"c", "ab", "abc"}
        leaf_names = {names(d, d.clusters[i]) for i in d.leaves()}
        assert leaf_names == {"ab", "c"}


class TestSup:
    def test_pair_inside_first_cluster(self, trio_a):
        d = build_dendrogram(trio_a)
        c = sup_cluster(d, "A", "B")
        assert names(d, c) == "AB" and c.radius == 2

    def test_pair_across(self, trio_a):
        d = build_dendrogram(trio_a)
        c = sup_cluster(d, "A", "C")
        assert names(d, c) == "ABC" and c.radius == 3

    def test_same_point_gives_leaf(self, trio_a):
        d = build_dendrogram(trio_a)
        c = sup_cluster(d, "A", "A")
        assert names(d, c) == "A" and c.radius == 0

    def test_unknown_label(self, trio_a):
        with pytest.raises(LookupError):
            sup_cluster(build_dendrogram(trio_a), "A", "Z")


class TestClustersAt:
    def test_matches_epsilon_components(self, trio_a):
        d = build_dendrogram(trio_a)
        for eps in (0, 1, 2, F(5, 2), 3, 10):
            assert clusters_at(d, eps) == epsilon_components(trio_a, eps)

    def test_above_root_radius_single_block(self, trio_a):
        d = build_dendrogram(trio_a)
        assert len(clusters_at(d, 100).blocks) == 1

    def test_zero_distinct_points_singletons(self, trio_a):
        d = build_dendrogram(trio_a)
        assert len(clusters_at(d, 0).blocks) == 3

    def test_negative_rejected(self, trio_a):
        with pytest.raises(ValueError):
            clusters_at(build_dendrogram(trio_a), -1)


def test_axioms_on_random_corpus():
    rng = random.Random(991)
    for _ in range(25):
        n = rng.randint(2, 7)
        dm = DistanceMatrix(
            [f"p{i}" for i in range(n)], oracles.random_dissimilarity(rng, n)
        )
        assert_axioms(build_dendrogram(dm), dm)
    for _ in range(10):
        n = rng.randint(2, 10)
        entries = oracles.random_ultrametric(rng, n)
        dm = DistanceMatrix([f"p{i}" for i in range(n)], entries)
        assert_axioms(build_dendrogram(dm), dm)


def test_empty_matrix_rejected():
    with pytest.raises(StructuralError):
        DistanceMatrix([], [])
