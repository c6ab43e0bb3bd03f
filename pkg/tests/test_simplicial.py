from itertools import combinations

import pytest

from clusternets import (
    build_complex,
    build_dendrogram,
    check_compatibility,
    intermediary_chain,
    merge_dendrograms,
    minimal_common_superball,
    network_dimension,
    r_dimension,
    simplices_for_pair,
)
from clusternets.dendrogram import mask_of
from clusternets.simplicial import complex_json_dict

from conftest import INCOMPAT_1, INCOMPAT_2


@pytest.fixture
def net_c1(trio_a, trio_b):
    return merge_dendrograms(
        [build_dendrogram(trio_a), build_dendrogram(trio_b)], ["m1", "m2"]
    )


def vertex(net, text):
    return net.vertex_by_members(mask_of(net.labels.index(ch) for ch in text))


def names(net, v):
    return "".join(net.member_names(v))


class TestCompatibility:
    def test_single_metric_compatible(self, trio_a):
        net = merge_dendrograms([build_dendrogram(trio_a)], ["m"])
        assert check_compatibility(net).compatible

    def test_trio_family_compatible(self, net_c1):
        rep = check_compatibility(net_c1)
        assert rep.compatible and not rep.violations

    def test_hand_built_incompatible_family(self):
        net = merge_dendrograms(
            [build_dendrogram(INCOMPAT_1), build_dendrogram(INCOMPAT_2)],
            ["m1", "m2"],
        )
        rep = check_compatibility(net)
        assert not rep.compatible
        offending = {tuple(v["intersection"]) for v in rep.violations}
        assert ("B", "C") in offending


class TestIntermediaryChain:
    def test_first_tree_chain(self, net_c1):
        chain = intermediary_chain(
            net_c1, vertex(net_c1, "B"), vertex(net_c1, "ABC"), "m1"
        )
        assert [names(net_c1, v) for v in chain] == ["B", "AB", "ABC"]

    def test_second_tree_chain(self, net_c1):
        chain = intermediary_chain(
            net_c1, vertex(net_c1, "B"), vertex(net_c1, "ABC"), "m2"
        )
        assert [names(net_c1, v) for v in chain] == ["B", "BC", "ABC"]

    def test_equal_endpoints(self, net_c1):
        b = vertex(net_c1, "B")
        assert intermediary_chain(net_c1, b, b, "m1") == [b]

    def test_non_nested_rejected(self, net_c1):
        with pytest.raises(ValueError, match="contained"):
            intermediary_chain(net_c1, vertex(net_c1, "ABC"), vertex(net_c1, "B"), "m1")

    def test_non_ball_endpoint_rejected(self, net_c1):
        with pytest.raises(ValueError, match="balls of metric"):
            intermediary_chain(net_c1, vertex(net_c1, "AB"), vertex(net_c1, "ABC"), "m2")


class TestSimplicesForPair:
    def test_two_triangles_for_middle_point(self, net_c1):
        b, abc = vertex(net_c1, "B"), vertex(net_c1, "ABC")
        simplices = simplices_for_pair(net_c1, b, abc, {"m1", "m2"})
        as_names = {
            tuple(names(net_c1, net_c1.vertices[i]) for i in s.vertex_ids)
            for s in simplices
        }
        triangles = {t for t in as_names if len(t) == 3}
        edges = {t for t in as_names if len(t) == 2}
        assert triangles == {("B", "AB", "ABC"), ("B", "BC", "ABC")}
        assert edges == {
            ("B", "AB"), ("AB", "ABC"), ("B", "ABC"), ("B", "BC"), ("BC", "ABC"),
        }

    def test_single_metric_immediate_parent_one_edge(self, trio_a):
        net = merge_dendrograms([build_dendrogram(trio_a)], ["m"])
        a = vertex(net, "A")
        j = minimal_common_superball(net, a, {"m"})
        simplices = simplices_for_pair(net, a, j, {"m"})
        assert len(simplices) == 1
        assert simplices[0].dimension == 1

    def test_wrong_superball_rejected(self, net_c1):
        b, bc = vertex(net_c1, "B"), vertex(net_c1, "BC")
        with pytest.raises(ValueError, match="minimal common superball"):
            simplices_for_pair(net_c1, b, bc, {"m1", "m2"})


class TestBuildComplex:
    def test_trio_complex_dimension_two(self, net_c1):
        cx = build_complex(net_c1, {"m1", "m2"})
        sizes = {len(s.vertex_ids) for s in cx.simplices}
        assert sizes == {2, 3}
        top = {
            tuple(names(net_c1, net_c1.vertices[i]) for i in s.vertex_ids)
            for s in cx.simplices
            if len(s.vertex_ids) == 3
        }
        assert ("B", "AB", "ABC") in top and ("B", "BC", "ABC") in top

    def test_single_tree_complex_is_edge_set(self, trio_a):
        dendro = build_dendrogram(trio_a)
        net = merge_dendrograms([dendro], ["m"])
        cx = build_complex(net, {"m"})
        got = {s.vertex_ids for s in cx.simplices}
        want = {
            tuple(sorted((e.child, e.parent)))
            for e in net.edges
        }
        assert got == want

    def test_downward_closure(self, net_c1):
        cx = build_complex(net_c1, {"m1", "m2"})
        sets = cx.vertex_sets()
        for s in cx.simplices:
            for size in range(2, len(s.vertex_ids)):
                for sub in combinations(s.vertex_ids, size):
                    assert sub in sets

    def test_simplices_are_inclusion_chains(self, net_c1):
        cx = build_complex(net_c1, {"m1", "m2"})
        for s in cx.simplices:
            members = sorted(
                (net_c1.vertices[i].members for i in s.vertex_ids),
                key=lambda m: m.bit_count(),
            )
            for small, big in zip(members, members[1:]):
                assert small & big == small and small != big

    def test_no_duplicate_vertex_sets(self, net_c1):
        cx = build_complex(net_c1, {"m1", "m2"})
        ids = [s.vertex_ids for s in cx.simplices]
        assert len(ids) == len(set(ids))

    def test_one_skeleton_contains_every_tree_edge(self, net_c1):
        cx = build_complex(net_c1, {"m1", "m2"})
        sets = cx.vertex_sets()
        for e in net_c1.edges:
            assert tuple(sorted((e.child, e.parent))) in sets


class TestDimension:
    def test_pair_dimension_two(self, net_c1):
        b, abc = vertex(net_c1, "B"), vertex(net_c1, "ABC")
        assert r_dimension(net_c1, b, abc, {"m1", "m2"}) == 2

    def test_single_metric_immediate_parent(self, trio_a):
        net = merge_dendrograms([build_dendrogram(trio_a)], ["m"])
        a = vertex(net, "A")
        j = minimal_common_superball(net, a, {"m"})
        assert r_dimension(net, a, j, {"m"}) == 1

    def test_overall_dimension_trio(self, net_c1):
        rep = network_dimension(net_c1, {"m1", "m2"})
        assert rep.overall == 2
        assert all(dim >= 1 for _, dim in rep.per_pair)

    def test_overall_dimension_single_tree(self, quad_a):
        net = merge_dendrograms([build_dendrogram(quad_a)], ["m"])
        assert network_dimension(net, {"m"}).overall == 1

    def test_report_matches_top_simplices(self, net_c1):
        cx = build_complex(net_c1, {"m1", "m2"})
        rep = network_dimension(net_c1, {"m1", "m2"})
        top = max(len(s.vertex_ids) for s in cx.simplices)
        assert rep.overall == top - 1


class TestJson:
    def test_complex_json_shape(self, net_c1):
        cx = build_complex(net_c1, {"m1", "m2"})
        rep = network_dimension(net_c1, {"m1", "m2"})
        doc = complex_json_dict(cx, rep, check_compatibility(net_c1))
        assert set(doc) == {"simplices", "dimension"}
        assert doc["dimension"]["overall"] == 2
        assert all(set(s) == {"vertices", "metric", "anchor"} for s in doc["simplices"])

    def test_incompatible_family_warning_block(self):
        net = merge_dendrograms(
            [build_dendrogram(INCOMPAT_1), build_dendrogram(INCOMPAT_2)],
            ["m1", "m2"],
        )
        cx = build_complex(net, {"m1", "m2"})
        rep = network_dimension(net, {"m1", "m2"})
        doc = complex_json_dict(cx, rep, check_compatibility(net))
        assert "warnings" in doc
        assert doc["warnings"]["incompatible_intersections"]
