"""Cluster networks: unions of dendrograms over a metric family.

Vertices are clusters identified by member set; edges are the per-tree
parent links, tagged with the set of metrics contributing them. Restricting
to any single metric id recovers that metric's dendrogram exactly.
Serialization is canonical (vertices by (size, member names), edges by ids,
metric tags sorted), so permuting the input dendrograms changes nothing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .dendrogram import Dendrogram, mask_members
from .errors import AmbiguousSuperballError, StructuralError


@dataclass(frozen=True)
class NetworkVertex:
    """A cluster of the fused network.

    `radius_by_metric` holds the exact birth radius for each metric the
    cluster belongs to, as a sorted tuple of (metric id, radius) pairs.
    """

    vertex_id: int
    members: int
    present_in: frozenset[str]
    radius_by_metric: tuple[tuple[str, Fraction], ...]

    @property
    def size(self) -> int:
        return self.members.bit_count()

    def radius(self, metric_id: str) -> Fraction:
        for mid, r in self.radius_by_metric:
            if mid == metric_id:
                return r
        raise LookupError(f"vertex not present in metric {metric_id!r}")


@dataclass(frozen=True)
class NetworkEdge:
    child: int
    parent: int
    metrics: frozenset[str]


@dataclass(frozen=True)
class ClusterNetwork:
    labels: tuple[str, ...]
    metric_ids: tuple[str, ...]
    vertices: tuple[NetworkVertex, ...]
    edges: tuple[NetworkEdge, ...]

    def vertex_by_members(self, members: int) -> NetworkVertex:
        for v in self.vertices:
            if v.members == members:
                return v
        raise LookupError(f"no vertex with members mask {members:b}")

    def member_names(self, v: NetworkVertex) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in mask_members(v.members))

    def metrics_of(self, metric_id: str) -> None:
        if metric_id not in self.metric_ids:
            raise LookupError(f"unknown metric id {metric_id!r}")


def merge_dendrograms(dendros: list[Dendrogram], ids: list[str]) -> ClusterNetwork:
    """Union the trees, identifying clusters that coincide as sets."""
    if not dendros:
        raise StructuralError("empty dendrogram family")
    if len(dendros) != len(ids):
        raise StructuralError(f"{len(dendros)} dendrograms for {len(ids)} metric ids")
    if len(set(ids)) != len(ids):
        raise StructuralError("metric ids must be distinct")
    labels = dendros[0].labels
    for d in dendros[1:]:
        if d.labels != labels:
            raise StructuralError(
                f"label-set mismatch: {list(d.labels)} vs {list(labels)}"
            )
    present: dict[int, dict[str, Fraction]] = {}
    edge_tags: dict[tuple[int, int], set[str]] = {}
    for dendro, mid in zip(dendros, ids):
        for c in dendro.clusters:
            present.setdefault(c.members, {})[mid] = c.radius
        for child, par in dendro.edges:
            key = (dendro.clusters[child].members, dendro.clusters[par].members)
            edge_tags.setdefault(key, set()).add(mid)

    def vertex_key(members: int):
        return (members.bit_count(), tuple(labels[i] for i in mask_members(members)))

    ordered = sorted(present, key=vertex_key)
    id_of = {members: i for i, members in enumerate(ordered)}
    vertices = tuple(
        NetworkVertex(
            vertex_id=i,
            members=members,
            present_in=frozenset(present[members]),
            radius_by_metric=tuple(sorted(present[members].items())),
        )
        for i, members in enumerate(ordered)
    )
    edges = tuple(
        sorted(
            (
                NetworkEdge(id_of[c], id_of[p], frozenset(tags))
                for (c, p), tags in edge_tags.items()
            ),
            key=lambda e: (e.child, e.parent),
        )
    )
    return ClusterNetwork(labels, tuple(ids), vertices, edges)


def restrict(net: ClusterNetwork, metric_id: str) -> tuple[set[int], set[tuple[int, int]]]:
    """Member-set and edge view of a single metric inside the network."""
    net.metrics_of(metric_id)
    verts = {v.members for v in net.vertices if metric_id in v.present_in}
    edges = {
        (net.vertices[e.child].members, net.vertices[e.parent].members)
        for e in net.edges
        if metric_id in e.metrics
    }
    return verts, edges


def is_r_ball(net: ClusterNetwork, v: NetworkVertex, r: frozenset[str] | set[str]) -> bool:
    """True iff the vertex is a ball for every metric in the subfamily."""
    r = frozenset(r)
    if not r:
        raise ValueError("empty metric subfamily")
    unknown = r - set(net.metric_ids)
    if unknown:
        raise LookupError(f"unknown metric ids {sorted(unknown)}")
    return r <= v.present_in


def minimal_common_superball(
    net: ClusterNetwork, ball: NetworkVertex, r: frozenset[str] | set[str]
) -> NetworkVertex | None:
    """Smallest r-ball strictly containing `ball`, or None at the root.

    Candidates all contain `ball` and are balls of any one metric of r, so
    they are nested and the minimum is unique; AmbiguousSuperballError is
    raised only if a malformed network presents incomparable minima.
    """
    r = frozenset(r)
    if not is_r_ball(net, ball, r):
        raise ValueError(f"vertex {ball.vertex_id} is not an r-ball for {sorted(r)}")
    candidates = [
        v
        for v in net.vertices
        if r <= v.present_in
        and v.members != ball.members
        and v.members & ball.members == ball.members
    ]
    if not candidates:
        return None
    minimal = [
        v
        for v in candidates
        if not any(
            w.members != v.members and w.members & v.members == w.members
            for w in candidates
        )
    ]
    if len(minimal) > 1:
        raise AmbiguousSuperballError(
            ball.vertex_id, tuple(sorted(v.vertex_id for v in minimal))
        )
    return minimal[0]


def undirected_cycles(net: ClusterNetwork) -> list[tuple[int, ...]]:
    """Fundamental cycle basis of the underlying undirected graph.

    One cycle per non-tree edge of a BFS spanning forest; each cycle is
    rotated to start at its smallest vertex id and oriented toward the
    smaller neighbor, and the list is sorted, so output is canonical.
    """
    n = len(net.vertices)
    pairs = sorted({(min(e.child, e.parent), max(e.child, e.parent)) for e in net.edges})
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for a, b in pairs:
        adj[a].append(b)
        adj[b].append(a)
    parent: dict[int, int | None] = {}
    order: dict[int, int] = {}
    for start in range(n):
        if start in parent:
            continue
        parent[start] = None
        queue = [start]
        while queue:
            u = queue.pop(0)
            order[u] = len(order)
            for w in sorted(adj[u]):
                if w not in parent:
                    parent[w] = u
                    queue.append(w)
    tree = {(min(u, w), max(u, w)) for u, w in ((v, p) for v, p in parent.items() if p is not None)}
    cycles = []
    for a, b in pairs:
        if (a, b) in tree:
            continue
        path_a, path_b = [a], [b]
        seen_a = {a: 0}
        u = a
        while parent[u] is not None:
            u = parent[u]
            seen_a[u] = len(path_a)
            path_a.append(u)
        u = b
        while u not in seen_a:
            u = parent[u]
            path_b.append(u)
        lca = u
        cycle = path_a[: seen_a[lca] + 1] + path_b[-2::-1]
        cycles.append(_canonical_cycle(cycle))
    return sorted(cycles, key=lambda c: (len(c), c))


def _canonical_cycle(cycle: list[int]) -> tuple[int, ...]:
    k = cycle.index(min(cycle))
    rotated = cycle[k:] + cycle[:k]
    if rotated[1] > rotated[-1]:
        rotated = [rotated[0]] + rotated[:0:-1]
    return tuple(rotated)


def to_json_dict(net: ClusterNetwork) -> dict:
    return {
        "labels": list(net.labels),
        "vertices": [
            {
                "id": v.vertex_id,
                "members": list(net.member_names(v)),
                "metrics": sorted(v.present_in),
                "radii": {mid: str(r) for mid, r in v.radius_by_metric},
            }
            for v in net.vertices
        ],
        "edges": [
            {"child": e.child, "parent": e.parent, "metrics": sorted(e.metrics)}
            for e in net.edges
        ],
    }


def to_json(net: ClusterNetwork) -> str:
    return json.dumps(to_json_dict(net), indent=2, sort_keys=True) + "\n"


_DOT_STYLES = ("solid", "dashed", "dotted", "bold")
_DOT_COLORS = ("black", "red", "blue", "darkgreen", "orange", "purple")


def dot_style(metric_index: int) -> str:
    style = _DOT_STYLES[metric_index % len(_DOT_STYLES)]
    color = _DOT_COLORS[metric_index % len(_DOT_COLORS)]
    return f'style={style}, color={color}'


def to_dot(net: ClusterNetwork) -> str:
    """DOT export: clusters as nodes, one styled edge line per metric tag."""
    metric_order = sorted(net.metric_ids)
    lines = ["digraph clusters {", "  rankdir=BT;"]
    for v in net.vertices:
        label = "".join(net.member_names(v))
        lines.append(f'  n{v.vertex_id} [label="{label}"];')
    for e in net.edges:
        for mid in sorted(e.metrics):
            idx = metric_order.index(mid)
            lines.append(
                f'  n{e.child} -> n{e.parent} [{dot_style(idx)}, tooltip="{mid}"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
