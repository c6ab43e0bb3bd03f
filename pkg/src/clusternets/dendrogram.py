"""Dendrogram construction: the partially ordered tree of chain-distance balls.

Clusters are identified extensionally by their member set (stored as an int
bitmask over the canonical label order). Clusters that merge at equal height
merge simultaneously, so the tree is canonical and needs no tie-breaking.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .metric import (
    DistanceMatrix,
    Partition,
    Rational,
    UltrametricMatrix,
    as_fraction,
    chain_distance,
    epsilon_components,
)


def mask_of(indices) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def mask_members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class Cluster:
    """A ball of the chain distance: member bitmask and birth radius.

    The radius is the maximum pairwise chain distance inside the member set,
    which is also the smallest threshold at which the set appears as a
    component. Zero-quotient blocks (usually singletons) have radius 0.
    """

    members: int
    radius: Fraction

    @property
    def size(self) -> int:
        return self.members.bit_count()

    def contains(self, other: "Cluster") -> bool:
        return other.members & self.members == other.members


@dataclass(frozen=True)
class Dendrogram:
    """Tree of all clusters of one metric, ordered by inclusion.

    `clusters` is in canonical order (size, then member names); `parent[i]`
    is the index of the smallest cluster strictly containing cluster i, or
    None for the root.
    """

    labels: tuple[str, ...]
    clusters: tuple[Cluster, ...]
    parent: tuple[int | None, ...]

    @property
    def root(self) -> int:
        return len(self.clusters) - 1

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (child, par) for child, par in enumerate(self.parent) if par is not None
        )

    def member_names(self, cluster: Cluster) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in mask_members(cluster.members))

    def cluster_index(self, members: int) -> int:
        for i, c in enumerate(self.clusters):
            if c.members == members:
                return i
        raise LookupError(f"no cluster with members mask {members:b}")

    def leaves(self) -> Iterator[int]:
        parents = {p for p in self.parent if p is not None}
        for i in range(len(self.clusters)):
            if i not in parents:
                yield i


def _canonical_cluster_order(labels, clusters: list[Cluster]) -> list[Cluster]:
    def key(c: Cluster):
        names = tuple(labels[i] for i in mask_members(c.members))
        return (c.size, names)

    return sorted(clusters, key=key)


def build_dendrogram(dm: DistanceMatrix) -> Dendrogram:
    """Collect the components at every threshold into the cluster tree.

    The cluster set is { components of the threshold graph at t } for t
    ranging over 0 and the distinct chain-distance values; the partial order
    is set inclusion, with an edge for each pair nested without
    intermediaries.
    """
    um = dm if isinstance(dm, UltrametricMatrix) else chain_distance(dm)
    n = um.n
    thresholds = sorted({Fraction(0)} | {um.entries[i][j] for i in range(n) for j in range(i + 1, n)})
    seen: dict[int, Fraction] = {}
    for t in thresholds:
        for block in epsilon_components(um, t).blocks:
            mask = mask_of(block)
            if mask not in seen:
                seen[mask] = t
    clusters = _canonical_cluster_order(
        um.labels, [Cluster(m, r) for m, r in seen.items()]
    )
    parent: list[int | None] = []
    for i, c in enumerate(clusters):
        par = None
        for j in range(i + 1, len(clusters)):
            cand = clusters[j]
            if cand.size > c.size and cand.contains(c):
                par = j
                break
        parent.append(par)
    return Dendrogram(um.labels, tuple(clusters), tuple(parent))


def sup_cluster(dendro: Dendrogram, a: str, b: str) -> Cluster:
    """The minimal cluster containing both labels; its radius is d(a, b)."""
    try:
        ia = dendro.labels.index(a)
        ib = dendro.labels.index(b)
    except ValueError as exc:
        raise LookupError(f"unknown label: {exc}") from None
    want = (1 << ia) | (1 << ib)
    for c in dendro.clusters:  # canonical order is size-ascending
        if c.members & want == want:
            return c
    raise AssertionError("root cluster must contain every pair")


def clusters_at(dendro: Dendrogram, eps: Rational) -> Partition:
    """Cut the tree at height eps: maximal clusters with radius <= eps."""
    eps = as_fraction(eps)
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    n = len(dendro.labels)
    taken: list[int] = []
    covered = 0
    for c in reversed(dendro.clusters):  # size-descending
        if c.radius <= eps and c.members & covered == 0:
            taken.append(c.members)
            covered |= c.members
    if covered != (1 << n) - 1:
        raise AssertionError("clusters with radius <= eps must cover the point set")
    return Partition(n, tuple(sorted(mask_members(m) for m in taken)))
