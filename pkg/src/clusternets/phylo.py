"""Weighted combinations of per-marker distances and weight sweeps.

Marker distances arrive as ready-made matrices over one taxon set; a weight
vector combines them entrywise, and a sweep builds one dendrogram per weight
vector and fuses the results into a cluster network (scaling all weights by
a positive constant rescales distances uniformly, so weight vectors are
deduplicated after normalizing by their sum).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .dendrogram import Dendrogram, build_dendrogram
from .errors import StructuralError
from .metric import DistanceMatrix, as_fraction
from .network import ClusterNetwork, merge_dendrograms


@dataclass(frozen=True)
class MarkerSet:
    """Named distance matrices over a shared label set."""

    markers: tuple[tuple[str, DistanceMatrix], ...]

    def __post_init__(self):
        if not self.markers:
            raise StructuralError("marker set needs at least one marker")
        names = [name for name, _ in self.markers]
        if len(set(names)) != len(names):
            raise StructuralError("duplicate marker ids")
        labels = self.markers[0][1].labels
        for name, dm in self.markers[1:]:
            if dm.labels != labels:
                raise StructuralError(f"marker {name!r} has a different label set")

    @property
    def labels(self) -> tuple[str, ...]:
        return self.markers[0][1].labels

    def __len__(self) -> int:
        return len(self.markers)


def weight_vector(values) -> tuple[Fraction, ...]:
    w = tuple(as_fraction(v) for v in values)
    if not w:
        raise StructuralError("empty weight vector")
    if any(x < 0 for x in w):
        raise StructuralError(f"negative weight in {[str(x) for x in w]}")
    if all(x == 0 for x in w):
        raise StructuralError("weight vector is identically zero")
    return w


def combine(markers: MarkerSet, weights) -> DistanceMatrix:
    """Entrywise weighted sum of the marker matrices."""
    w = weight_vector(weights)
    if len(w) != len(markers):
        raise StructuralError(f"{len(w)} weights for {len(markers)} markers")
    labels = markers.labels
    n = len(labels)
    total = [[Fraction(0)] * n for _ in range(n)]
    for wj, (_, dm) in zip(w, markers.markers):
        if wj == 0:
            continue
        for i in range(n):
            row = dm.entries[i]
            for j in range(n):
                total[i][j] += wj * row[j]
    return DistanceMatrix(labels, total)


@dataclass(frozen=True)
class SweepGrid:
    """Weight vectors to evaluate, deduplicated up to positive scaling."""

    weights: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def explicit(cls, vectors) -> "SweepGrid":
        normalized = []
        for vec in vectors:
            w = weight_vector(vec)
            total = sum(w)
            normalized.append(tuple(x / total for x in w))
        if not normalized:
            raise StructuralError("empty sweep grid")
        deduped = sorted(set(normalized))
        return cls(tuple(deduped))

    @classmethod
    def simplex(cls, n_markers: int, resolution: int) -> "SweepGrid":
        """All weight vectors k/resolution with integer compositions k."""
        if resolution < 1:
            raise StructuralError("resolution must be at least 1")
        vectors = []

        def compose(remaining: int, slots: int, prefix: tuple[int, ...]):
            if slots == 1:
                vectors.append(prefix + (remaining,))
                return
            for first in range(remaining + 1):
                compose(remaining - first, slots - 1, prefix + (first,))

        compose(resolution, n_markers, ())
        fracs = [
            tuple(Fraction(k, resolution) for k in vec)
            for vec in vectors
            if any(vec)
        ]
        return cls.explicit(fracs)


def weight_id(w: tuple[Fraction, ...]) -> str:
    return "w=" + ",".join(str(x) for x in w)


def sweep(markers: MarkerSet, grid: SweepGrid) -> ClusterNetwork:
    """One dendrogram per weight vector, identical trees deduplicated, fused."""
    if not grid.weights:
        raise StructuralError("empty sweep grid")
    dendros: list[Dendrogram] = []
    ids: list[str] = []
    seen: dict[Dendrogram, str] = {}
    for w in grid.weights:
        dendro = build_dendrogram(combine(markers, w))
        if dendro in seen:
            continue
        seen[dendro] = weight_id(w)
        dendros.append(dendro)
        ids.append(weight_id(w))
    return merge_dendrograms(dendros, ids)


def load_marker_bundle(manifest_path: str | Path) -> MarkerSet:
    """Read a manifest {"markers": [{"id":..., "path":...}]} plus its CSVs."""
    manifest_path = Path(manifest_path)
    try:
        manifest = json.loads(manifest_path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise StructuralError(f"cannot read manifest {manifest_path}: {exc}") from None
    entries = manifest.get("markers")
    if not isinstance(entries, list) or not entries:
        raise StructuralError("manifest must list at least one marker")
    markers = []
    for entry in entries:
        if not isinstance(entry, dict) or "id" not in entry or "path" not in entry:
            raise StructuralError(f"bad marker entry {entry!r}")
        path = manifest_path.parent / entry["path"]
        try:
            text = path.read_text()
        except OSError as exc:
            raise StructuralError(f"cannot read marker file {path}: {exc}") from None
        markers.append((str(entry["id"]), DistanceMatrix.from_csv(text)))
    return MarkerSet(tuple(markers))


def load_sweep_spec(spec_path: str | Path, n_markers: int) -> SweepGrid:
    """Read a sweep spec: explicit weight rows or a simplex grid resolution."""
    spec_path = Path(spec_path)
    try:
        spec = json.loads(spec_path.read_text(), parse_float=Fraction, parse_int=Fraction)
    except (OSError, json.JSONDecodeError) as exc:
        raise StructuralError(f"cannot read sweep spec {spec_path}: {exc}") from None
    grid = spec.get("grid") if isinstance(spec, dict) else None
    if not isinstance(grid, dict) or "type" not in grid:
        raise StructuralError('sweep spec must contain {"grid": {"type": ...}}')
    if grid["type"] == "explicit":
        rows = grid.get("weights")
        if not isinstance(rows, list) or not rows:
            raise StructuralError("explicit grid needs a nonempty weights list")
        for row in rows:
            if len(row) != n_markers:
                raise StructuralError(
                    f"weight row {row!r} has {len(row)} entries for {n_markers} markers"
                )
        return SweepGrid.explicit(rows)
    if grid["type"] == "simplex":
        resolution = grid.get("resolution")
        if not isinstance(resolution, (int, Fraction)) or Fraction(resolution) < 1:
            raise StructuralError("simplex grid needs an integer resolution >= 1")
        return SweepGrid.simplex(n_markers, int(resolution))
    raise StructuralError(f"unknown grid type {grid['type']!r}")
