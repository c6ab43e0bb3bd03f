"""Finite dissimilarity spaces and the chain distance.

All values are exact rationals (`fractions.Fraction`); merge orders and
cluster identities depend on exact ties, so no floats enter any comparison.
Labels are canonicalized to lexicographic order at construction, which makes
every downstream artifact (dendrograms, networks, serializations)
deterministic and lets matrices over the same label set share indices.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import StructuralError

Rational = Fraction | int | str


def as_fraction(value: Rational) -> Fraction:
    """Parse a decimal or `p/q` literal into an exact rational."""
    if isinstance(value, float):
        raise StructuralError(f"refusing float value {value!r}; pass a string or Fraction")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise StructuralError(f"bad rational literal {value!r}: {exc}") from None


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty blocks of label indices covering range(n)."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for block in self.blocks:
            if not block:
                raise StructuralError("empty block in partition")
            if seen.intersection(block):
                raise StructuralError("overlapping blocks in partition")
            seen.update(block)
        if seen != set(range(self.n)):
            raise StructuralError("blocks do not cover the point set")

    def block_of(self, index: int) -> tuple[int, ...]:
        for block in self.blocks:
            if index in block:
                return block
        raise LookupError(f"index {index} not in partition")

    def as_label_sets(self, labels: Sequence[str]) -> list[list[str]]:
        return [[labels[i] for i in block] for block in self.blocks]


def _canonical_blocks(n: int, groups: Iterable[Iterable[int]]) -> Partition:
    blocks = sorted(tuple(sorted(g)) for g in groups)
    return Partition(n, tuple(blocks))


class DistanceMatrix:
    """Symmetric dissimilarity over labeled points, exact rational entries.

    The triangle inequality is *not* an invariant: the chain distance is
    well defined for any symmetric dissimilarity, and `validate` reports
    metric/ultrametric status separately.
    """

    __slots__ = ("labels", "entries")

    def __init__(self, labels: Sequence[str], entries: Sequence[Sequence[Rational]]):
        labels = [str(x) for x in labels]
        if not labels:
            raise StructuralError("empty point set")
        if len(set(labels)) != len(labels):
            dup = sorted({x for x in labels if labels.count(x) > 1})
            raise StructuralError(f"duplicate labels: {dup}")
        if any(not name for name in labels):
            raise StructuralError("empty label name")
        n = len(labels)
        if len(entries) != n:
            raise StructuralError(f"matrix has {len(entries)} rows for {n} labels")
        rows = []
        for i, row in enumerate(entries):
            if len(row) != n:
                raise StructuralError(f"row {labels[i]!r} has {len(row)} entries, expected {n}")
            rows.append([as_fraction(v) for v in row])
        # Canonical lexicographic label order; permute entries to match.
        order = sorted(range(n), key=lambda i: labels[i])
        self_labels = tuple(labels[i] for i in order)
        self_entries = tuple(tuple(rows[i][j] for j in order) for i in order)
        for i in range(n):
            if self_entries[i][i] != 0:
                raise StructuralError(
                    f"nonzero diagonal at ({self_labels[i]},{self_labels[i]}): {self_entries[i][i]}"
                )
            for j in range(i + 1, n):
                if self_entries[i][j] != self_entries[j][i]:
                    raise StructuralError(
                        f"asymmetry at ({self_labels[i]},{self_labels[j]}): "
                        f"{self_entries[i][j]} != {self_entries[j][i]}"
                    )
                if self_entries[i][j] < 0:
                    raise StructuralError(
                        f"negative entry at ({self_labels[i]},{self_labels[j]}): {self_entries[i][j]}"
                    )
        object.__setattr__(self, "labels", self_labels)
        object.__setattr__(self, "entries", self_entries)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LookupError(f"unknown label {label!r}") from None

    def get(self, a: str, b: str) -> Fraction:
        return self.entries[self.index(a)][self.index(b)]

    def __eq__(self, other) -> bool:
        return (
            type(other) in (DistanceMatrix, UltrametricMatrix)
            and self.labels == other.labels
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.labels, self.entries))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(labels={list(self.labels)!r}, n={self.n})"

    @classmethod
    def from_csv(cls, text: str) -> "DistanceMatrix":
        """Parse the distance-matrix CSV format.

        First row is `label,<L1>,...`; each following row is `<Li>,v1,...`.
        Values are decimal or `p/q` literals. Symmetry is validated, not
        assumed.
        """
        reader = csv.reader(io.StringIO(text))
        table = [row for row in reader if row and any(cell.strip() for cell in row)]
        if not table:
            raise StructuralError("empty distance matrix file")
        header = [cell.strip() for cell in table[0]]
        if not header or header[0] != "label":
            raise StructuralError("first header cell must be 'label'")
        names = header[1:]
        if not names:
            raise StructuralError("no labels in header")
        rows: dict[str, list[str]] = {}
        for raw in table[1:]:
            cells = [cell.strip() for cell in raw]
            if len(cells) != len(names) + 1:
                raise StructuralError(
                    f"row {cells[0]!r} has {len(cells) - 1} values, expected {len(names)}"
                )
            rows[cells[0]] = cells[1:]
        if sorted(rows) != sorted(names):
            raise StructuralError(
                f"row labels {sorted(rows)} do not match header labels {sorted(names)}"
            )
        entries = [rows[name] for name in names]
        return cls(names, entries)

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["label", *self.labels])
        for i, name in enumerate(self.labels):
            writer.writerow([name, *[str(v) for v in self.entries[i]]])
        return out.getvalue()


class UltrametricMatrix(DistanceMatrix):
    """DistanceMatrix satisfying the strong triangle inequality.

    Zero off-diagonal entries are permitted (degenerate pairs); collapse
    them explicitly with `zero_quotient`.
    """

    def __init__(self, labels, entries, _checked: bool = False):
        super().__init__(labels, entries)
        if not _checked:
            bad = _strong_triangle_violations(self.entries, first_only=True)
            if bad:
                i, j, k = bad[0]
                raise StructuralError(
                    f"strong triangle violated on ({self.labels[i]},{self.labels[j]},"
                    f"{self.labels[k]}): {self.entries[i][j]} > "
                    f"max({self.entries[i][k]}, {self.entries[k][j]})"
                )


def _strong_triangle_violations(entries, first_only: bool = False) -> list[tuple[int, int, int]]:
    n = len(entries)
    out = []
    for i in range(n):
        row_i = entries[i]
        for j in range(i + 1, n):
            d_ij = row_i[j]
            row_j = entries[j]
            for k in range(n):
                if k == i or k == j:
                    continue
                if d_ij > max(row_i[k], row_j[k]):
                    out.append((i, j, k))
                    if first_only:
                        return out
    return out


@dataclass(frozen=True)
class ValidationReport:
    is_metric: bool
    is_ultrametric: bool
    violations: tuple[dict, ...] = field(default_factory=tuple)


def validate(dm: DistanceMatrix) -> ValidationReport:
    """Report metric and ultrametric status of a structurally valid matrix.

    "Metric" here means the ordinary triangle inequality holds (degenerate
    zero distances between distinct points are tolerated, so every
    ultrametric in the degenerate sense is also a metric in this sense).
    Violations name the offending triple.
    """
    labels, entries = dm.labels, dm.entries
    n = dm.n
    violations = []
    is_metric = True
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                if k == i or k == j:
                    continue
                if entries[i][j] > entries[i][k] + entries[k][j]:
                    is_metric = False
                    violations.append(
                        {
                            "kind": "triangle",
                            "triple": (labels[i], labels[j], labels[k]),
                            "detail": f"{entries[i][j]} > {entries[i][k]} + {entries[k][j]}",
                        }
                    )
    strong = _strong_triangle_violations(entries)
    for i, j, k in strong:
        violations.append(
            {
                "kind": "strong_triangle",
                "triple": (labels[i], labels[j], labels[k]),
                "detail": f"{entries[i][j]} > max({entries[i][k]}, {entries[k][j]})",
            }
        )
    is_ultrametric = not strong and is_metric
    return ValidationReport(is_metric, is_ultrametric, tuple(violations))


def epsilon_components(dm: DistanceMatrix, eps: Rational) -> Partition:
    """Connected components of the graph with edges d(i,j) <= eps."""
    eps = as_fraction(eps)
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    n = dm.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if dm.entries[i][j] <= eps:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return _canonical_blocks(n, groups.values())


def chain_distance(dm: DistanceMatrix) -> UltrametricMatrix:
    """Minimax path closure: the largest ultrametric below the input.

    d(a,b) is the minimum over paths a -> b of the maximum edge weight along
    the path, computed by single-linkage merging (edges in ascending order;
    when two components join at weight w, every cross pair gets w).
    """
    n = dm.n
    entries = dm.entries
    result = [[Fraction(0)] * n for _ in range(n)]
    edges = sorted(
        (entries[i][j], i, j) for i in range(n) for j in range(i + 1, n)
    )
    components: dict[int, list[int]] = {i: [i] for i in range(n)}
    comp_of = list(range(n))
    for w, i, j in edges:
        ci, cj = comp_of[i], comp_of[j]
        if ci == cj:
            continue
        small, big = (ci, cj) if len(components[ci]) <= len(components[cj]) else (cj, ci)
        for a in components[small]:
            for b in components[big]:
                result[a][b] = w
                result[b][a] = w
        for a in components[small]:
            comp_of[a] = big
        components[big].extend(components.pop(small))
    return UltrametricMatrix(dm.labels, result, _checked=True)


def zero_quotient(um: UltrametricMatrix) -> Partition:
    """Maximal blocks of points at pairwise chain distance zero."""
    return epsilon_components(um, Fraction(0))


def quotient_matrix(um: UltrametricMatrix, parts: Partition) -> UltrametricMatrix:
    """Induced matrix on zero-quotient blocks; block label = first member name.

    Within an ultrametric, distance between blocks is independent of the
    chosen representatives, so representatives are taken from each block's
    smallest index.
    """
    if parts.n != um.n:
        raise StructuralError("partition size does not match matrix")
    reps = [block[0] for block in parts.blocks]
    labels = [um.labels[r] for r in reps]
    entries = [[um.entries[a][b] for b in reps] for a in reps]
    return UltrametricMatrix(labels, entries)
