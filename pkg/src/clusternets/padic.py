"""Lattices in Q_p^d, weighted max-norms, and their ball chains.

Everything is exact: vectors and matrices are rationals, so valuations,
lattice memberships, and ball identities are decided with no precision
loss (a rational is a p-adic number whose expansion is eventually
periodic; all inputs here are rational, so finite-precision windows are
never needed).

A lattice is stored by its canonical basis: column Hermite form over Z_p
(column j has zeros above row j, exactly p^(a_j) at row j, and truncated
p-adic expansions below), which makes lattice equality a tuple comparison.
The class of a lattice modulo p-power dilations is represented by the
primitive scaling: integral but not contained in p.Z_p^d.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import isqrt
from typing import Iterable, Sequence

from .dendrogram import build_dendrogram
from .errors import StructuralError
from .metric import DistanceMatrix, as_fraction
from .network import ClusterNetwork, merge_dendrograms

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


def require_prime(p: int) -> None:
    if p < 2 or any(p % k == 0 for k in range(2, isqrt(p) + 1)):
        raise ValueError(f"p must be prime, got {p}")


def pval(x: Fraction | int, p: int) -> int:
    """Exact p-adic valuation of a nonzero rational."""
    if x == 0:
        raise ValueError("valuation of zero is undefined")
    if isinstance(x, Fraction):
        num, den = x.numerator, x.denominator
    else:
        num, den = x, 1
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def pabs(x: Fraction | int, p: int) -> Fraction:
    """p-adic absolute value |x|_p = p^(-val)."""
    if x == 0:
        return Fraction(0)
    return Fraction(p) ** (-pval(x, p))


def _residue(x: Fraction, exponent: int, p: int) -> Fraction:
    """Truncated p-adic expansion of x modulo p^exponent.Z_p."""
    if x == 0:
        return Fraction(0)
    v = pval(x, p)
    if v >= exponent:
        return Fraction(0)
    pv = Fraction(p) ** v
    unit = x / pv
    mod = p ** (exponent - v)
    r = unit.numerator * pow(unit.denominator, -1, mod) % mod
    return pv * r


def frac_mod_p(x: Fraction | int, p: int) -> int:
    """Reduce a p-integral rational modulo p."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not p-integral")
    return x.numerator * pow(x.denominator, -1, p) % p


# ---------------------------------------------------------------------------
# exact linear algebra over Q

def mat_vec(m: Matrix, v: Sequence) -> Vector:
    return tuple(sum(row[i] * v[i] for i in range(len(v))) for row in m)


def mat_inv(m: Matrix) -> Matrix:
    d = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(d)]
           for i, row in enumerate(m)]
    for col in range(d):
        piv = next((r for r in range(col, d) if aug[r][col] != 0), None)
        if piv is None:
            raise StructuralError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = aug[col][col]
        aug[col] = [x / scale for x in aug[col]]
        for r in range(d):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[d:]) for row in aug)


def identity_matrix(d: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


# ---------------------------------------------------------------------------
# lattices

class Lattice:
    """Full-rank Z_p-lattice in canonical Hermite basis.

    `basis[j]` is the j-th basis vector: zero above coordinate j, p^(a_j)
    at coordinate j, reduced residues below. Equal lattices have equal
    bases, so == and hash are structural.
    """

    __slots__ = ("p", "basis", "exponents")

    def __init__(self, p: int, basis: Matrix, exponents: tuple[int, ...]):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "exponents", exponents)

    def __setattr__(self, name, value):
        raise AttributeError("Lattice is immutable")

    @classmethod
    def from_basis(cls, p: int, vectors: Iterable[Sequence]) -> "Lattice":
        """Canonicalize any spanning set (at least d vectors of rank d)."""
        require_prime(p)
        cols = [[Fraction(x) for x in v] for v in vectors]
        if not cols:
            raise StructuralError("no basis vectors")
        d = len(cols[0])
        if any(len(c) != d for c in cols):
            raise StructuralError("basis vectors of unequal length")
        cols = [c for c in cols if any(x != 0 for x in c)]
        basis: list[list[Fraction]] = []
        for row in range(d):
            pivot_idx = None
            pivot_val = None
            for idx, c in enumerate(cols):
                if c[row] != 0:
                    v = pval(c[row], p)
                    if pivot_val is None or v < pivot_val:
                        pivot_val, pivot_idx = v, idx
            if pivot_idx is None:
                raise StructuralError("vectors do not span a full-rank lattice")
            pivot = cols.pop(pivot_idx)
            unit = pivot[row] / Fraction(p) ** pivot_val
            pivot = [x / unit for x in pivot]
            for c in cols:
                if c[row] != 0:
                    coef = c[row] / pivot[row]
                    for i in range(row, d):
                        c[i] -= coef * pivot[i]
            basis.append(pivot)
            cols = [c for c in cols if any(x != 0 for x in c)]
        exps = tuple(pval(basis[j][j], p) for j in range(d))
        for j in range(d):
            for i in range(j + 1, d):
                r = _residue(basis[j][i], exps[i], p)
                if r != basis[j][i]:
                    coef = (basis[j][i] - r) / basis[i][i]
                    for t in range(i, d):
                        basis[j][t] -= coef * basis[i][t]
        return cls(p, tuple(tuple(c) for c in basis), exps)

    @classmethod
    def standard(cls, p: int, d: int) -> "Lattice":
        require_prime(p)
        basis = tuple(
            tuple(Fraction(int(i == j)) for i in range(d)) for j in range(d)
        )
        return cls(p, basis, (0,) * d)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def dilate(self, k: int) -> "Lattice":
        """p^k . L; entrywise scaling preserves the canonical form."""
        f = Fraction(self.p) ** k
        return Lattice(
            self.p,
            tuple(tuple(x * f for x in col) for col in self.basis),
            tuple(a + k for a in self.exponents),
        )

    def coordinates_of(self, vec: Sequence) -> Vector | None:
        """Coefficients of vec over the basis if they are p-integral."""
        d = self.dimension
        x = [Fraction(v) for v in vec]
        coords = []
        for j in range(d):
            c = x[j] / self.basis[j][j]
            if c != 0 and pval(c, self.p) < 0:
                return None
            coords.append(c)
            if c != 0:
                for i in range(j, d):
                    x[i] -= c * self.basis[j][i]
        return tuple(coords)

    def contains_vector(self, vec: Sequence) -> bool:
        return self.coordinates_of(vec) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains_vector(col) for col in other.basis)

    def member_vector(self, coords: Sequence) -> Vector:
        d = self.dimension
        return tuple(
            sum(Fraction(coords[j]) * self.basis[j][i] for j in range(d))
            for i in range(d)
        )

    def index_valuation(self) -> int:
        return sum(self.exponents)

    def lattice_class(self) -> "LatticeClass":
        return LatticeClass.of(self)

    def describe(self) -> dict:
        return {
            "diag_exponents": list(self.exponents),
            "basis_columns": [[str(x) for x in col] for col in self.basis],
        }

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Lattice)
            and self.p == other.p
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.p, self.basis))

    def __repr__(self) -> str:
        return f"Lattice(p={self.p}, exponents={self.exponents})"


@dataclass(frozen=True)
class LatticeClass:
    """Lattice modulo p-power dilations, keyed by the primitive scaling."""

    representative: Lattice

    @classmethod
    def of(cls, lattice: Lattice) -> "LatticeClass":
        shift = min(
            pval(x, lattice.p)
            for col in lattice.basis
            for x in col
            if x != 0
        )
        return cls(lattice.dilate(-shift))

    @property
    def p(self) -> int:
        return self.representative.p

    @property
    def exponents(self) -> tuple[int, ...]:
        return self.representative.exponents


@dataclass(frozen=True)
class LatticeChain:
    """Strictly increasing lattices with first = p . last."""

    lattices: tuple[Lattice, ...]

    def __post_init__(self):
        if len(self.lattices) < 2:
            raise StructuralError("chain needs at least two lattices")
        for small, big in zip(self.lattices, self.lattices[1:]):
            if small == big or not big.contains_lattice(small):
                raise StructuralError("chain lattices must strictly increase")
        if self.lattices[0] != self.lattices[-1].dilate(1):
            raise StructuralError("chain must run from p.L up to L")

    @property
    def top(self) -> Lattice:
        return self.lattices[-1]

    def is_maximal(self) -> bool:
        return len(self.lattices) == self.top.dimension + 1


# ---------------------------------------------------------------------------
# subspaces of F_p^d and flags

@dataclass(frozen=True)
class Subspace:
    """Subspace of F_p^d in reduced row echelon basis."""

    p: int
    ambient: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, p: int, ambient: int, gens: Iterable[Sequence[int]]) -> "Subspace":
        mat = [[int(x) % p for x in g] for g in gens]
        rank = 0
        for col in range(ambient):
            sel = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
            if sel is None:
                continue
            mat[rank], mat[sel] = mat[sel], mat[rank]
            inv = pow(mat[rank][col], -1, p)
            mat[rank] = [x * inv % p for x in mat[rank]]
            for i in range(len(mat)):
                if i != rank and mat[i][col]:
                    f = mat[i][col]
                    mat[i] = [(mat[i][t] - f * mat[rank][t]) % p for t in range(ambient)]
            rank += 1
        return cls(p, ambient, tuple(tuple(r) for r in mat[:rank]))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains_vector(self, vec: Sequence[int]) -> bool:
        w = [int(x) % self.p for x in vec]
        for row in self.rows:
            pivot = next(c for c in range(self.ambient) if row[c])
            if w[pivot]:
                f = w[pivot]
                w = [(w[t] - f * row[t]) % self.p for t in range(self.ambient)]
        return not any(w)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains_vector(r) for r in self.rows)


def enumerate_subspaces(p: int, d: int) -> list[Subspace]:
    """All subspaces of F_p^d, by dimension then echelon pattern."""
    out = []
    for k in range(d + 1):
        for pivots in combinations(range(d), k):
            free_cells = [
                (i, c)
                for i in range(k)
                for c in range(d)
                if c > pivots[i] and c not in pivots
            ]
            for values in product(range(p), repeat=len(free_cells)):
                rows = [[0] * d for _ in range(k)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = 1
                for (i, c), val in zip(free_cells, values):
                    rows[i][c] = val
                out.append(Subspace(p, d, tuple(tuple(r) for r in rows)))
    return out


def gaussian_binomial(d: int, k: int, p: int) -> int:
    num = den = 1
    for i in range(k):
        num *= p ** (d - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def complete_flags(p: int, d: int) -> list[tuple[Subspace, ...]]:
    """All chains of proper subspaces with dimensions 1 .. d-1."""
    by_dim: dict[int, list[Subspace]] = {}
    for s in enumerate_subspaces(p, d):
        by_dim.setdefault(s.dim, []).append(s)
    flags: list[tuple[Subspace, ...]] = [()]
    for k in range(1, d):
        flags = [
            f + (s,)
            for f in flags
            for s in by_dim[k]
            if not f or f[-1].is_subspace_of(s)
        ]
    return flags


def flag_count(p: int, d: int) -> int:
    count = 1
    for i in range(1, d + 1):
        count *= (p**i - 1) // (p - 1)
    return count


# ---------------------------------------------------------------------------
# lattice enumeration around one dilation step

def _lift_subspace(lattice: Lattice, sub: Subspace) -> Lattice:
    """p.L plus the lift of a subspace of L/pL, as a sublattice of L."""
    p = lattice.p
    vectors = [tuple(x * p for x in col) for col in lattice.basis]
    vectors.extend(lattice.member_vector(row) for row in sub.rows)
    return Lattice.from_basis(p, vectors)


def lattices_between(lattice: Lattice) -> list[Lattice]:
    """All K with p.L <= K <= L, via subspaces of L/pL (endpoints included)."""
    return [_lift_subspace(lattice, s) for s in enumerate_subspaces(lattice.p, lattice.dimension)]


def is_adjacent(first: Lattice | LatticeClass, second: Lattice | LatticeClass) -> bool:
    """Building adjacency: some rescaling of one strictly between p.other and other."""
    a = first if isinstance(first, LatticeClass) else first.lattice_class()
    b = second if isinstance(second, LatticeClass) else second.lattice_class()
    if a.p != b.p or a.representative.dimension != b.representative.dimension:
        raise StructuralError("lattices live in different spaces")
    if a == b:
        return False
    ra, rb = a.representative, b.representative
    d = ra.dimension
    gap = ra.index_valuation() - rb.index_valuation()
    k_lo = -(-gap // d)  # ceil
    k_hi = (gap + d) // d
    pa = ra.dilate(1)
    for k in range(k_lo, k_hi + 1):
        cand = rb.dilate(k)
        if ra.contains_lattice(cand) and cand.contains_lattice(pa):
            return True
    return False


def maximal_chains(lattice: Lattice) -> list[LatticeChain]:
    """All maximal chains p.L < L_1 < ... < L; one per complete flag."""
    chains = []
    for flag in complete_flags(lattice.p, lattice.dimension):
        lats = [lattice.dilate(1)]
        lats.extend(_lift_subspace(lattice, v) for v in flag)
        lats.append(lattice)
        chains.append(LatticeChain(tuple(lats)))
    return chains


# ---------------------------------------------------------------------------
# norms

@dataclass(frozen=True)
class NormSpec:
    """Weighted max-norm N(z) = max_i q_i |(Az)_i|_p with q_i in (1/p, 1]."""

    p: int
    q: tuple[Fraction, ...]
    matrix: Matrix

    def __post_init__(self):
        require_prime(self.p)
        if not self.q:
            raise StructuralError("empty weight list")
        for qi in self.q:
            if not Fraction(1, self.p) < qi <= 1:
                raise StructuralError(f"weight {qi} outside (1/{self.p}, 1]")
        d = len(self.q)
        if len(self.matrix) != d or any(len(row) != d for row in self.matrix):
            raise StructuralError("frame matrix shape does not match weights")
        mat_inv(self.matrix)  # raises if singular

    @property
    def dimension(self) -> int:
        return len(self.q)

    @property
    def generic(self) -> bool:
        return len(set(self.q)) == len(self.q)

    def eval(self, z: Sequence) -> Fraction:
        w = mat_vec(self.matrix, [Fraction(x) for x in z])
        best = Fraction(0)
        for qi, wi in zip(self.q, w):
            if wi != 0:
                val = qi * Fraction(self.p) ** (-pval(wi, self.p))
                if val > best:
                    best = val
        return best

    def distance(self, x: Sequence, y: Sequence) -> Fraction:
        return self.eval([Fraction(a) - Fraction(b) for a, b in zip(x, y)])


def norm_eval(norm: NormSpec, z: Sequence) -> Fraction:
    return norm.eval(z)


def _min_exponent_with(p: int, target: Fraction, strict: bool) -> int:
    """Smallest v with p^v >= target (or > target when strict).

    Terminates for every positive rational target: p^v grows without bound
    upward and vanishes downward.
    """
    v = 0
    base = Fraction(p)
    while (base**v < target) or (strict and base**v == target):
        v += 1
    while (base ** (v - 1) > target) or (not strict and base ** (v - 1) == target):
        v -= 1
    return v


def ball_of_radius(norm: NormSpec, radius: Fraction | int | str) -> Lattice:
    """The ball {z : N(z) <= R} around zero, as a lattice.

    In the frame coordinates the bound is coordinatewise: val((Az)_i) must
    be at least the smallest v_i with q_i p^(-v_i) <= R.
    """
    radius = as_fraction(radius)
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    inv = mat_inv(norm.matrix)
    d = norm.dimension
    cols = []
    for j in range(d):
        v_j = _min_exponent_with(norm.p, norm.q[j] / radius, strict=False)
        scale = Fraction(norm.p) ** v_j
        cols.append(tuple(inv[i][j] * scale for i in range(d)))
    return Lattice.from_basis(norm.p, cols)


def ball_radius_of(norm: NormSpec, lattice: Lattice) -> Fraction | None:
    """Smallest R with ball(R) = L, or None when L is not an N-ball."""
    r = max(norm.eval(col) for col in lattice.basis)
    return r if ball_of_radius(norm, r) == lattice else None


def intermediary_balls(norm: NormSpec, lattice: Lattice) -> LatticeChain:
    """Maximal chain of N-balls between p.L and L, by sweeping R downward.

    For pairwise distinct weights the chain has d+1 lattices; repeated
    weights shorten it.
    """
    radius = ball_radius_of(norm, lattice)
    if radius is None:
        raise ValueError("lattice is not a ball of this norm")
    target = lattice.dilate(1)
    descending = [lattice]
    guard = 0
    while descending[-1] != target:
        guard += 1
        if guard > 4 * norm.dimension + 8:
            raise AssertionError("ball sweep failed to reach the dilation")
        nxt = max(
            qi * Fraction(norm.p) ** (-_min_exponent_with(norm.p, qi / radius, strict=True))
            for qi in norm.q
        )
        ball = ball_of_radius(norm, nxt)
        radius = nxt
        if ball != descending[-1]:
            descending.append(ball)
    return LatticeChain(tuple(reversed(descending)))


# ---------------------------------------------------------------------------
# chains -> bases -> norms

def basis_from_chain(chain: LatticeChain) -> tuple[Vector, ...]:
    """Pick f_j in L_j outside L_(j-1); the f_j form a basis adapted to the chain.

    The choice is canonical: in the coordinates of the top lattice, f_j
    lifts the lexicographically smallest vector of (L_j/pL) \\ (L_(j-1)/pL).
    The direct-sum decomposition
        L_j = Z_p f_1 + ... + Z_p f_j + p Z_p f_(j+1) + ... + p Z_p f_d
    is re-verified by exact membership before returning.
    """
    if not chain.is_maximal():
        raise ValueError(
            f"chain of {len(chain.lattices)} lattices is not maximal in dimension "
            f"{chain.top.dimension}"
        )
    top = chain.top
    p, d = top.p, top.dimension
    spaces = []
    for lat in chain.lattices:
        gens = []
        for col in lat.basis:
            coords = top.coordinates_of(col)
            if coords is None:
                raise StructuralError("chain lattice not contained in its top")
            gens.append([frac_mod_p(c, p) for c in coords])
        spaces.append(Subspace.from_generators(p, d, gens))
    coords_fs: list[tuple[int, ...]] = []
    for j in range(1, d + 1):
        smaller, larger = spaces[j - 1], spaces[j]
        pick = next(
            w
            for w in product(range(p), repeat=d)
            if larger.contains_vector(w) and not smaller.contains_vector(w)
        )
        coords_fs.append(pick)
    fs = tuple(top.member_vector(w) for w in coords_fs)
    for j in range(d + 1):
        vectors = [fs[i] if i < j else tuple(x * p for x in fs[i]) for i in range(d)]
        if Lattice.from_basis(p, vectors) != chain.lattices[j]:
            raise AssertionError("adapted basis fails the chain decomposition")
    return fs


def norm_from_chain(chain: LatticeChain, q: Sequence) -> NormSpec:
    """Norm taking value q_j on L_j \\ L_(j-1); its ball chain through the
    top lattice reproduces the input chain."""
    qs = tuple(as_fraction(x) for x in q)
    top = chain.top
    if len(qs) != top.dimension:
        raise ValueError(f"{len(qs)} weights for dimension {top.dimension}")
    if any(b <= a for a, b in zip(qs, qs[1:])):
        raise ValueError(f"weights must strictly increase, got {[str(x) for x in qs]}")
    fs = basis_from_chain(chain)
    frame = tuple(tuple(fs[j][i] for j in range(top.dimension)) for i in range(top.dimension))
    return NormSpec(top.p, qs, mat_inv(frame))


def default_weights(p: int, d: int) -> tuple[Fraction, ...]:
    """A generic strictly increasing weight vector in (1/p, 1]."""
    return tuple(Fraction(p + i, p + d) for i in range(1, d + 1))


def verify_correspondence(p: int, d: int, q: Sequence) -> dict:
    """Exhaustive check of the chain <-> norm-class bijection at one (p, d).

    Every maximal lattice chain through the standard lattice is turned
    into a norm and swept back into a ball chain; the round trip must be
    the identity, distinct chains must stay distinct, and the chain count
    must equal the complete-flag count.
    """
    require_prime(p)
    qs = tuple(as_fraction(x) for x in q)
    if len(qs) != d:
        raise ValueError(f"{len(qs)} weights for dimension {d}")
    if any(b <= a for a, b in zip(qs, qs[1:])):
        raise ValueError("weights must strictly increase")
    lattice = Lattice.standard(p, d)
    chains = maximal_chains(lattice)
    expected = flag_count(p, d)
    results = []
    passed = 0
    for idx, chain in enumerate(chains):
        norm = norm_from_chain(chain, qs)
        recovered = intermediary_balls(norm, lattice)
        ok = recovered.lattices == chain.lattices
        passed += ok
        results.append(
            {
                "index": idx,
                "lattices": [lat.describe() for lat in chain.lattices],
                "round_trip_ok": ok,
            }
        )
    distinct = len({tuple(c.lattices) for c in chains}) == len(chains)
    return {
        "parameters": {"p": p, "d": d, "q": [str(x) for x in qs]},
        "flag_count": expected,
        "chain_count": len(chains),
        "round_trips_passed": passed,
        "distinct_ball_chains": distinct,
        "all_passed": passed == len(chains) == expected and distinct,
        "scope": (
            "checked for every maximal chain through the standard lattice "
            "class at these parameters"
        ),
        "chains": results,
    }


# ---------------------------------------------------------------------------
# norm axioms

def check_norm_axioms(norm: NormSpec, span: int = 3) -> dict:
    """Exhaustively test nondegeneracy, scaling, and the strong triangle
    inequality over representatives (Z/p^span)^d.

    The pair loop compares precomputed value ranks (integers), so the
    exhaustive strong-triangle pass stays cheap.
    """
    p, d = norm.p, norm.dimension
    size = p**span
    points = list(product(range(size), repeat=d))
    violations: list[dict] = []
    if norm.eval((0,) * d) != 0:
        violations.append({"axiom": "nondegeneracy", "point": [0] * d})
    values: dict[tuple[int, ...], Fraction] = {}
    for x in product(range(2 * size - 1), repeat=d):
        values[x] = norm.eval(x)
    for x in points:
        if x == (0,) * d:
            continue
        vx = values[x]
        if vx <= 0:
            violations.append({"axiom": "nondegeneracy", "point": list(x)})
        if norm.eval(tuple(c * p for c in x)) != vx / p:
            violations.append({"axiom": "scaling", "point": list(x), "factor": p})
        if norm.eval(tuple(Fraction(c, p) for c in x)) != vx * p:
            violations.append({"axiom": "scaling", "point": list(x), "factor": f"1/{p}"})
        for unit in range(2, p):
            if norm.eval(tuple(c * unit for c in x)) != vx:
                violations.append({"axiom": "scaling", "point": list(x), "factor": unit})
    ranking = {val: i for i, val in enumerate(sorted(set(values.values())))}
    ranks = {x: ranking[v] for x, v in values.items()}
    point_ranks = [ranks[x] for x in points]
    pairs = 0
    for i, x in enumerate(points):
        ri = point_ranks[i]
        for j in range(i, len(points)):
            y = points[j]
            s = tuple(a + b for a, b in zip(x, y))
            rj = point_ranks[j]
            if ranks[s] > (ri if ri >= rj else rj):
                violations.append(
                    {"axiom": "strong_triangle", "x": list(x), "y": list(y)}
                )
            pairs += 1
    return {
        "points_checked": len(points),
        "pairs_checked": pairs,
        "ok": not violations,
        "violations": violations[:20],
    }


# ---------------------------------------------------------------------------
# sampled ball networks

def _point_labels(p: int, window: int, d: int) -> list[tuple[str, tuple[int, ...]]]:
    size = p**window
    width = len(str(size - 1))
    out = []
    for coords in product(range(size), repeat=d):
        out.append(("".join(str(c).zfill(width) for c in coords), coords))
    return out


def reordering_norms(
    p: int, q: Sequence, frames: Sequence[Matrix] | None = None
) -> list[tuple[str, NormSpec]]:
    """One norm per frame and per distinct ordering of the weights."""
    qs = tuple(as_fraction(x) for x in q)
    frames = [identity_matrix(len(qs))] if frames is None else list(frames)
    named = []
    for fi, frame in enumerate(frames):
        for perm in sorted(set(permutations(qs))):
            name = f"A{fi}.q" + "_".join(str(x) for x in perm)
            named.append((name, NormSpec(p, perm, frame)))
    return named


def ball_network(
    p: int,
    d: int,
    q: Sequence,
    window: int = 2,
    frames: Sequence[Matrix] | None = None,
) -> ClusterNetwork:
    """Cluster network of the norm family sampled on (Z/p^window)^d.

    Each norm induces an ultrametric on the sample points; per-norm
    dendrograms are the ball trees restricted to the window, and their
    fusion feeds the simplicial/dimension machinery. A warning is emitted
    when the window is too small to separate two of the norms.
    """
    require_prime(p)
    qs = tuple(as_fraction(x) for x in q)
    if len(qs) != d:
        raise ValueError(f"{len(qs)} weights for dimension {d}")
    if window < 1:
        raise ValueError("window must be at least 1")
    labeled = _point_labels(p, window, d)
    labels = [name for name, _ in labeled]
    norms = reordering_norms(p, qs, frames)
    matrices = []
    for name, norm in norms:
        entries = [
            [norm.distance(x, y) for _, y in labeled] for _, x in labeled
        ]
        matrices.append((name, DistanceMatrix(labels, entries)))
    for (na, ma), (nb, mb) in combinations(matrices, 2):
        if ma == mb:
            warnings.warn(
                f"window {window} does not separate norms {na} and {nb}",
                stacklevel=2,
            )
    dendros = [build_dendrogram(m) for _, m in matrices]
    return merge_dendrograms(dendros, [name for name, _ in matrices])
