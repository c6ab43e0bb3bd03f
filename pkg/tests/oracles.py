"""Independent reference implementations used to freeze expected values.

These deliberately use brute force (path enumeration, subset closure) so
they share no code path with the library implementations they check.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product


def minimax_path_distance(entries, a: int, b: int) -> Fraction:
    """Minimum over all simple paths a -> b of the path's largest edge."""
    if a == b:
        return Fraction(0)
    n = len(entries)
    others = [k for k in range(n) if k not in (a, b)]
    best = entries[a][b]
    for r in range(1, len(others) + 1):
        for mid in permutations(others, r):
            path = (a, *mid, b)
            cost = max(entries[x][y] for x, y in zip(path, path[1:]))
            if cost < best:
                best = cost
    return best


def minimax_matrix(entries):
    n = len(entries)
    return [
        [minimax_path_distance(entries, i, j) for j in range(n)] for i in range(n)
    ]


def threshold_components(entries, eps: Fraction) -> list[tuple[int, ...]]:
    """Components of the graph with edges d <= eps, by repeated expansion."""
    n = len(entries)
    blocks = []
    unseen = set(range(n))
    while unseen:
        seed = min(unseen)
        block = {seed}
        grew = True
        while grew:
            grew = False
            for i in list(block):
                for j in range(n):
                    if j not in block and entries[i][j] <= eps:
                        block.add(j)
                        grew = True
        blocks.append(tuple(sorted(block)))
        unseen -= block
    return sorted(blocks)


def random_rational(rng, max_num=40, max_den=6) -> Fraction:
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))


def random_dissimilarity(rng, n: int):
    """Random symmetric rational matrix with zero diagonal.

    Ties are likely and off-diagonal zeros occasionally appear, so both the
    simultaneous-merge and the degenerate paths get exercised.
    """
    entries = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.08:
                v = Fraction(0)
            else:
                v = Fraction(rng.randint(1, 12), rng.choice([1, 2, 3, 4]))
            entries[i][j] = entries[j][i] = v
    return entries


def random_ultrametric(rng, n: int):
    """Random ultrametric by recursive splitting with decreasing heights.

    Occasionally leaves a block of several points at height zero, to
    exercise degenerate (zero) distances.
    """
    entries = [[Fraction(0)] * n for _ in range(n)]

    def split(indices, bound: Fraction):
        if len(indices) <= 1:
            return
        if bound <= 0 or (len(indices) > 1 and rng.random() < 0.08):
            return  # leave the block at pairwise distance zero
        height = bound * Fraction(rng.randint(1, 16), 16)
        if height == 0:
            return
        k = rng.randint(2, len(indices))
        rng.shuffle(indices)
        blocks: list[list[int]] = [[] for _ in range(k)]
        for pos, idx in enumerate(indices):
            blocks[pos % k].append(idx)
        blocks = [b for b in blocks if b]
        for bi, bj in combinations(range(len(blocks)), 2):
            for x in blocks[bi]:
                for y in blocks[bj]:
                    entries[x][y] = entries[y][x] = height
        shrink = height * Fraction(rng.randint(1, 15), 16)
        for b in blocks:
            split(b, shrink)

    split(list(range(n)), Fraction(rng.randint(4, 64)))
    return entries


def check_tree_of_clusters(member_sets: list[frozenset], n: int) -> None:
    """Assert the clustering axioms on a family of member sets.

    Coverage, unique minimal common cluster for each pair, and no duplicate
    sets (chains are finite automatically on finite inputs).
    """
    assert len(set(member_sets)) == len(member_sets), "duplicate member sets"
    covered = set().union(*member_sets)
    assert covered == set(range(n)), "leaves do not cover the point set"
    for a in range(n):
        for b in range(n):
            containing = [m for m in member_sets if a in m and b in m]
            assert containing, f"no cluster contains {{{a},{b}}}"
            smallest = min(containing, key=len)
            assert all(smallest <= m for m in containing), (
                f"minimal common cluster of ({a},{b}) is not unique"
            )


def brute_force_subspaces(p: int, d: int) -> list[frozenset]:
    """Subsets of F_p^d closed under addition and scaling (includes 0)."""
    vectors = list(product(range(p), repeat=d))
    zero = (0,) * d
    subspaces = []
    for bits in range(1 << len(vectors)):
        subset = frozenset(
            vectors[i] for i in range(len(vectors)) if bits >> i & 1
        )
        if zero not in subset:
            continue
        closed = True
        for x in subset:
            for y in subset:
                s = tuple((a + b) % p for a, b in zip(x, y))
                if s not in subset:
                    closed = False
                    break
            if not closed:
                break
        if closed:
            for c in range(2, p):
                if any(tuple(a * c % p for a in x) not in subset for x in subset):
                    closed = False
                    break
        if closed:
            subspaces.append(subset)
    return subspaces


def brute_force_flag_chains(p: int, d: int) -> int:
    """Number of maximal strictly increasing chains of subspaces of F_p^d."""
    subspaces = brute_force_subspaces(p, d)
    sizes = sorted({len(s) for s in subspaces})
    assert sizes == [p**k for k in range(d + 1)]
    chains = [[frozenset([(0,) * d])]]
    for k in range(1, d + 1):
        level = [s for s in subspaces if len(s) == p**k]
        chains = [c + [s] for c in chains for s in level if c[-1] < s]
    return len(chains)
