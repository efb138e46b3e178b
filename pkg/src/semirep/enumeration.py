"""Brute-force corpora of small structures, used as test oracles.

Semilattices and posets are generated up to isomorphism from order
relations on a fixed linear extension and deduplicated by canonical form
(minimum relabelled matrix over all permutations), so only small sizes are
practical.
"""

from __future__ import annotations

from itertools import combinations, permutations, product
from typing import Iterator

from .monoid import FiniteCommutativeMonoid
from .order import FinitePoset
from .semilattice import FiniteSemilattice, SemilatticeHom


def _canonical(n: int, leq) -> tuple:
    """Canonical form of an order matrix under relabelling.

    Elements are sorted by (number below, number above) and only
    permutations inside those classes are searched.
    """
    inv = [(sum(leq[y][x] for y in range(n)), sum(leq[x][y] for y in range(n))) for x in range(n)]
    classes: dict = {}
    for x in range(n):
        classes.setdefault(inv[x], []).append(x)
    groups = [classes[k] for k in sorted(classes)]
    best = None
    for parts in product(*(permutations(g) for g in groups)):
        perm = [x for part in parts for x in part]
        key = tuple(leq[perm[i]][perm[j]] for i in range(n) for j in range(n))
        if best is None or key < best:
            best = key
    return (tuple(sorted(inv)), best)


def _transitive_orders(n: int, free: list[tuple[int, int]], forced) -> Iterator[list[list[bool]]]:
    """Order relations on 0..n-1 compatible with the natural order.

    ``forced(i, j)`` decides pairs outside ``free``; each subset of ``free``
    is tried and kept when the resulting relation is transitive.
    """
    for bits in range(1 << len(free)):
        leq = [[i == j or (i < j and forced(i, j)) for j in range(n)] for i in range(n)]
        for k, (i, j) in enumerate(free):
            leq[i][j] = bool(bits >> k & 1)
        if all(not (leq[i][k] and leq[k][j]) or leq[i][j]
               for i in range(n) for k in range(n) for j in range(n)):
            yield leq


def posets(n: int) -> list[FinitePoset]:
    """All posets on n elements up to isomorphism."""
    free = list(combinations(range(n), 2))
    seen, out = set(), []
    for leq in _transitive_orders(n, free, lambda i, j: False):
        key = _canonical(n, leq)
        if key in seen:
            continue
        seen.add(key)
        out.append(FinitePoset([f"p{i}" for i in range(n)],
                               [(i, j) for i in range(n) for j in range(n) if leq[i][j]]))
    return out


def _join_table(n, leq):
    join = []
    for x in range(n):
        row = []
        for y in range(n):
            ubs = [z for z in range(n) if leq[x][z] and leq[y][z]]
            least = [z for z in ubs if all(leq[z][w] for w in ubs)]
            if len(least) != 1:
                return None
            row.append(least[0])
        join.append(row)
    return join


def semilattices(n: int, with_zero: bool = False) -> list[FiniteSemilattice]:
    """All join-semilattices with n elements up to isomorphism.

    Elements are numbered along a linear extension, so the top is n-1 and,
    with ``with_zero``, the bottom is 0.
    """
    if n == 0:
        return []
    top = n - 1
    lo = 1 if with_zero and n > 1 else 0
    free = [(i, j) for i, j in combinations(range(lo, top), 2)]

    def forced(i, j):
        return j == top or (with_zero and i == 0)

    seen, out = set(), []
    for leq in _transitive_orders(n, free, forced):
        join = _join_table(n, leq)
        if join is None:
            continue
        key = _canonical(n, leq)
        if key in seen:
            continue
        seen.add(key)
        out.append(FiniteSemilattice(join))
    return out


def lattices_upto(n: int) -> list[FiniteSemilattice]:
    """All finite lattices (join-semilattices with 0) of size 1..n."""
    return [L for k in range(1, n + 1) for L in semilattices(k, with_zero=True)]


def homomorphisms(A: FiniteSemilattice, S: FiniteSemilattice,
                  zero: bool = False) -> Iterator[SemilatticeHom]:
    """Every join-homomorphism A -> S (0-preserving if ``zero``), by backtracking."""
    n = len(A)
    img = [-1] * n

    def ok(x):
        # every fully assigned instance of f(y v w) = f(y) v f(w) touching x
        done = [y for y in range(n) if img[y] >= 0]
        for y in done:
            for w in done:
                z = A.join[y][w]
                if x in (y, w, z) and img[z] >= 0 and img[z] != S.join[img[y]][img[w]]:
                    return False
        return True

    def rec(x):
        if x == n:
            yield SemilatticeHom(A, S, list(img))
            return
        choices = [S.bottom] if zero and x == A.bottom else list(S)
        for v in choices:
            img[x] = v
            if ok(x):
                yield from rec(x + 1)
            img[x] = -1

    if zero and (A.bottom is None or S.bottom is None):
        return iter(())
    return rec(0)


def join_closed_subsets(B: FiniteSemilattice) -> list[tuple[int, ...]]:
    """Every nonempty join-closed subset of B."""
    out = []
    for mask in range(1, 1 << len(B)):
        s = [x for x in B if mask >> x & 1]
        if all(mask >> B.join[x][y] & 1 for x in s for y in s):
            out.append(tuple(s))
    return out


def commutative_monoids(n: int) -> Iterator[FiniteCommutativeMonoid]:
    """Every commutative monoid table on 0..n-1 with identity 0 (not up to isomorphism).

    Cells above the diagonal are filled in row order; a partial table is
    abandoned as soon as some fully determined triple breaks associativity.
    """
    if n == 0:
        return
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    t = [[-1] * n for _ in range(n)]
    for x in range(n):
        t[0][x] = t[x][0] = x

    def consistent():
        for a in range(1, n):
            for b in range(1, n):
                ab = t[a][b]
                if ab < 0:
                    continue
                for c in range(1, n):
                    bc = t[b][c]
                    if bc < 0:
                        continue
                    l, r = t[ab][c], t[a][bc]
                    if l >= 0 and r >= 0 and l != r:
                        return False
        return True

    def rec(k):
        if k == len(cells):
            yield FiniteCommutativeMonoid([row[:] for row in t], 0, check=False)
            return
        i, j = cells[k]
        for v in range(n):
            t[i][j] = t[j][i] = v
            if consistent():
                yield from rec(k + 1)
        t[i][j] = t[j][i] = -1

    yield from rec(0)
