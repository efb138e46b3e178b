"""Finite commutative monoids: algebraic preorder, nabla, refinement checks, ideals.

Also the simplicial witness for the strong Riesz interpolation property and
the support map that nabla induces on simplicial cones (Z+)^k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .semilattice import (AxiomError, FiniteSemilattice, SemilatticeHom,
                          boolean_lattice, subset_label)


class FiniteCommutativeMonoid:
    """A finite commutative monoid given by its Cayley table ``add``."""

    def __init__(self, add, zero: int = 0, labels=None, check=True):
        self.add = tuple(tuple(row) for row in add)
        self.zero = zero
        n = len(self.add)
        self.labels = tuple(str(s) for s in (labels if labels is not None else range(n)))
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise ValueError("need one distinct label per element")
        if check:
            self._check()

    def _check(self):
        n, t = len(self.add), self.add
        for x, row in enumerate(t):
            if len(row) != n or any(not (isinstance(v, int) and 0 <= v < n) for v in row):
                raise AxiomError("shape", (x,), f"row {x} is not a list of {n} element indices")
        if not 0 <= self.zero < n:
            raise AxiomError("identity", (self.zero,), "zero is not an element")
        for x in range(n):
            if t[self.zero][x] != x:
                raise AxiomError("identity", (x,), f"0 + {x} != {x}")
        for x in range(n):
            for y in range(x + 1, n):
                if t[x][y] != t[y][x]:
                    raise AxiomError("commutativity", (x, y))
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise AxiomError("associativity", (a, b, c))

    @classmethod
    def from_semilattice(cls, S: FiniteSemilattice) -> "FiniteCommutativeMonoid":
        if S.bottom is None:
            raise ValueError("a semilattice needs a least element to be a monoid")
        return cls(S.join, S.bottom, S.labels, check=False)

    def __len__(self):
        return len(self.add)

    def __iter__(self):
        return iter(range(len(self.add)))

    def __eq__(self, other):
        if not isinstance(other, FiniteCommutativeMonoid):
            return NotImplemented
        return (self.add, self.zero, self.labels) == (other.add, other.zero, other.labels)

    def __hash__(self):
        return hash((self.add, self.zero, self.labels))

    def __repr__(self):
        return f"FiniteCommutativeMonoid({list(self.labels)}, zero={self.labels[self.zero]})"

    def multiple(self, n: int, x: int) -> int:
        acc = self.zero
        for _ in range(n):
            acc = self.add[acc][x]
        return acc

    def decompositions(self, a: int) -> list[tuple[int, int]]:
        return [(x, y) for x in self for y in self if self.add[x][y] == a]


def alg_leq(M: FiniteCommutativeMonoid, x: int, y: int) -> bool:
    """x <= y in the algebraic preorder: x + z = y for some z."""
    return any(M.add[x][z] == y for z in M)


def _leq_matrix(M):
    n = len(M)
    below = [[False] * n for _ in range(n)]
    for x in M:
        for z in M:
            below[x][M.add[x][z]] = True
    return below


def _multiples(M, y):
    # ny for n = 1..|M| covers every multiple by pigeonhole
    out, acc = [], M.zero
    for _ in range(len(M)):
        acc = M.add[acc][y]
        out.append(acc)
    return out


def propto(M: FiniteCommutativeMonoid, x: int, y: int) -> bool:
    """x <= n*y for some positive integer n (searched up to n = |M|)."""
    return any(alg_leq(M, x, m) for m in _multiples(M, y))


def propto_matrix(M: FiniteCommutativeMonoid) -> list[list[bool]]:
    leq = _leq_matrix(M)
    mults = [_multiples(M, y) for y in M]
    return [[any(leq[x][m] for m in mults[y]) for y in M] for x in M]


def nabla(M: FiniteCommutativeMonoid):
    """Maximal semilattice quotient: ``(semilattice, projection)``.

    Classes of mutual propto are ordered by least member; the class of 0 is
    the least element.
    """
    pm = propto_matrix(M)
    cls_of: list[int] = [-1] * len(M)
    classes: list[list[int]] = []
    for x in M:
        if cls_of[x] >= 0:
            continue
        members = [y for y in M if pm[x][y] and pm[y][x]]
        for y in members:
            cls_of[y] = len(classes)
        classes.append(members)
    join = [[cls_of[M.add[c[0]][d[0]]] for d in classes] for c in classes]
    labels = ["[" + ",".join(M.labels[x] for x in c) + "]" for c in classes]
    return FiniteSemilattice(join, labels), tuple(cls_of)


@dataclass
class PropertyReport:
    refinement: bool
    riesz: bool
    conical: bool
    cancellative: bool
    witnesses: dict = field(default_factory=dict)


def refinement_counterexample(M: FiniteCommutativeMonoid):
    """First (a0, a1, b0, b1) with a0+a1 = b0+b1 admitting no 2x2 refinement."""
    dec = [M.decompositions(a) for a in M]
    add = M.add
    for a0, a1, b0, b1 in product(M, repeat=4):
        if add[a0][a1] != add[b0][b1]:
            continue
        if not any(add[c00][c10] == b0 and add[c01][c11] == b1
                   for c00, c01 in dec[a0] for c10, c11 in dec[a1]):
            return (a0, a1, b0, b1)
    return None


def riesz_counterexample(M: FiniteCommutativeMonoid):
    """First (a, b0, b1) with a <= b0+b1 and no a = a0+a1, a_i <= b_i."""
    leq = _leq_matrix(M)
    below = [[x for x in M if leq[x][y]] for y in M]
    for a, b0, b1 in product(M, repeat=3):
        if not leq[a][M.add[b0][b1]]:
            continue
        if not any(M.add[a0][a1] == a for a0 in below[b0] for a1 in below[b1]):
            return (a, b0, b1)
    return None


def property_report(M: FiniteCommutativeMonoid) -> PropertyReport:
    """Refinement (2x2), Riesz decomposition, conicality and cancellativity."""
    w = {}
    ref = refinement_counterexample(M)
    if ref is not None:
        w["refinement"] = ref
    rz = riesz_counterexample(M)
    if rz is not None:
        w["riesz"] = rz
    con = next(((x, y) for x in M for y in M
                if M.add[x][y] == M.zero and (x != M.zero or y != M.zero)), None)
    if con is not None:
        w["conical"] = con
    canc = next(((x, y, z) for x in M for y in M if x != y for z in M
                 if M.add[x][z] == M.add[y][z]), None)
    if canc is not None:
        w["cancellative"] = canc
    return PropertyReport(ref is None, rz is None, con is None, canc is None, w)


def ideals(M: FiniteCommutativeMonoid) -> list[frozenset[int]]:
    """All o-ideals: nonempty I with x+y in I iff x in I and y in I."""
    out = []
    for mask in range(1, 1 << len(M)):
        I = {x for x in M if mask >> x & 1}
        if all((M.add[x][y] in I) == (x in I and y in I) for x in M for y in M):
            out.append(frozenset(I))
    out.sort(key=lambda I: (len(I), sorted(I)))
    return out


def idc(M: FiniteCommutativeMonoid):
    """Ideals with order-unit (all ideals, M being finite) and theta: nabla(M) -> Idc M.

    Returns ``(ideal_semilattice, theta)``; the semilattice is ordered by
    inclusion and tagged with the member sets.  theta sends [x] to
    ``{z : z propto x}``.
    """
    ids = ideals(M)
    pos = {I: i for i, I in enumerate(ids)}

    def generated(U):
        return min((I for I in ids if U <= I), key=len)

    join = [[pos[generated(I | J)] for J in ids] for I in ids]
    labels = [subset_label(M.labels[x] for x in sorted(I)) for I in ids]
    L = FiniteSemilattice(join, labels, tags=ids)
    N, proj = nabla(M)
    pm = propto_matrix(M)
    reps = [proj.index(c) for c in range(len(N))]
    theta = SemilatticeHom(N, L, [pos[frozenset(z for z in M if pm[z][x])] for x in reps])
    return L, theta


# -- simplicial cones (Z+)^k ---------------------------------------------------

def _vec(v) -> tuple[int, ...]:
    if isinstance(v, int):
        return (v,)
    return tuple(int(t) for t in v)


def strong_rip_witness(n: int, a, b, c, d):
    """u, v, w, z >= 0 with a = u+v, b = n*w+z, c = u+w, d = n*v+z.

    Requires n*a + b == n*c + d coordinatewise.  With e = n*a - d, each
    coordinate of u is the least nonnegative integer with e <= n*u.
    """
    a, b, c, d = map(_vec, (a, b, c, d))
    if n < 1:
        raise ValueError("n must be a positive integer")
    if not len(a) == len(b) == len(c) == len(d):
        raise ValueError("vectors have different lengths")
    if any(t < 0 for t in a + b + c + d):
        raise ValueError("coordinates must be nonnegative")
    if any(n * ai + bi != n * ci + di for ai, bi, ci, di in zip(a, b, c, d)):
        raise ValueError("n*a + b != n*c + d")
    e = [n * ai - di for ai, di in zip(a, d)]
    u = tuple(max(0, -(-et // n)) for et in e)
    v = tuple(ai - ui for ai, ui in zip(a, u))
    w = tuple(ci - ui for ci, ui in zip(c, u))
    z = tuple(di - n * vi for di, vi in zip(d, v))
    return u, v, w, z


def simplicial_nabla_map(matrix: Sequence[Sequence[int]], cols: int | None = None,
                         source: FiniteSemilattice | None = None,
                         target: FiniteSemilattice | None = None) -> SemilatticeHom:
    """nabla of the positive map e_i -> sum_j matrix[i][j] e_j, as 2^k -> 2^l.

    A subset T of rows goes to the union of the supports of its rows.
    ``cols`` is needed only when the matrix has no rows.
    """
    rows = [list(r) for r in matrix]
    k = len(rows)
    l = cols if cols is not None else (len(rows[0]) if rows else 0)
    if any(len(r) != l for r in rows):
        raise ValueError("ragged matrix")
    if any(v < 0 for r in rows for v in r):
        raise ValueError("entries must be nonnegative")
    support = [sum(1 << j for j, v in enumerate(r) if v) for r in rows]
    source = source or boolean_lattice(k)
    target = target or boolean_lattice(l)
    img = []
    for m in range(1 << k):
        acc = 0
        for i in range(k):
            if m >> i & 1:
                acc |= support[i]
        img.append(acc)
    return SemilatticeHom(source, target, img)
