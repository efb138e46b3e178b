"""Temperate powers of Q over finite ground sets, with exact rational arithmetic.

For a lattice of sets D on a finite ground set X (closed under union and
intersection, containing the empty set), E(D) is the Q-vector space of
functions X -> Q whose nonzero level sets lie in the generalized Boolean
algebra generated by D.  Its positive cone consists of the nonnegative
functions whose support is a member of D.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .order import FinitePoset, birkhoff, down_set, lower_sets
from .semilattice import (FiniteSemilattice, SemilatticeHom, subset_label)


class RationalVector:
    """An exact rational vector indexed by positions 0..n-1 of a ground set."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable):
        self.entries = tuple(Fraction(e) for e in entries)

    @classmethod
    def zeros(cls, n: int) -> "RationalVector":
        return cls([0] * n)

    @classmethod
    def indicator(cls, n: int, members: Iterable[int]) -> "RationalVector":
        s = set(members)
        return cls([1 if i in s else 0 for i in range(n)])

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        if isinstance(other, RationalVector):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "RationalVector(" + ", ".join(str(e) for e in self.entries) + ")"

    def _same(self, other):
        if len(other) != len(self):
            raise ValueError("vectors live on different index sets")

    def __add__(self, other):
        self._same(other)
        return RationalVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._same(other)
        return RationalVector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return RationalVector(-a for a in self)

    def __mul__(self, other):
        # vector * vector is componentwise, vector * scalar scales
        if isinstance(other, RationalVector):
            self._same(other)
            return RationalVector(a * b for a, b in zip(self, other))
        return RationalVector(a * Fraction(other) for a in self)

    __rmul__ = __mul__

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.entries) if e != 0)

    def level_sets(self) -> dict[Fraction, frozenset[int]]:
        out: dict[Fraction, set[int]] = {}
        for i, e in enumerate(self.entries):
            if e != 0:
                out.setdefault(e, set()).add(i)
        return {r: frozenset(s) for r, s in out.items()}


def _mask(members: Iterable[int]) -> int:
    return sum(1 << i for i in set(members))


def _members(mask: int) -> frozenset[int]:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


class SetLatticeD:
    """A lattice of subsets of a finite ground set containing the empty set."""

    def __init__(self, ground: Sequence[str], members: Iterable[Iterable[int]]):
        self.ground = tuple(str(g) for g in ground)
        masks = {_mask(m) for m in members}
        full = (1 << len(self.ground)) - 1
        if any(m & ~full for m in masks):
            raise ValueError("member set mentions an element outside the ground set")
        if 0 not in masks:
            raise ValueError("the empty set must be a member")
        for a in masks:
            for b in masks:
                if a | b not in masks:
                    raise ValueError(f"not closed under union: {sorted(_members(a))}, {sorted(_members(b))}")
                if a & b not in masks:
                    raise ValueError(f"not closed under intersection: {sorted(_members(a))}, {sorted(_members(b))}")
        self.masks = tuple(sorted(masks))

    @classmethod
    def from_poset(cls, P: FinitePoset) -> "SetLatticeD":
        """H(P): the lower sets of P."""
        return cls(P.labels, [t.members for t in lower_sets(P).tags])

    @property
    def members(self) -> tuple[frozenset[int], ...]:
        return tuple(_members(m) for m in self.masks)

    def __len__(self):
        return len(self.masks)

    def __contains__(self, s) -> bool:
        return _mask(s) in self.masks

    def __eq__(self, other):
        if not isinstance(other, SetLatticeD):
            return NotImplemented
        return self.ground == other.ground and self.masks == other.masks

    def __hash__(self):
        return hash((self.ground, self.masks))

    def __repr__(self):
        return f"SetLatticeD({list(self.ground)}, {len(self.masks)} members)"

    def as_semilattice(self) -> FiniteSemilattice:
        """D under union, in increasing bitmask order, tagged by member sets."""
        pos = {m: i for i, m in enumerate(self.masks)}
        join = [[pos[a | b] for b in self.masks] for a in self.masks]
        labels = [subset_label(self.ground[i] for i in sorted(_members(m))) for m in self.masks]
        return FiniteSemilattice(join, labels, tags=self.members, check=False)


def birkhoff_set_model(L: FiniteSemilattice):
    """Represent a finite distributive lattice as a set lattice over its join-irreducibles.

    Returns ``(D, iso)`` where iso: L -> D.as_semilattice() sends x to the
    set of join-irreducibles below x.
    """
    P, tau = birkhoff(L)
    D = SetLatticeD.from_poset(P)
    DS = D.as_semilattice()
    inv = {tau(i): i for i in range(len(tau.source))}
    H = tau.source
    pos = {m: i for i, m in enumerate(D.masks)}
    iso = SemilatticeHom(L, DS, [pos[H.tags[inv[x]].mask] for x in L])
    return D, iso


def bd_closure(D: SetLatticeD) -> frozenset[frozenset[int]]:
    """The generalized Boolean algebra generated by D (closed under union and difference)."""
    sets = set(D.masks)
    changed = True
    while changed:
        changed = False
        cur = list(sets)
        for a in cur:
            for b in cur:
                for c in (a | b, a & ~b):
                    if c not in sets:
                        sets.add(c)
                        changed = True
    return frozenset(_members(m) for m in sets)


def is_measurable(f: RationalVector, D: SetLatticeD, closure=None) -> bool:
    if len(f) != len(D.ground):
        raise ValueError("vector and set lattice have different ground sets")
    closure = bd_closure(D) if closure is None else closure
    return all(s in closure for s in f.level_sets().values())


def ratio(f: RationalVector, g: RationalVector) -> RationalVector:
    """Componentwise f/g, with 0 wherever g vanishes."""
    if len(f) != len(g):
        raise ValueError("vectors live on different index sets")
    return RationalVector(a / b if b != 0 else 0 for a, b in zip(f, g))


def is_positive(f: RationalVector, D: SetLatticeD) -> bool:
    """Membership in the positive cone: f in E(D), f >= 0, supp(f) in D."""
    return all(e >= 0 for e in f) and f.support in D and is_measurable(f, D)


def _require_positive(D, **vectors):
    for name, v in vectors.items():
        if not is_positive(v, D):
            raise ValueError(f"{name} is not in the positive cone")


def propto_witness(f: RationalVector, g: RationalVector, D: SetLatticeD) -> int | None:
    """An integer N with N*g - f positive, or None when supp(f) is not inside supp(g).

    N = n + 1 where n is the least integer majorizing ratio(f, g).
    """
    _require_positive(D, f=f, g=g)
    if not f.support <= g.support:
        return None
    top = max(ratio(f, g), default=Fraction(0))
    n = -(-top.numerator // top.denominator)
    return n + 1


def refinement_witness(f0, f1, g0, g1, D: SetLatticeD):
    """Refinement matrix ``((h00, h01), (h10, h11))`` for f0 + f1 = g0 + g1.

    h_ij = ratio(f_i * g_j, f0 + f1); all four are positive with
    supp(h_ij) = supp(f_i) & supp(g_j).
    """
    _require_positive(D, f0=f0, f1=f1, g0=g0, g1=g1)
    h = f0 + f1
    if h != g0 + g1:
        raise ValueError("f0 + f1 != g0 + g1")
    fs, gs = (f0, f1), (g0, g1)
    return tuple(tuple(ratio(fs[i] * gs[j], h) for j in range(2)) for i in range(2))


def iota(f: RationalVector, D: SetLatticeD) -> frozenset[int]:
    """The support of a positive vector: the image of its nabla-class in D."""
    _require_positive(D, f=f)
    return f.support


# -- lifting homomorphisms between lower-set lattices ------------------------

def lift_hom(P: FinitePoset, Q: FinitePoset, f: SemilatticeHom) -> list[list[int]]:
    """0/1 matrix whose row p is the indicator of f(down p).

    ``f`` maps ``lower_sets(P)`` to ``lower_sets(Q)`` and must preserve 0.
    The linear map x -> x @ matrix sends positive vectors with support U to
    vectors with support f(U).
    """
    HP, HQ = lower_sets(P), lower_sets(Q)
    if f.source.tags != HP.tags or f.target.tags != HQ.tags:
        raise ValueError("f must map lower_sets(P) to lower_sets(Q)")
    if not f.preserves_zero():
        raise ValueError("f does not preserve the empty lower set")
    index = {t.mask: i for i, t in enumerate(HP.tags)}
    rows = []
    for p in P:
        image = HQ.tags[f(index[down_set(P, p).mask])]
        rows.append([1 if q in image else 0 for q in Q])
    return rows


def apply_matrix(matrix: Sequence[Sequence[int]], x: RationalVector, cols: int) -> RationalVector:
    """x @ matrix, i.e. sum_p x_p * row_p."""
    if len(matrix) != len(x):
        raise ValueError("matrix rows do not match the vector")
    return RationalVector(sum((x[p] * matrix[p][q] for p in range(len(x))), Fraction(0))
                          for q in range(cols))


@dataclass
class LiftDLatReport:
    lattice: FiniteSemilattice
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def verify_lift_dlat(D: SetLatticeD) -> LiftDLatReport:
    """Check that the support map identifies nabla(E+(D)) with D.

    Uses the characteristic vectors of the members of D and a weighted copy
    of each (distinct positive values on the same support) as the test
    family: every member is a support, supports add as unions, the propto
    witness exists exactly on support inclusion, and mutual propto holds
    exactly when supports coincide.
    """
    n = len(D.ground)
    report = LiftDLatReport(D.as_semilattice())
    closure = bd_closure(D)
    family = []
    for d in D.members:
        chi = RationalVector.indicator(n, d)
        weighted = RationalVector([Fraction(i + 1, 2) if i in d else 0 for i in range(n)])
        family += [(d, chi), (d, weighted)]

    def check(cond, what):
        report.checked += 1
        if not cond:
            report.failures.append(what)

    for d, v in family:
        check(is_measurable(v, D, closure) and is_positive(v, D), ("positive", sorted(d)))
        check(v.support == d, ("support", sorted(d)))
    for (a, u), (b, v) in product(family, repeat=2):
        check((u + v).support == a | b and (u + v).support in D, ("union", sorted(a), sorted(b)))
        N = propto_witness(u, v, D)
        check((N is not None) == (a <= b), ("propto", sorted(a), sorted(b)))
        if N is not None:
            check(is_positive(N * v - u, D), ("witness", sorted(a), sorted(b), N))
        same = N is not None and propto_witness(v, u, D) is not None
        check(same == (a == b), ("asymp", sorted(a), sorted(b)))
    return report


@dataclass
class LiftTower:
    posets: list
    taus: list
    homs: list
    matrices: list
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def lift_tower(ambient: FiniteSemilattice, stages: Sequence[Iterable[int]]) -> LiftTower:
    """Lift an increasing chain of finite distributive 0-subsemilattices.

    ``stages`` are index subsets of ``ambient``, each join-closed, containing
    the least element of ``ambient`` and contained in the next.  For each
    stage the join-irreducibles P_n and tau_n: H(P_n) -> S_n are computed,
    f_n = tau_{n+1}^-1 o tau_n, and f_n is lifted to a 0/1 matrix.  Every
    square supp(g_n(x)) = f_n(supp(x)) and tau_{n+1} o f_n = tau_n is checked
    on the characteristic vector of each lower set of P_n.
    """
    zero = ambient.bottom
    if zero is None:
        raise ValueError("ambient semilattice has no least element")
    subsets = [sorted(set(s)) for s in stages]
    for k, s in enumerate(subsets):
        if zero not in s:
            raise ValueError(f"stage {k} does not contain 0")
        if k and not set(subsets[k - 1]) <= set(s):
            raise ValueError(f"stage {k - 1} is not contained in stage {k}")
    sems = [ambient.restrict(s) for s in subsets]
    posets, taus = [], []
    for S in sems:
        P, tau = birkhoff(S)
        posets.append(P)
        taus.append(tau)
    out = LiftTower(posets, taus, [], [])
    for k in range(len(sems) - 1):
        tau, nxt = taus[k], taus[k + 1]
        inv = {nxt(i): i for i in range(len(nxt.source))}
        here, there = subsets[k], subsets[k + 1]
        f = SemilatticeHom(tau.source, nxt.source,
                           [inv[there.index(here[tau(u)])] for u in range(len(tau.source))])
        M = lift_hom(posets[k], posets[k + 1], f)
        out.homs.append(f)
        out.matrices.append(M)
        HQ = nxt.source
        for u, U in enumerate(tau.source.tags):
            x = RationalVector.indicator(len(posets[k]), U.members)
            y = apply_matrix(M, x, len(posets[k + 1]))
            if y.support != HQ.tags[f(u)].members:
                out.failures.append(("square", k, sorted(U.members)))
            if there[nxt(f(u))] != here[tau(u)]:
                out.failures.append(("inclusion", k, sorted(U.members)))
    return out


def refinement_audit(f0, f1, g0, g1, D: SetLatticeD, h=None) -> list[str]:
    """Every condition the refinement matrix h must meet; returns the failed ones.

    Sum identities: the four row/column sums, plus supp(h_ij) = supp(f_i) &
    supp(g_j) for each cell.  Membership: each h_ij is in the positive cone.
    """
    h = refinement_witness(f0, f1, g0, g1, D) if h is None else h
    fs, gs = (f0, f1), (g0, g1)
    failed = []
    for i in range(2):
        if h[i][0] + h[i][1] != fs[i]:
            failed.append(f"h{i}0 + h{i}1 = f{i}")
        if h[0][i] + h[1][i] != gs[i]:
            failed.append(f"h0{i} + h1{i} = g{i}")
    for i, j in product(range(2), repeat=2):
        if h[i][j].support != fs[i].support & gs[j].support:
            failed.append(f"supp h{i}{j} = supp f{i} & supp g{j}")
        if not is_positive(h[i][j], D):
            failed.append(f"h{i}{j} positive")
    return failed


def random_positive(D: SetLatticeD, rng, bound: int = 100, terms: int = 2) -> RationalVector:
    """A random positive vector: a sum of random multiples of characteristic vectors.

    Numerators and denominators of the coefficients lie in 1..bound.
    """
    n = len(D.ground)
    members = D.members
    v = RationalVector.zeros(n)
    for _ in range(rng.randint(0, terms)):
        d = rng.choice(members)
        q = Fraction(rng.randint(1, bound), rng.randint(1, bound))
        v = v + RationalVector.indicator(n, d) * q
    return v


def random_refinement_instance(D: SetLatticeD, rng, bound: int = 100):
    """(f0, f1, g0, g1) with f0 + f1 = g0 + g1, all positive, built from a random 2x2 matrix."""
    c = [[random_positive(D, rng, bound) for _ in range(2)] for _ in range(2)]
    return c[0][0] + c[0][1], c[1][0] + c[1][1], c[0][0] + c[1][0], c[0][1] + c[1][1]


def verify_lift_maps(P: FinitePoset, Q: FinitePoset, f: SemilatticeHom,
                     values: Sequence[int] = (0, 1, 2)) -> tuple[int, list]:
    """Check supp(x @ lift) = f(supp x) for every positive x with entries in ``values``.

    Positive here means the support is a lower set of P.  The integer entries
    keep the product exact without going through Fraction.  Returns
    ``(checked, failures)``.
    """
    M = lift_hom(P, Q, f)
    HQ = f.target
    index = {t.mask: i for i, t in enumerate(f.source.tags)}
    image = [HQ.tags[f(i)].mask for i in range(len(f.source))]
    nq = len(Q)
    checked, failures = 0, []
    for xs in product(values, repeat=len(P)):
        mask = sum(1 << p for p, v in enumerate(xs) if v)
        if mask not in index:
            continue
        checked += 1
        y = [sum(xs[p] * M[p][q] for p in range(len(xs))) for q in range(nq)]
        if sum(1 << q for q, v in enumerate(y) if v) != image[index[mask]]:
            failures.append(xs)
    return checked, failures
