"""Finite posets, their lower-set lattices and Birkhoff duality."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .semilattice import (FiniteSemilattice, NotALatticeError, SemilatticeHom,
                          distributivity_counterexample, NotDistributiveError,
                          subset_label)


class FinitePoset:
    """A finite partial order on ``labels``.

    ``relation`` is any set of pairs ``(x, y)`` meaning x <= y, given either
    as indices or as labels; cover relations are enough, the reflexive
    transitive closure is taken and antisymmetry is checked.
    """

    def __init__(self, labels: Sequence[str], relation: Iterable[tuple] = ()):
        self.labels = tuple(str(s) for s in labels)
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ValueError("labels must be distinct")
        leq = [[x == y for y in range(n)] for x in range(n)]
        for x, y in relation:
            leq[self._resolve(x)][self._resolve(y)] = True
        for k in range(n):
            for i in range(n):
                if leq[i][k]:
                    for j in range(n):
                        if leq[k][j]:
                            leq[i][j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if leq[i][j] and leq[j][i]:
                    raise ValueError(
                        f"antisymmetry fails: {self.labels[i]} and {self.labels[j]}")
        self.leq_matrix = tuple(tuple(row) for row in leq)

    def _resolve(self, x) -> int:
        if isinstance(x, int):
            if not 0 <= x < len(self.labels):
                raise IndexError(f"element index {x} out of range")
            return x
        return self.labels.index(str(x))

    @classmethod
    def chain(cls, n: int) -> "FinitePoset":
        return cls([f"p{i}" for i in range(n)], [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def antichain(cls, n: int) -> "FinitePoset":
        return cls([f"p{i}" for i in range(n)])

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(range(len(self.labels)))

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.labels == other.labels and self.leq_matrix == other.leq_matrix

    def __hash__(self):
        return hash((self.labels, self.leq_matrix))

    def __repr__(self):
        return f"FinitePoset({list(self.labels)}, covers={self.covers()})"

    def leq(self, x: int, y: int) -> bool:
        return self.leq_matrix[x][y]

    def covers(self) -> list[tuple[int, int]]:
        n = len(self)
        return [(x, y) for x in range(n) for y in range(n)
                if x != y and self.leq(x, y)
                and not any(z not in (x, y) and self.leq(x, z) and self.leq(z, y)
                            for z in range(n))]

    def is_lower(self, mask: int) -> bool:
        for q in self:
            if mask >> q & 1:
                for p in self:
                    if self.leq(p, q) and not mask >> p & 1:
                        return False
        return True


@dataclass(frozen=True)
class LowerSet:
    """A downward closed subset, stored as a bitmask over element indices."""

    mask: int

    @property
    def members(self) -> frozenset[int]:
        return frozenset(i for i in range(self.mask.bit_length()) if self.mask >> i & 1)

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return bin(self.mask).count("1")


def down_set(P: FinitePoset, p: int) -> LowerSet:
    if not 0 <= p < len(P):
        raise IndexError(f"element index {p} out of range")
    return LowerSet(sum(1 << x for x in P if P.leq(x, p)))


def lower_sets(P: FinitePoset) -> FiniteSemilattice:
    """H(P) under union, elements in increasing bitmask order, tagged by LowerSet."""
    sets = [m for m in range(1 << len(P)) if P.is_lower(m)]
    pos = {m: i for i, m in enumerate(sets)}
    join = [[pos[a | b] for b in sets] for a in sets]
    labels = [subset_label(P.labels[i] for i in range(len(P)) if m >> i & 1) for m in sets]
    return FiniteSemilattice(join, labels, tags=[LowerSet(m) for m in sets], check=False)


def lower_set_index(H: FiniteSemilattice, members) -> int:
    """Index in ``lower_sets(P)`` of the lower set with the given members (or mask)."""
    mask = members.mask if isinstance(members, LowerSet) else (
        members if isinstance(members, int) else sum(1 << i for i in members))
    for i, t in enumerate(H.tags):
        if t.mask == mask:
            return i
    raise ValueError(f"no lower set with mask {mask:b}")


def join_irreducibles(L: FiniteSemilattice) -> tuple[int, ...]:
    """Nonzero elements that are not the join of the elements strictly below them."""
    out = []
    for x in L:
        if x == L.bottom:
            continue
        strictly = [y for y in L.below(x) if y != x]
        if not strictly or L.join_all(strictly) != x:
            out.append(x)
    return tuple(out)


def meet_irreducibles(L: FiniteSemilattice) -> tuple[int, ...]:
    """Non-top elements with exactly one upper cover."""
    if not L.is_lattice:
        raise NotALatticeError("meet-irreducibles need a lattice")
    return tuple(x for x in L if x != L.top and len(L.upper_covers[x]) == 1)


def birkhoff(L: FiniteSemilattice):
    """``(P, tau)``: the poset of join-irreducibles and tau: H(P) -> L.

    tau sends a lower set to the join of its members, which is an
    isomorphism exactly when L is a finite distributive lattice.
    """
    if not L.is_lattice:
        raise NotALatticeError("birkhoff needs a lattice (least element missing)")
    witness = distributivity_counterexample(L)
    if witness is not None:
        raise NotDistributiveError(witness)
    J = join_irreducibles(L)
    P = FinitePoset([L.labels[j] for j in J],
                    [(a, b) for a in range(len(J)) for b in range(len(J)) if L.leq(J[a], J[b])])
    H = lower_sets(P)
    tau = SemilatticeHom(H, L, [L.join_all(J[i] for i in t) for t in H.tags])
    return P, tau


def poset_of(L: FiniteSemilattice) -> FinitePoset:
    """The induced order of a semilattice as a poset (same labels)."""
    return FinitePoset(L.labels, [(x, y) for x in L for y in L if L.leq(x, y)])
