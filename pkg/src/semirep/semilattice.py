"""Finite join-semilattices given by their join tables.

Elements are the indices ``0..n-1``; labels are only used for display and
serialization.  Everything here is exhaustive and meant for small
structures (a few dozen elements at most).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Sequence


class AxiomError(ValueError):
    """A table or map fails one of the algebraic axioms.

    ``axiom`` names the failing law and ``witness`` holds the offending
    element indices.
    """

    def __init__(self, axiom: str, witness: tuple, message: str | None = None):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(message or f"{axiom} fails at {self.witness}")


class NotDistributiveError(ValueError):
    def __init__(self, witness: tuple):
        self.witness = tuple(witness)
        a, b0, b1 = witness
        super().__init__(
            f"not distributive: {a} <= {b0} v {b1} has no decomposition")


class NotALatticeError(ValueError):
    pass


def find_defect(table: Sequence[Sequence[int]]) -> AxiomError | None:
    """Return the first axiom violation of a join table, or ``None``."""
    n = len(table)
    for x, row in enumerate(table):
        if len(row) != n:
            return AxiomError("shape", (x,), f"row {x} has length {len(row)}, expected {n}")
        for y, v in enumerate(row):
            if not (isinstance(v, int) and 0 <= v < n):
                return AxiomError("range", (x, y), f"entry ({x},{y}) = {v!r} is not an element index")
    for x in range(n):
        if table[x][x] != x:
            return AxiomError("idempotence", (x,))
    for x in range(n):
        for y in range(x + 1, n):
            if table[x][y] != table[y][x]:
                return AxiomError("commutativity", (x, y))
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            return AxiomError("associativity", (a, b, c))
    return None


def validate(table, labels=None) -> "FiniteSemilattice":
    """Build a semilattice from ``table``, raising :class:`AxiomError` on a defect."""
    return FiniteSemilattice(table, labels)


class FiniteSemilattice:
    """A finite join-semilattice.

    ``join[x][y]`` is the index of ``x v y``.  ``tags`` optionally attaches a
    payload to each element (lower sets carry their member sets this way).
    Least and greatest elements are derived from the table, never stored.
    """

    def __init__(self, join, labels=None, tags=None, check=True):
        join = tuple(tuple(row) for row in join)
        if check:
            defect = find_defect(join)
            if defect is not None:
                if labels is not None and len(labels) == len(join) and defect.axiom not in ("shape", "range"):
                    names = ", ".join(str(labels[i]) for i in defect.witness)
                    raise AxiomError(defect.axiom, defect.witness,
                                     f"{defect.axiom} fails at ({names})")
                raise defect
        self.join = join
        n = len(join)
        if labels is None:
            labels = [str(i) for i in range(n)]
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise ValueError(f"{len(labels)} labels for {n} elements")
        if len(set(labels)) != n:
            raise ValueError("labels must be distinct")
        self.labels = labels
        self.tags = None if tags is None else tuple(tags)

    def __len__(self):
        return len(self.join)

    def __iter__(self):
        return iter(range(len(self.join)))

    def __eq__(self, other):
        if not isinstance(other, FiniteSemilattice):
            return NotImplemented
        return self.join == other.join and self.labels == other.labels

    def __hash__(self):
        return hash((self.join, self.labels))

    def __repr__(self):
        return f"FiniteSemilattice({list(self.labels)})"

    def index(self, label: str) -> int:
        return self.labels.index(str(label))

    def leq(self, x: int, y: int) -> bool:
        return self.join[x][y] == y

    def join_all(self, xs: Iterable[int]) -> int | None:
        """Join of a family; the join of nothing is the least element (or None)."""
        result = None
        for x in xs:
            result = x if result is None else self.join[result][x]
        return self.bottom if result is None else result

    @cached_property
    def bottom(self) -> int | None:
        for x in self:
            if all(self.join[x][y] == y for y in self):
                return x
        return None

    @cached_property
    def top(self) -> int | None:
        if not self.join:
            return None
        return self.join_all(range(len(self)))

    @property
    def is_lattice(self) -> bool:
        # a finite join-semilattice with a least element has all meets
        return self.bottom is not None

    def below(self, x: int) -> tuple[int, ...]:
        return tuple(y for y in self if self.join[y][x] == x)

    def above(self, x: int) -> tuple[int, ...]:
        return tuple(y for y in self if self.join[x][y] == y)

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        covers = []
        for x in self:
            ups = [y for y in self.above(x) if y != x]
            covers.append(tuple(y for y in ups
                                if not any(z != y and self.leq(z, y) for z in ups)))
        return tuple(covers)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        lows = [[] for _ in self]
        for x in self:
            for y in self.upper_covers[x]:
                lows[y].append(x)
        return tuple(tuple(c) for c in lows)

    def meet(self, x: int, y: int) -> int:
        if not self.is_lattice:
            raise NotALatticeError("no least element, meets need not exist")
        common = [z for z in self if self.leq(z, x) and self.leq(z, y)]
        return self.join_all(common)

    def restrict(self, indices: Iterable[int]) -> "FiniteSemilattice":
        """The subsemilattice on a join-closed set of indices (kept in index order)."""
        idx = sorted(set(indices))
        pos = {x: i for i, x in enumerate(idx)}
        try:
            join = [[pos[self.join[x][y]] for y in idx] for x in idx]
        except KeyError:
            raise ValueError("subset is not closed under join") from None
        tags = None if self.tags is None else [self.tags[x] for x in idx]
        return FiniteSemilattice(join, [self.labels[x] for x in idx], tags, check=False)


@dataclass(frozen=True)
class Congruence:
    """A partition of element indices, blocks sorted and ordered by least member."""

    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_classes(cls, classes: Iterable[Iterable[int]]) -> "Congruence":
        blocks = sorted(tuple(sorted(b)) for b in classes if b)
        return cls(tuple(blocks))

    @cached_property
    def block_of(self) -> dict[int, int]:
        return {x: i for i, b in enumerate(self.blocks) for x in b}

    def related(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for b in self.blocks for i, x in enumerate(b) for y in b[i + 1:]]

    def is_compatible(self, S: FiniteSemilattice) -> bool:
        blk = self.block_of
        for b in self.blocks:
            for x, x2 in product(b, repeat=2):
                for y in S:
                    if blk[S.join[x][y]] != blk[S.join[x2][y]]:
                        return False
        return True


@dataclass(frozen=True, eq=True)
class SemilatticeHom:
    source: FiniteSemilattice
    target: FiniteSemilattice
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        S, T, m = self.source, self.target, self.map
        if len(m) != len(S):
            raise ValueError(f"map has {len(m)} entries, source has {len(S)} elements")
        for x, v in enumerate(m):
            if not 0 <= v < len(T):
                raise AxiomError("range", (x,), f"image of {x} is not a target element")
        for x in S:
            for y in range(x, len(S)):
                if m[S.join[x][y]] != T.join[m[x]][m[y]]:
                    raise AxiomError("homomorphism", (x, y),
                                     f"f({x} v {y}) != f({x}) v f({y})")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def compose(self, inner: "SemilatticeHom") -> "SemilatticeHom":
        """``self o inner``."""
        if inner.target != self.source:
            raise ValueError("cannot compose: target/source mismatch")
        return SemilatticeHom(inner.source, self.target, [self.map[v] for v in inner.map])

    def kernel(self) -> Congruence:
        classes: dict[int, list[int]] = {}
        for x, v in enumerate(self.map):
            classes.setdefault(v, []).append(x)
        return Congruence.from_classes(classes.values())

    @property
    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.map)))

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == len(self.target)

    def preserves_zero(self) -> bool:
        s, t = self.source.bottom, self.target.bottom
        return s is None or (t is not None and self.map[s] == t)

    def preserves_one(self) -> bool:
        s, t = self.source.top, self.target.top
        return s is None or self.map[s] == t


def identity(S: FiniteSemilattice) -> SemilatticeHom:
    return SemilatticeHom(S, S, range(len(S)))


# -- standard examples --------------------------------------------------------

def chain(n: int) -> FiniteSemilattice:
    """The n-element chain 0 < 1 < ... < n-1."""
    return FiniteSemilattice([[max(x, y) for y in range(n)] for x in range(n)], check=False)


def subset_label(members: Iterable[str]) -> str:
    return "{" + ",".join(members) + "}"


def boolean_lattice(atoms) -> FiniteSemilattice:
    """2^n under union; element index == bitmask over the atoms.

    ``atoms`` is either a count or a sequence of atom labels.
    """
    if isinstance(atoms, int):
        atoms = [str(i) for i in range(atoms)]
    atoms = [str(a) for a in atoms]
    size = 1 << len(atoms)
    labels = [subset_label(a for i, a in enumerate(atoms) if m >> i & 1) for m in range(size)]
    join = [[x | y for y in range(size)] for x in range(size)]
    return FiniteSemilattice(join, labels, check=False)


def from_order(labels: Sequence[str], leq) -> FiniteSemilattice:
    """Semilattice from an order predicate ``leq(i, j)``; raises if some join is missing."""
    n = len(labels)
    join = []
    for x in range(n):
        row = []
        for y in range(n):
            ubs = [z for z in range(n) if leq(x, z) and leq(y, z)]
            least = [z for z in ubs if all(leq(z, w) for w in ubs)]
            if len(least) != 1:
                raise NotALatticeError(f"{labels[x]} and {labels[y]} have no join")
            row.append(least[0])
        join.append(row)
    return FiniteSemilattice(join, labels)


# -- distributivity and constraint solving -------------------------------------

def distributivity_counterexample(S: FiniteSemilattice) -> tuple[int, int, int] | None:
    """First triple (a, b0, b1) with a <= b0 v b1 and no a = a0 v a1, a_i <= b_i."""
    below = [S.below(x) for x in S]
    for a, b0, b1 in product(S, repeat=3):
        if not S.leq(a, S.join[b0][b1]):
            continue
        if not any(S.join[a0][a1] == a for a0 in below[b0] for a1 in below[b1]):
            return (a, b0, b1)
    return None


def is_distributive(S: FiniteSemilattice) -> bool:
    return distributivity_counterexample(S) is None


def require_distributive(S: FiniteSemilattice) -> None:
    witness = distributivity_counterexample(S)
    if witness is not None:
        raise NotDistributiveError(witness)


def solve_constraints(S: FiniteSemilattice, lower_pairs: Iterable[tuple[int, int]],
                      uppers: Iterable[int]) -> int | None:
    """Least x with a_i <= b_i v x for every pair and x <= c_j for every upper.

    Returns ``None`` when no element satisfies the system.  Raises
    ``ValueError`` if the solutions have no least element (which cannot happen
    when S is distributive).
    """
    pairs = list(lower_pairs)
    ups = list(uppers)
    sols = [x for x in S
            if all(S.leq(a, S.join[b][x]) for a, b in pairs)
            and all(S.leq(x, c) for c in ups)]
    if not sols:
        return None
    least = [x for x in sols if all(S.leq(x, y) for y in sols)]
    if len(least) != 1:
        raise ValueError("solution set has no least element; is S distributive?")
    return least[0]


# -- structural operations ------------------------------------------------------

def subsemilattice_closure(S: FiniteSemilattice, seed: Iterable[int]) -> tuple[int, ...]:
    closed = set(seed)
    if not closed:
        raise ValueError("empty seed")
    frontier = list(closed)
    while frontier:
        x = frontier.pop()
        for y in list(closed):
            z = S.join[x][y]
            if z not in closed:
                closed.add(z)
                frontier.append(z)
    return tuple(sorted(closed))


def quotient(S: FiniteSemilattice, theta: Congruence):
    """``(S/theta, projection)``; blocks are labelled ``[x,y,...]``."""
    if not theta.is_compatible(S):
        raise AxiomError("compatibility", (), "partition is not a congruence")
    blk = theta.block_of
    reps = [b[0] for b in theta.blocks]
    join = [[blk[S.join[x][y]] for y in reps] for x in reps]
    labels = ["[" + ",".join(S.labels[x] for x in b) + "]" for b in theta.blocks]
    Q = FiniteSemilattice(join, labels, check=False)
    return Q, SemilatticeHom(S, Q, [blk[x] for x in S])


def factor_hom(f: SemilatticeHom):
    """Split ``f`` as ``f' o pi`` through ``source / ker f``.

    Returns ``(quotient, pi, f_prime)`` with pi surjective and f' injective.
    """
    Q, pi = quotient(f.source, f.kernel())
    fprime = SemilatticeHom(Q, f.target, [f.map[b[0]] for b in f.kernel().blocks])
    return Q, pi, fprime


def _invariants(S: FiniteSemilattice) -> list[tuple[int, ...]]:
    height = [0] * len(S)
    for x in sorted(S, key=lambda v: len(S.below(v))):
        height[x] = max((height[y] + 1 for y in S.lower_covers[x]), default=0)
    return [(len(S.below(x)), len(S.above(x)), height[x],
             len(S.upper_covers[x]), len(S.lower_covers[x])) for x in S]


def is_isomorphic(S: FiniteSemilattice, T: FiniteSemilattice) -> tuple[int, ...] | None:
    """A join-preserving bijection S -> T as an index tuple, or ``None``."""
    n = len(S)
    if n != len(T):
        return None
    inv_s, inv_t = _invariants(S), _invariants(T)
    if sorted(inv_s) != sorted(inv_t):
        return None
    order = sorted(S, key=lambda x: (sum(1 for v in inv_s if v == inv_s[x]), x))
    phi = [-1] * n
    used = [False] * n

    def consistent(x):
        for a in S:
            if phi[a] < 0:
                continue
            j = S.join[x][a]
            if phi[j] >= 0 and T.join[phi[x]][phi[a]] != phi[j]:
                return False
        return True

    def extend(k):
        if k == n:
            return True
        x = order[k]
        for y in T:
            if used[y] or inv_t[y] != inv_s[x]:
                continue
            phi[x], used[y] = y, True
            if consistent(x) and extend(k + 1):
                return True
            phi[x], used[y] = -1, False
        return False

    return tuple(phi) if extend(0) else None


def boolean_structure(S: FiniteSemilattice) -> tuple[int, ...] | None:
    """Atoms of S in index order if S is isomorphic to 2^n, else ``None``.

    The isomorphism sends the bitmask over the returned atoms to their join.
    """
    n = len(S)
    if n == 0 or n & (n - 1) or S.bottom is None:
        return None
    atoms = S.upper_covers[S.bottom]
    if 1 << len(atoms) != n:
        return None
    images = {S.join_all(a for i, a in enumerate(atoms) if m >> i & 1) for m in range(n)}
    return tuple(atoms) if len(images) == n else None


def boolean_iso(S: FiniteSemilattice, atoms: Sequence[int]) -> SemilatticeHom:
    """The map 2^len(atoms) -> S sending a bitmask to the join of its atoms."""
    B = boolean_lattice([S.labels[a] for a in atoms])
    return SemilatticeHom(B, S, [S.join_all(a for i, a in enumerate(atoms) if m >> i & 1)
                                 for m in range(len(B))])


def hom_from_mapping(S: FiniteSemilattice, T: FiniteSemilattice,
                     mapping: Mapping[int, int]) -> SemilatticeHom:
    return SemilatticeHom(S, T, [mapping[x] for x in S])
