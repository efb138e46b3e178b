"""Boolean embeddings, finite injectivity, triangle factorization and towers.

A distributive finite semilattice S is exhibited as the direct limit of a
sequence of Boolean semilattices 2^n_0 -> 2^n_1 -> ... together with a cone
of maps into S whose kernels are merged one step later.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from string import ascii_lowercase
from typing import Mapping, Sequence

from .order import join_irreducibles, meet_irreducibles
from .semilattice import (AxiomError, FiniteSemilattice, NotALatticeError,
                          SemilatticeHom, boolean_lattice, factor_hom,
                          require_distributive, solve_constraints)

MODES = ("powerset", "meet_irreducible")
VARIANTS = ("plain", "zero", "zero_one")


@dataclass(frozen=True)
class SequentialSystem:
    stages: tuple[FiniteSemilattice, ...]
    transitions: tuple[SemilatticeHom, ...]

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        if len(self.transitions) != max(len(self.stages) - 1, 0):
            raise ValueError("need exactly one transition between consecutive stages")
        for i, t in enumerate(self.transitions):
            if t.source != self.stages[i] or t.target != self.stages[i + 1]:
                raise ValueError(f"transition {i} does not go from stage {i} to stage {i + 1}")

    def __len__(self):
        return len(self.stages)

    def composite(self, i: int, j: int) -> tuple[int, ...]:
        """Index map of the composite transition from stage i to stage j >= i."""
        m = tuple(range(len(self.stages[i])))
        for k in range(i, j):
            t = self.transitions[k].map
            m = tuple(t[v] for v in m)
        return m


@dataclass(frozen=True)
class Cone:
    apex: FiniteSemilattice
    legs: tuple[SemilatticeHom, ...]

    def __post_init__(self):
        object.__setattr__(self, "legs", tuple(self.legs))
        for i, leg in enumerate(self.legs):
            if leg.target != self.apex:
                raise ValueError(f"leg {i} does not land in the apex")


def atom_names(n: int) -> list[str]:
    if n <= len(ascii_lowercase):
        return list(ascii_lowercase[:n])
    return [f"e{i}" for i in range(n)]


def embed_boolean(S: FiniteSemilattice, mode: str = "meet_irreducible"):
    """Embed S into a Boolean semilattice via ``s -> {x in X : s !<= x}``.

    X is all of S (``powerset``) or its meet-irreducibles
    (``meet_irreducible``, lattices only).  X is ordered by the first element
    of S lying outside the principal down-set of each x, so that the
    embedding of a Boolean S is the identity on atoms.

    Returns ``(B, j)`` with B = 2^X (element index = bitmask over X).
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "meet_irreducible":
        if not S.is_lattice:
            raise NotALatticeError("meet_irreducible mode needs a lattice")
        index = list(meet_irreducibles(S))
    else:
        index = list(S)

    def first_outside(x):
        return next((q for q in S if not S.leq(q, x)), len(S))

    index.sort(key=lambda x: (first_outside(x), x))
    B = boolean_lattice([S.labels[x] for x in index])
    j = [sum(1 << i for i, x in enumerate(index) if not S.leq(s, x)) for s in S]
    return B, SemilatticeHom(S, B, j)


def extend_hom(B: FiniteSemilattice, f: Mapping[int, int], S: FiniteSemilattice) -> SemilatticeHom:
    """Extend a homomorphism defined on a join-closed part of B to all of B.

    ``f`` maps B-indices (its keys form the subsemilattice A) to S-indices and
    S must be distributive.  New elements of B are adjoined one at a time in
    index order; for each new b the least admissible value of ``g(b)`` is
    taken, so the result is deterministic.
    """
    require_distributive(S)
    g = dict(f)
    A = sorted(g)
    for x in A:
        for y in A:
            z = B.join[x][y]
            if z not in g:
                raise ValueError(f"domain is not join-closed: {x} v {y} = {z} missing")
            if g[z] != S.join[g[x]][g[y]]:
                raise AxiomError("homomorphism", (x, y), f"f({x} v {y}) != f({x}) v f({y})")
    for b in B:
        if b in g:
            continue
        cur = list(g)
        pairs = [(g[x], g[y]) for x in cur for y in cur if B.leq(x, B.join[y][b])]
        uppers = [g[z] for z in cur if B.leq(b, z)]
        alpha = solve_constraints(S, pairs, uppers)
        if alpha is None:
            raise AssertionError("no solution although S is distributive")
        beta = S.join_all([alpha] + [g[w] for w in cur if B.leq(w, b)])
        new = {b: beta}
        for x in cur:
            xb = B.join[x][b]
            val = S.join[g[x]][beta]
            if xb in g:
                assert g[xb] == val, "extension is not well defined"
            elif xb in new:
                assert new[xb] == val, "extension is not well defined"
            else:
                new[xb] = val
        g.update(new)
    return SemilatticeHom(B, S, [g[x] for x in B])


def triangle_factor(f: SemilatticeHom):
    """Factor f: A -> S as g o phi through a Boolean B with ker(phi) = ker(f).

    Returns ``(B, phi, g)``.
    """
    require_distributive(f.target)
    Q, pi, fprime = factor_hom(f)
    mode = "meet_irreducible" if Q.is_lattice else "powerset"
    B, j = embed_boolean(Q, mode)
    g = extend_hom(B, {j(q): fprime(q) for q in Q}, f.target)
    return B, j.compose(pi), g


def _relabel(B: FiniteSemilattice) -> FiniteSemilattice:
    n = len(B).bit_length() - 1
    return boolean_lattice(atom_names(n))


def synth_boolean_tower(S: FiniteSemilattice, depth: int, variant: str = "plain"):
    """A Boolean sequential system with a cone into S, ``depth`` stages long.

    Stage 0 is 2^J with J the join-irreducibles of S and the leg sending atom
    i to the i-th join-irreducible; every further stage is obtained by
    triangle-factoring the previous leg.  Atoms of every stage are renamed
    a, b, c, ...

    ``variant`` is ``plain``, ``zero`` (0-preserving maps) or ``zero_one``
    (0- and 1-preserving maps).  For finite S the construction already
    preserves both bounds; the variant adds the precondition and checks it.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    require_distributive(S)
    if S.bottom is None:
        raise ValueError("S has no least element")
    J = join_irreducibles(S)
    B0 = boolean_lattice(atom_names(len(J)))
    leg = SemilatticeHom(B0, S, [S.join_all(J[i] for i in range(len(J)) if m >> i & 1)
                                 for m in range(len(B0))])
    stages, transitions, legs = [B0], [], [leg]
    for _ in range(depth - 1):
        B, phi, g = triangle_factor(leg)
        B = _relabel(B)
        phi = SemilatticeHom(stages[-1], B, phi.map)
        leg = SemilatticeHom(B, S, g.map)
        stages.append(B)
        transitions.append(phi)
        legs.append(leg)
    checks = [] if variant == "plain" else transitions + legs
    for h in checks:
        if not h.preserves_zero():
            raise AssertionError("tower map does not preserve 0")
        if variant == "zero_one" and not h.preserves_one():
            raise AssertionError("tower map does not preserve 1")
    return SequentialSystem(stages, transitions), Cone(S, legs)


@dataclass
class ConeDefect:
    condition: str          # compatibility | surjectivity | stabilization
    stage: int
    witness: tuple
    message: str


@dataclass
class ConeReport:
    """Outcome of :func:`verify_cone` over a finite truncation.

    ``merges`` lists ``(stage, x, y, offset)``: leg ``stage`` identifies x and
    y and the composite transition ``offset`` steps later merges them.
    Pairs identified by the last checked leg cannot be followed further and
    are counted in ``unchecked_pairs``.
    """

    depth: int
    defect: ConeDefect | None = None
    stabilization_offset: int = 0
    merges: list = field(default_factory=list)
    unchecked_pairs: int = 0

    @property
    def ok(self) -> bool:
        return self.defect is None

    def __bool__(self):
        return self.ok


def verify_cone(system: SequentialSystem, cone: Cone, depth: int | None = None) -> ConeReport:
    """Certify, up to ``depth`` stages, that the cone looks like a direct limit.

    Checks (a) leg_{i+1} o transition_i = leg_i, (b) the last leg is onto,
    (c) each pair identified by leg_i is merged by some later composite
    transition within the depth bound.  The first failure is reported.
    """
    if depth is None:
        depth = len(system)
    if len(cone.legs) != len(system) or not 1 <= depth <= len(system):
        raise ValueError("system, cone and depth do not match")
    for i, leg in enumerate(cone.legs):
        if leg.source != system.stages[i]:
            raise ValueError(f"leg {i} does not start at stage {i}")
    report = ConeReport(depth)
    legs = cone.legs
    for i in range(depth - 1):
        t = system.transitions[i]
        for x in system.stages[i]:
            if legs[i + 1](t(x)) != legs[i](x):
                report.defect = ConeDefect(
                    "compatibility", i, (x,),
                    f"leg {i + 1} o transition {i} differs from leg {i} at "
                    f"{system.stages[i].labels[x]}")
                return report
    last = legs[depth - 1]
    if not last.is_surjective():
        missing = next(s for s in cone.apex if s not in set(last.map))
        report.defect = ConeDefect("surjectivity", depth - 1, (missing,),
                                   f"{cone.apex.labels[missing]} is not in the image of leg {depth - 1}")
        return report
    for i in range(depth):
        for x, y in legs[i].kernel().pairs():
            if i == depth - 1:
                report.unchecked_pairs += 1
                continue
            for k in range(1, depth - i):
                m = system.composite(i, i + k)
                if m[x] == m[y]:
                    report.merges.append((i, x, y, k))
                    report.stabilization_offset = max(report.stabilization_offset, k)
                    break
            else:
                lab = system.stages[i].labels
                report.defect = ConeDefect(
                    "stabilization", i, (x, y),
                    f"leg {i} identifies {lab[x]} and {lab[y]} but no transition "
                    f"within depth {depth} merges them")
                return report
    return report
