"""Bratteli towers of matricial algebras built from Boolean towers.

A matricial algebra M_t(1) x ... x M_t(k) is recorded by its block sizes,
a block-diagonal embedding by its multiplicity matrix s (s[i][j] copies of
block i inside block j).  On the semilattice side the stage is 2^k and the
embedding induces the support map of s.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .boolean import SequentialSystem
from .monoid import simplicial_nabla_map
from .semilattice import (FiniteSemilattice, SemilatticeHom, boolean_iso,
                          boolean_lattice, boolean_structure)

MODES = ("matricial", "af-cstar")


@dataclass(frozen=True)
class MatricialAlgebraShape:
    block_sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "block_sizes", tuple(int(t) for t in self.block_sizes))
        if any(t < 1 for t in self.block_sizes):
            raise ValueError("block sizes must be positive")

    def __len__(self):
        return len(self.block_sizes)


@dataclass(frozen=True)
class MultiplicityMatrix:
    entries: tuple[tuple[int, ...], ...]
    cols: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(int(v) for v in r) for r in self.entries))
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged multiplicity matrix")
        if any(v < 0 for r in self.entries for v in r):
            raise ValueError("multiplicities must be nonnegative")

    @property
    def rows(self) -> int:
        return len(self.entries)

    def column_load(self, sizes: Sequence[int]) -> list[int]:
        """sum_i s_ij * t(i) for each target block j."""
        return [sum(self.entries[i][j] * sizes[i] for i in range(self.rows)) for j in range(self.cols)]

    def fits(self, source: MatricialAlgebraShape, target: MatricialAlgebraShape,
             unital: bool = False) -> bool:
        if self.rows != len(source) or self.cols != len(target):
            return False
        load = self.column_load(source.block_sizes)
        if unital:
            return load == list(target.block_sizes)
        return all(a <= b for a, b in zip(load, target.block_sizes))


@dataclass(frozen=True)
class BratteliTower:
    levels: tuple[MatricialAlgebraShape, ...]
    maps: tuple[MultiplicityMatrix, ...]
    unital: bool = False
    mode: str = "matricial"

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "maps", tuple(self.maps))
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if len(self.maps) != max(len(self.levels) - 1, 0):
            raise ValueError("need one multiplicity matrix between consecutive levels")
        for i, s in enumerate(self.maps):
            if not s.fits(self.levels[i], self.levels[i + 1], self.unital):
                raise ValueError(f"multiplicity matrix {i} is not a valid "
                                 f"{'unital ' if self.unital else ''}embedding")


def _atoms(stage: FiniteSemilattice, i: int) -> tuple[int, ...]:
    atoms = boolean_structure(stage)
    if atoms is None:
        raise ValueError(f"stage {i} is not Boolean")
    return atoms


def synth_tower(system: SequentialSystem, depth: int, unital: bool = False,
                mode: str = "matricial") -> BratteliTower:
    """Bratteli tower realizing the first ``depth`` stages of a Boolean system.

    Level 1 is K^n1 (all blocks of size 1).  s_ij = 1 iff atom j of the next
    stage lies below the image of atom i.  Block sizes are the column loads
    sum_i s_ij t(i); in the non-unital case an empty column gets size 1.
    """
    if not 0 <= depth <= len(system):
        raise ValueError(f"system has {len(system)} stages, cannot emit depth {depth}")
    if depth == 0:
        return BratteliTower((), (), unital, mode)
    atoms = [_atoms(system.stages[i], i) for i in range(depth)]
    sizes = [1] * len(atoms[0])
    levels = [MatricialAlgebraShape(sizes)]
    maps = []
    for i in range(depth - 1):
        f = system.transitions[i]
        T = f.target
        if unital and not f.preserves_one():
            raise ValueError(f"transition {i} does not preserve 1, a unital tower is impossible")
        src, dst = atoms[i], atoms[i + 1]
        s = MultiplicityMatrix(
            tuple(tuple(1 if T.leq(b, f(a)) else 0 for b in dst) for a in src), len(dst))
        load = s.column_load(sizes)
        if unital:
            assert all(load), "1-preserving map left a block empty"
            sizes = load
        else:
            sizes = [max(v, 1) for v in load]
        maps.append(s)
        levels.append(MatricialAlgebraShape(sizes))
    return BratteliTower(tuple(levels), tuple(maps), unital, mode)


def nabla_v(tower: BratteliTower, i: int) -> SemilatticeHom:
    """The map 2^k_i -> 2^k_{i+1} induced on ideal semilattices by level i."""
    if not 0 <= i < len(tower.maps):
        raise IndexError(f"no map at level {i}")
    s = tower.maps[i]
    return simplicial_nabla_map(s.entries, s.cols)


@dataclass
class SquaresReport:
    levels: int
    defect: tuple | None = None     # (level, atom index, message)

    @property
    def ok(self) -> bool:
        return self.defect is None

    def __bool__(self):
        return self.ok


def verify_squares(tower: BratteliTower, system: SequentialSystem) -> SquaresReport:
    """Check g_{i+1} o nabla_v(i) = f_i o g_i at every level.

    g_i identifies 2^k_i (blocks) with stage i by sending block j to atom j.
    """
    n = len(tower.levels)
    if n > len(system):
        raise ValueError("tower is deeper than the Boolean system")
    g = []
    for i in range(n):
        atoms = _atoms(system.stages[i], i)
        if len(atoms) != len(tower.levels[i]):
            raise ValueError(f"level {i} has {len(tower.levels[i])} blocks but the stage "
                             f"has {len(atoms)} atoms")
        g.append(boolean_iso(system.stages[i], atoms))
    for i in range(n - 1):
        nv = nabla_v(tower, i)
        f = system.transitions[i]
        for k in range(len(tower.levels[i])):
            m = 1 << k
            if g[i + 1](nv(m)) != f(g[i](m)):
                return SquaresReport(n, (i, k, f"square at level {i} fails on block {k}"))
    return SquaresReport(n)


def idc_stage(shape: MatricialAlgebraShape, names: Sequence[str] | None = None):
    """Finitely generated ideals of a matricial algebra: 2^k over the blocks.

    An ideal of a finite product of simple blocks is the product of some of
    them, so ideals correspond to subsets of blocks.  Returns the ideal
    semilattice and its identification with nabla V(R) = 2^k (sending an
    ideal to the supports of the idempotent classes it contains).
    """
    k = len(shape)
    names = list(names) if names is not None else [f"M{t}#{j}" for j, t in enumerate(shape.block_sizes)]
    ideals = boolean_lattice(names)
    nv = boolean_lattice(k)
    return ideals, SemilatticeHom(ideals, nv, range(len(ideals)))
