from itertools import product

from semirep.enumeration import (commutative_monoids, homomorphisms, join_closed_subsets,
                                 lattices_upto, posets, semilattices)
from semirep.semilattice import boolean_lattice


def test_known_counts():
    # unlabeled lattices, posets and semilattices of small size
    assert [len(semilattices(n, with_zero=True)) for n in range(1, 9)] == [1, 1, 1, 2, 5, 15, 53, 222]
    assert [len(posets(n)) for n in range(6)] == [1, 1, 2, 5, 16, 63]
    assert [len(semilattices(n)) for n in range(1, 7)] == [1, 1, 2, 5, 15, 53]
    assert len(lattices_upto(5)) == 1 + 1 + 1 + 2 + 5


def test_homomorphisms_match_brute_force():
    corpus = [S for n in range(1, 5) for S in semilattices(n)]
    for A in corpus:
        for T in corpus:
            brute = [m for m in product(range(len(T)), repeat=len(A))
                     if all(m[A.join[x][y]] == T.join[m[x]][m[y]] for x in A for y in A)]
            assert sorted(brute) == sorted(h.map for h in homomorphisms(A, T))
            zero = [m for m in brute if A.bottom is not None and m[A.bottom] == T.bottom]
            assert len(zero) == sum(1 for _ in homomorphisms(A, T, zero=True))


def test_join_closed_subsets():
    B = boolean_lattice(2)
    subs = join_closed_subsets(B)
    assert (1, 2) not in subs and (1, 2, 3) in subs
    assert len(subs) == sum(
        1 for mask in range(1, 16)
        if all(mask >> B.join[x][y] & 1 for x in range(4) for y in range(4)
               if mask >> x & 1 and mask >> y & 1))


def test_monoid_tables_are_monoids():
    for M in commutative_monoids(3):
        M._check()
