import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from semirep.enumeration import commutative_monoids
from semirep.monoid import (FiniteCommutativeMonoid, alg_leq, idc, ideals, nabla,
                            property_report, propto, riesz_counterexample,
                            simplicial_nabla_map, strong_rip_witness)
from semirep.semilattice import (AxiomError, boolean_lattice, chain, is_distributive,
                                 is_isomorphic)
from semirep.serialization import load

# {0, u, t}: u + u = t, t absorbing
UT = FiniteCommutativeMonoid([[0, 1, 2], [1, 2, 2], [2, 2, 2]], 0, ["0", "u", "t"])
Z2 = FiniteCommutativeMonoid([[0, 1], [1, 0]], 0, ["0", "g"])


def small_monoids(limit):
    return [M for n in range(1, limit + 1) for M in commutative_monoids(n)]


def brute_monoid_count(n):
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    count = 0
    for values in product(range(n), repeat=len(cells)):
        t = [[0] * n for _ in range(n)]
        for x in range(n):
            t[0][x] = t[x][0] = x
        for (i, j), v in zip(cells, values):
            t[i][j] = t[j][i] = v
        if all(t[t[a][b]][c] == t[a][t[b][c]] for a, b, c in product(range(n), repeat=3)):
            count += 1
    return count


def test_monoid_enumeration_matches_brute_force():
    for n in range(1, 5):
        assert sum(1 for _ in commutative_monoids(n)) == brute_monoid_count(n)


def test_table_validation():
    with pytest.raises(AxiomError) as e:
        FiniteCommutativeMonoid([[0, 1], [0, 1]])
    assert e.value.axiom in ("identity", "commutativity")
    with pytest.raises(AxiomError) as e:
        FiniteCommutativeMonoid([[0, 1, 2], [1, 2, 0], [2, 0, 2]])
    assert e.value.axiom == "associativity"


def test_propto_examples():
    assert propto(UT, 2, 1)
    assert all(propto(UT, 0, x) for x in UT)
    assert propto(Z2, 1, 0)
    assert not propto(UT, 1, 0)


def naive_propto(M, x, y, bound=12):
    # x <= n*y for some 1 <= n <= bound, with a generous bound
    return any(alg_leq(M, x, M.multiple(n, y)) for n in range(1, bound + 1))


def test_propto_bound_is_enough():
    for M in small_monoids(4):
        for x in M:
            for y in M:
                assert propto(M, x, y) == naive_propto(M, x, y)


def test_nabla_examples():
    N, proj = nabla(UT)
    assert N.labels == ("[0]", "[u,t]") and proj == (0, 1, 1)
    assert is_isomorphic(N, chain(2)) is not None
    N, proj = nabla(Z2)
    assert len(N) == 1
    B = boolean_lattice(2)
    N, proj = nabla(FiniteCommutativeMonoid.from_semilattice(B))
    assert is_isomorphic(N, B) is not None and sorted(proj) == [0, 1, 2, 3]


def test_nabla_projection_properties():
    for M in small_monoids(5):
        N, proj = nabla(M)
        for x in M:
            for y in M:
                assert proj[M.add[x][y]] == N.join[proj[x]][proj[y]]
                same = propto(M, x, y) and propto(M, y, x)
                assert same == (proj[x] == proj[y])


def test_property_report_examples(data_path):
    r = property_report(UT)
    # u + u = u + t has no 2x2 refinement: u only splits as 0 + u
    assert not r.refinement and r.witnesses["refinement"] == (1, 1, 1, 2)
    assert r.riesz and r.conical and not r.cancellative
    x, y, z = r.witnesses["cancellative"]
    assert x != y and UT.add[x][z] == UT.add[y][z]
    m3 = FiniteCommutativeMonoid.from_semilattice(load(data_path("m3join.json")))
    assert not property_report(m3).refinement
    r = property_report(Z2)
    assert not r.conical and r.witnesses["conical"] == (1, 1)


def refinement_oracle(M):
    add = M.add
    return all(any(add[c00][c01] == a0 and add[c10][c11] == a1
                   and add[c00][c10] == b0 and add[c01][c11] == b1
                   for c00, c01, c10, c11 in product(M, repeat=4))
               for a0, a1, b0, b1 in product(M, repeat=4) if add[a0][a1] == add[b0][b1])


def test_refinement_against_naive_scan():
    for M in small_monoids(3):
        assert property_report(M).refinement == refinement_oracle(M)


def test_riesz_implies_distributive_nabla():
    for M in small_monoids(5):
        if riesz_counterexample(M) is None:
            assert is_distributive(nabla(M)[0])


def test_idc_examples():
    L, theta = idc(UT)
    assert [sorted(I) for I in L.tags] == [[0], [0, 1, 2]]
    assert theta.is_injective() and theta.is_surjective()
    L, theta = idc(FiniteCommutativeMonoid.from_semilattice(boolean_lattice(2)))
    assert len(L) == 4 and is_isomorphic(L, boolean_lattice(2)) is not None
    L, theta = idc(FiniteCommutativeMonoid([[0]]))
    assert len(L) == 1


def test_ideals_definition():
    for M in small_monoids(3):
        for mask in range(1, 1 << len(M)):
            I = frozenset(x for x in M if mask >> x & 1)
            good = all((M.add[x][y] in I) == (x in I and y in I) for x in M for y in M)
            assert good == (I in ideals(M))


def test_idc_iso_on_riesz_monoids():
    for M in small_monoids(4):
        if riesz_counterexample(M) is None:
            L, theta = idc(M)
            assert theta.is_injective() and theta.is_surjective()
            assert is_distributive(L)


def check_rip(n, a, b, c, d, out):
    u, v, w, z = out
    assert all(t >= 0 for t in u + v + w + z)
    for i in range(len(u)):
        assert a[i] == u[i] + v[i]
        assert b[i] == n * w[i] + z[i]
        assert c[i] == u[i] + w[i]
        assert d[i] == n * v[i] + z[i]


def test_rip_examples():
    assert strong_rip_witness(2, 3, 1, 2, 3) == ((2,), (1,), (0,), (1,))
    assert strong_rip_witness(1, 1, 0, 1, 0) == ((1,), (0,), (0,), (0,))
    assert strong_rip_witness(2, (1, 0), (0, 2), (0, 1), (2, 0)) == \
        ((0, 0), (1, 0), (0, 1), (0, 0))


def test_rip_rejects_invalid():
    with pytest.raises(ValueError):
        strong_rip_witness(2, 1, 1, 1, 2)
    with pytest.raises(ValueError):
        strong_rip_witness(0, 1, 1, 1, 1)
    with pytest.raises(ValueError):
        strong_rip_witness(1, (1, 0), (0,), (1,), (0,))


def random_rip_instance(rng, k, n, bound=20):
    # choose u, v, w, z first so n*a + b = n*c + d holds
    u, v, w, z = ([rng.randint(0, bound) for _ in range(k)] for _ in range(4))
    a = [x + y for x, y in zip(u, v)]
    b = [n * x + y for x, y in zip(w, z)]
    c = [x + y for x, y in zip(u, w)]
    d = [n * x + y for x, y in zip(v, z)]
    return a, b, c, d


def test_rip_random():
    rng = random.Random(7)
    for _ in range(1000):
        k, n = rng.randint(1, 4), rng.randint(1, 5)
        a, b, c, d = random_rip_instance(rng, k, n)
        check_rip(n, a, b, c, d, strong_rip_witness(n, a, b, c, d))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 5), st.lists(st.tuples(*[st.integers(0, 30)] * 3), min_size=1, max_size=4))
def test_rip_any_valid_equation(n, rows):
    # a, b, c free; d = n*a + b - n*c when nonnegative
    rows = [(a, b, c) for a, b, c in rows if n * a + b - n * c >= 0]
    if not rows:
        return
    a, b, c = map(list, zip(*rows))
    d = [n * x + y - n * z for x, y, z in zip(a, b, c)]
    check_rip(n, a, b, c, d, strong_rip_witness(n, a, b, c, d))


def test_simplicial_nabla_examples():
    r = simplicial_nabla_map([[1, 1], [0, 1]])
    assert r(1) == 3 and r(2) == 2
    assert simplicial_nabla_map([[1, 0], [0, 1]]).map == (0, 1, 2, 3)
    assert set(simplicial_nabla_map([[0, 0], [0, 0]]).map) == {0}


def matmul(A, B, cols):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(cols)]
            for i in range(len(A))]


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_simplicial_nabla_functorial(data):
    k, l, m = (data.draw(st.integers(0, 4)) for _ in range(3))
    mat = lambda r, c: data.draw(st.lists(st.lists(st.integers(0, 3), min_size=c, max_size=c),
                                          min_size=r, max_size=r))
    A, B = mat(k, l), mat(l, m)
    f = simplicial_nabla_map(A, l)
    g = simplicial_nabla_map(B, m)
    assert simplicial_nabla_map(matmul(A, B, m), m).map == g.compose(f).map
