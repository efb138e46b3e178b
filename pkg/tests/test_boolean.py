import pytest

from semirep.boolean import (Cone, SequentialSystem, embed_boolean, extend_hom,
                             synth_boolean_tower, triangle_factor, verify_cone)
from semirep.enumeration import homomorphisms, join_closed_subsets, semilattices
from semirep.order import meet_irreducibles
from semirep.semilattice import (NotDistributiveError, SemilatticeHom, boolean_lattice,
                                 boolean_structure, chain, identity, is_distributive)
from semirep.serialization import load


def distributive_corpus(limit):
    return [S for n in range(1, limit + 1) for S in semilattices(n) if is_distributive(S)]


def extension_exists(B, S, f):
    return any(all(g(x) == v for x, v in f.items()) for g in homomorphisms(B, S))


def test_embed_chain_meet_irreducible():
    B, j = embed_boolean(chain(3), "meet_irreducible")
    assert len(B) == 4
    assert [B.labels[m] for m in j.map] == ["{}", "{0}", "{0,1}"]


def test_embed_boolean_square_is_iso():
    S = boolean_lattice(["a", "b"])
    B, j = embed_boolean(S, "meet_irreducible")
    assert j.is_injective() and j.is_surjective()
    # index set is the coatoms; {a} lies outside the coatom {b} only
    assert B.labels[1] == "{{b}}" and B.labels[2] == "{{a}}"
    assert list(j.map) == [0, 1, 2, 3]


def test_embed_one_element_powerset():
    B, j = embed_boolean(chain(1), "powerset")
    assert len(B) == 2 and j.map == (0,)


def test_embedding_formula_and_injectivity():
    for n in range(1, 7):
        for S in semilattices(n):
            modes = ["powerset"] + (["meet_irreducible"] if S.is_lattice and is_distributive(S) else [])
            for mode in modes:
                B, j = embed_boolean(S, mode)
                assert j.is_injective()
                X = list(S) if mode == "powerset" else list(meet_irreducibles(S))
                atoms = boolean_structure(B)
                for s in S:
                    image = {B.labels[a][1:-1] for a in atoms if B.leq(a, j(s))}
                    assert image == {S.labels[x] for x in X if not S.leq(s, x)}


def test_extend_examples():
    B, C = boolean_lattice(["a", "b"]), chain(3)
    g = extend_hom(B, {0: 0, 3: 2}, C)
    assert g(1) == 0 and g(2) == 2
    f = {x: v for x, v in zip(B, [0, 1, 2, 2])}
    assert list(extend_hom(B, f, C).map) == [0, 1, 2, 2]
    assert list(extend_hom(B, {0: 0}, C).map) == [0, 0, 0, 0]


def test_extend_rejects_non_distributive_target(data_path):
    M3 = load(data_path("m3join.json"))
    with pytest.raises(NotDistributiveError):
        extend_hom(boolean_lattice(1), {0: 0}, M3)


def test_extend_rejects_non_join_closed_domain():
    with pytest.raises(ValueError):
        extend_hom(boolean_lattice(2), {1: 0, 2: 1}, chain(3))


def test_extend_against_exhaustive_oracle():
    corpus = distributive_corpus(6)
    for k in range(3):
        B = boolean_lattice(k)
        for A in join_closed_subsets(B):
            sub = B.restrict(A)
            for S in corpus:
                for h in homomorphisms(sub, S):
                    f = {A[i]: h(i) for i in range(len(A))}
                    assert extension_exists(B, S, f)
                    g = extend_hom(B, f, S)
                    assert all(g(x) == v for x, v in f.items())


def test_triangle_examples():
    B2, C = boolean_lattice(["a", "b"]), chain(3)
    f = SemilatticeHom(B2, C, [0, 1, 2, 2])
    B, phi, g = triangle_factor(f)
    assert len(B) == 4
    assert phi.kernel().blocks == ((0,), (1,), (2, 3))
    B, phi, g = triangle_factor(identity(C))
    assert phi.is_injective()
    B, phi, g = triangle_factor(SemilatticeHom(B2, C, [0, 0, 0, 0]))
    assert len(B) == 1 and len(set(phi.map)) == 1


def test_triangle_postconditions():
    corpus = distributive_corpus(5)
    sources = [S for n in range(1, 5) for S in semilattices(n)]
    for A in sources:
        for S in corpus:
            for f in homomorphisms(A, S):
                B, phi, g = triangle_factor(f)
                assert boolean_structure(B) is not None
                assert g.compose(phi).map == f.map
                assert phi.kernel() == f.kernel()


def test_three_chain_tower():
    system, cone = synth_boolean_tower(chain(3), 3, "zero_one")
    assert [len(B) for B in system.stages] == [4, 4, 4]
    for t in system.transitions:
        # r(a) = a, r(b) = a v b
        assert t(1) == 1 and t(2) == 3
    for leg in cone.legs:
        assert leg(1) == 1 and leg(2) == 2
    rep = verify_cone(system, cone)
    assert rep.ok and rep.stabilization_offset == 1
    assert (0, 2, 3, 1) in rep.merges


def test_boolean_target_gives_identity_tower():
    S = boolean_lattice(["a", "b"])
    system, cone = synth_boolean_tower(S, 4)
    assert all(t.map == (0, 1, 2, 3) for t in system.transitions)
    assert verify_cone(system, cone).ok


def test_one_element_tower():
    system, cone = synth_boolean_tower(chain(1), 3)
    assert [len(B) for B in system.stages] == [1, 1, 1]
    assert verify_cone(system, cone).ok


def test_identity_transitions_never_merge():
    system, cone = synth_boolean_tower(chain(3), 3)
    stuck = SequentialSystem(system.stages, [identity(system.stages[0])] * 2)
    rep = verify_cone(stuck, cone)
    assert rep.defect.condition == "stabilization"
    assert rep.defect.witness == (2, 3)


def test_incompatible_cone():
    system, cone = synth_boolean_tower(chain(3), 3)
    B, S = system.stages[1], cone.apex
    legs = list(cone.legs)
    legs[1] = SemilatticeHom(B, S, [0, 1, 1, 1])
    rep = verify_cone(system, Cone(S, legs))
    assert rep.defect.condition == "compatibility" and rep.defect.witness == (2,)


def test_non_surjective_last_leg():
    B = boolean_lattice(1)
    S = chain(3)
    leg = SemilatticeHom(B, S, [0, 1])
    rep = verify_cone(SequentialSystem([B], []), Cone(S, [leg]))
    assert rep.defect.condition == "surjectivity" and rep.defect.witness == (2,)


def test_towers_certify_with_offset_one():
    for S in distributive_corpus(6):
        for variant in ("plain", "zero", "zero_one"):
            system, cone = synth_boolean_tower(S, 3, variant)
            rep = verify_cone(system, cone)
            assert rep.ok
            assert all(k == 1 for *_, k in rep.merges)
            maps = list(system.transitions) + list(cone.legs)
            if variant != "plain":
                assert all(h.preserves_zero() for h in maps)
            if variant == "zero_one":
                assert all(h.preserves_one() for h in maps)


def test_tower_rejects_bad_input(data_path):
    with pytest.raises(NotDistributiveError):
        synth_boolean_tower(load(data_path("m3join.json")), 2)
    with pytest.raises(ValueError):
        synth_boolean_tower(chain(3), 0)
    with pytest.raises(ValueError):
        synth_boolean_tower(chain(3), 2, "both")
