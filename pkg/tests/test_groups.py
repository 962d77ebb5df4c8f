import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import corpus
from fmeas.groups import (
    CapExceeded,
    FiniteGroup,
    GroupError,
    GroupHom,
    Subgroup,
    all_subgroups,
    build_group,
    compose,
    cyclic,
    dihedral,
    direct_product,
    epimorphisms,
    generated_subgroup,
    image_classes,
    isomorphic,
    quotient,
    semidirect_product,
    symmetric,
)

ALL_NAMES = sorted(corpus.BUILDERS)
SMALL_NAMES = sorted(name for name, G in corpus.classes_upto(16))

# a loop with identity and two-sided inverses that is not associative:
# (1*2)*2 = 2 but 1*(2*2) = 5
NONASSOC_LOOP = [
    [0, 1, 2, 3, 4, 5],
    [1, 2, 0, 4, 5, 3],
    [2, 0, 4, 5, 3, 1],
    [3, 4, 5, 0, 1, 2],
    [4, 5, 3, 1, 2, 0],
    [5, 3, 1, 2, 0, 4],
]


# -- construction --------------------------------------------------------


def test_build_group_z2_table():
    G = build_group({"table": [[0, 1], [1, 0]]})
    assert G.order == 2
    assert G.mul(1, 1) == 0
    assert G.inv(1) == 1


def test_build_group_from_permutations_gives_s3():
    G = build_group({"permutations": [[1, 0, 2], [1, 2, 0]]})
    assert G.order == 6
    assert isomorphic(G, symmetric(3))


def test_build_group_rejects_nonassociative_3x3_table():
    # contains the non-associative triple (1, 2, 2)
    with pytest.raises(GroupError):
        build_group({"table": [[0, 1, 2], [1, 2, 0], [2, 0, 0]]})


def test_associativity_check_catches_a_genuine_loop():
    with pytest.raises(GroupError, match="non-associative"):
        build_group({"table": NONASSOC_LOOP})


def test_build_group_rejects_malformed_permutations():
    with pytest.raises(GroupError):
        build_group({"permutations": [[0, 1, 1]]})
    with pytest.raises(GroupError):
        build_group({"permutations": []})
    with pytest.raises(GroupError):
        build_group({"permutations": [[1, 0], [0, 1, 2]]})
    with pytest.raises(GroupError):
        build_group({"permutations": [list(range(17))]})
    with pytest.raises(GroupError):
        build_group({})
    with pytest.raises(GroupError):
        build_group({"table": [[0]], "permutations": [[0]]})


def test_build_group_respects_closure_cap():
    twelve_cycle = [list(range(1, 12)) + [0]]
    with pytest.raises(CapExceeded):
        build_group({"permutations": twelve_cycle}, closure_cap=10)


def test_identity_must_be_index_zero():
    # C2 written with the identity at index 1
    with pytest.raises(GroupError):
        FiniteGroup([[1, 0], [0, 1]])


def test_table_rows_must_be_permutations():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])


def test_sampled_associativity_path_accepts_large_cyclic_group():
    assert cyclic(70).order == 70


# -- subgroups -----------------------------------------------------------


def test_generated_subgroup_of_square_in_z4():
    H = generated_subgroup(cyclic(4), [2])
    assert H.elements == (0, 2)
    assert H.index == 2


def test_generated_subgroup_of_transposition_in_s3():
    G = symmetric(3)
    transpositions = [x for x in range(6) if G.element_order(x) == 2]
    H = generated_subgroup(G, [transpositions[0]])
    assert H.order == 2


def test_generated_subgroup_empty_generators():
    G = corpus.group("D4")
    assert generated_subgroup(G, []).elements == (0,)


def test_generated_subgroup_rejects_out_of_range():
    with pytest.raises(GroupError):
        generated_subgroup(cyclic(4), [4])


def test_subgroup_rejects_elements_that_are_not_the_closure():
    with pytest.raises(GroupError):
        Subgroup(cyclic(4), generators=[1], elements=[0, 1])


def test_all_subgroups_of_z4():
    subs = all_subgroups(cyclic(4))
    assert [H.order for H in subs] == [1, 2, 4]


def test_all_subgroups_of_klein_four():
    subs = all_subgroups(corpus.group("C2xC2"))
    assert len(subs) == 5
    assert [H.order for H in subs] == [1, 2, 2, 2, 4]


def test_all_subgroups_of_trivial_group():
    assert len(all_subgroups(cyclic(1))) == 1


def test_all_subgroups_canonical_order():
    subs = all_subgroups(corpus.group("D4"))
    keys = [(H.order, H.elements) for H in subs]
    assert keys == sorted(keys)
    assert len(subs) == 10
    assert len(set(H.elements for H in subs)) == 10


def test_all_subgroups_respects_order_cap():
    with pytest.raises(CapExceeded):
        all_subgroups(cyclic(70))


@pytest.mark.parametrize("name", ["C12", "D4", "A4", "Q8", "C2xC2xC2"])
def test_subgroups_closed_under_intersection_and_conjugation(name):
    G = corpus.group(name)
    subs = all_subgroups(G)
    masks = {H.mask for H in subs}
    for H in subs:
        for K in subs:
            assert (H.mask & K.mask) in masks
        for g in range(G.order):
            assert H.conjugate_by(g).mask in masks


@settings(deadline=None)
@given(st.data())
def test_generated_subgroup_is_closed(data):
    name = data.draw(st.sampled_from(SMALL_NAMES))
    G = corpus.group(name)
    gens = data.draw(st.lists(st.integers(0, G.order - 1), max_size=3))
    H = generated_subgroup(G, gens)
    assert 0 in H
    for x in H:
        assert G.inv(x) in H
        for y in H:
            assert G.mul(x, y) in H


# -- quotients -----------------------------------------------------------


def test_quotient_z4_by_square():
    G = cyclic(4)
    Q, pi = quotient(G, generated_subgroup(G, [2]))
    assert Q.order == 2
    assert pi(1) == 1
    assert pi(2) == 0
    assert pi.is_surjective


def test_quotient_s3_by_a3():
    G = symmetric(3)
    a3 = [x for x in range(6) if G.element_order(x) in (1, 3)]
    Q, pi = quotient(G, Subgroup(G, a3))
    assert Q.order == 2


def test_quotient_by_whole_group_is_trivial():
    G = corpus.group("D4")
    Q, _ = quotient(G, Subgroup(G, range(G.order)))
    assert Q.order == 1


def test_quotient_rejects_non_normal_subgroup():
    G = symmetric(3)
    t = next(x for x in range(6) if G.element_order(x) == 2)
    with pytest.raises(GroupError, match="normal"):
        quotient(G, generated_subgroup(G, [t]))


@pytest.mark.parametrize("name", ["C12", "D4", "S4"])
def test_projection_after_section_is_identity(name):
    G = corpus.group(name)
    for N in all_subgroups(G):
        if not N.is_normal():
            continue
        Q, pi = quotient(G, N)
        first: dict[int, int] = {}
        last: dict[int, int] = {}
        for g in range(G.order):
            first.setdefault(pi(g), g)
            last[pi(g)] = g
        for q in range(Q.order):
            assert pi(first[q]) == q
            assert pi(last[q]) == q


# -- homomorphisms -------------------------------------------------------


def test_hom_verification_rejects_non_homomorphism():
    with pytest.raises(GroupError, match="homomorphism"):
        GroupHom(cyclic(4), cyclic(2), (0, 1, 1, 0))


def test_hom_surjectivity_is_recomputed():
    phi = GroupHom(cyclic(4), cyclic(2), (0, 1, 0, 1))
    assert phi.is_surjective
    psi = GroupHom(cyclic(2), cyclic(4), (0, 2))
    assert not psi.is_surjective


def test_kernel_and_image():
    phi = GroupHom(cyclic(4), cyclic(2), (0, 1, 0, 1))
    assert phi.kernel().elements == (0, 2)
    assert phi.image_subgroup().order == 2


def test_compose_homs():
    pi1 = GroupHom(cyclic(8), cyclic(4), tuple(x % 4 for x in range(8)))
    pi2 = GroupHom(cyclic(4), cyclic(2), tuple(x % 2 for x in range(4)))
    both = compose(pi2, pi1)
    assert both.image_of == tuple(x % 2 for x in range(8))


def test_epimorphisms_counts():
    assert len(epimorphisms(cyclic(4), cyclic(2))) == 1
    assert len(epimorphisms(symmetric(3), cyclic(2))) == 1
    assert len(epimorphisms(corpus.group("C2xC2"), cyclic(2))) == 3
    assert epimorphisms(cyclic(2), cyclic(4)) == []
    assert epimorphisms(cyclic(4), cyclic(3)) == []
    # automorphism groups of C6 and S3
    assert len(epimorphisms(cyclic(6), cyclic(6))) == 2
    assert len(epimorphisms(symmetric(3), symmetric(3))) == 6


def test_epimorphisms_are_deterministic():
    a = [phi.image_of for phi in epimorphisms(corpus.group("D4"), cyclic(2))]
    b = [phi.image_of for phi in epimorphisms(corpus.group("D4"), cyclic(2))]
    assert a == b
    assert len(a) == 3


# -- isomorphism ---------------------------------------------------------


def test_isomorphic_z4_vs_klein_four():
    assert not isomorphic(cyclic(4), corpus.group("C2xC2"))


def test_isomorphic_s3_vs_its_trivial_quotient():
    G = symmetric(3)
    Q, _ = quotient(G, generated_subgroup(G, []))
    assert isomorphic(G, Q)


def test_isomorphic_z6_vs_z2_times_z3():
    assert isomorphic(cyclic(6), direct_product(cyclic(2), cyclic(3)))


def test_isomorphic_separates_groups_with_equal_invariants():
    # same order statistics, center, derived subgroup and class sizes,
    # so the generator-image search has to do the work
    A = corpus.group("C4:C4")
    B = corpus.group("Q8xC2")
    assert A.fingerprint() == B.fingerprint()
    assert not isomorphic(A, B)


def test_isomorphic_respects_order_cap():
    with pytest.raises(CapExceeded):
        isomorphic(cyclic(70), cyclic(70))


def test_isomorphic_is_an_equivalence_relation_on_small_groups():
    """Pairwise tests over order <= 16 classes plus isomorphic aliases."""
    entries = [(name, corpus.group(name)) for name in SMALL_NAMES]
    entries += [
        ("C6", direct_product(cyclic(2), cyclic(3))),
        ("S3", dihedral(3)),
        ("D4", build_group({"permutations": [[1, 2, 3, 0], [3, 2, 1, 0]]})),
        ("C2xC2xC2", quotient(
            corpus.group("C2^4"),
            generated_subgroup(corpus.group("C2^4"), [1]),
        )[0]),
    ]
    n = len(entries)
    matrix = [[isomorphic(entries[i][1], entries[j][1]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            assert matrix[i][j] == (entries[i][0] == entries[j][0])


def test_image_classes_of_z4():
    reps = image_classes(cyclic(4))
    assert [R.order for R in reps] == [1, 2, 4]


def test_image_classes_of_trivial_group():
    assert [R.order for R in image_classes(cyclic(1))] == [1]


def test_image_classes_of_a5():
    """A simple group has only itself and the trivial group as images."""
    A5 = corpus.alternating5()
    assert len(all_subgroups(A5)) == 59
    assert [R.order for R in image_classes(A5)] == [1, 60]


def test_image_classes_of_q8():
    # 1, C2, C2xC2 (inner automorphism quotient), Q8
    reps = image_classes(corpus.group("Q8"))
    assert [R.order for R in reps] == [1, 2, 4, 8]
    assert isomorphic(reps[2], corpus.group("C2xC2"))


# -- corpus sanity -------------------------------------------------------


def test_corpus_orders_and_class_counts():
    seen: dict[int, int] = {}
    for name in ALL_NAMES:
        G = corpus.group(name)
        seen[G.order] = seen.get(G.order, 0) + 1
    assert seen == corpus.CLASS_COUNTS


@pytest.mark.parametrize("order", sorted(corpus.CLASS_COUNTS))
def test_corpus_classes_are_pairwise_nonisomorphic(order):
    members = [G for _, G in corpus.classes_upto(24) if G.order == order]
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            assert not isomorphic(members[i], members[j])


@given(st.sampled_from(ALL_NAMES))
def test_element_orders_divide_group_order(name):
    G = corpus.group(name)
    assert all(G.order % k == 0 for k in G.element_orders())


@given(st.sampled_from(ALL_NAMES))
def test_inverses_invert(name):
    G = corpus.group(name)
    assert all(G.mul(x, G.inv(x)) == 0 for x in range(G.order))


def test_semidirect_product_rejects_non_automorphism_action():
    # x -> x + 1 on C3 does not fix the identity
    shift = [1, 2, 0]
    with pytest.raises(GroupError):
        semidirect_product(cyclic(3), cyclic(2), [[0, 1, 2], shift])
    # wrong number of maps
    with pytest.raises(GroupError):
        semidirect_product(cyclic(3), cyclic(2), [[0, 1, 2]])
    # not a homomorphism into the automorphism group
    with pytest.raises(GroupError):
        semidirect_product(cyclic(3), cyclic(3), [[0, 1, 2], [0, 2, 1], [0, 2, 1]])
