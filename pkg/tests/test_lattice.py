import pytest

import corpus
import setups
from fmeas.frattini import is_frattini_restriction
from fmeas.groups import GroupError, Subgroup, cyclic, generated_subgroup
from fmeas.lattice import fix_field, make_setup, maximal_fields, s_lattice


# -- make_setup ------------------------------------------------------------


def test_setup_with_whole_group_as_constants():
    setup, _, _ = setups.get("Z2-full")
    assert setup.quotient_group.order == 1


def test_setup_klein_mod_first_coordinate():
    setup, _, _ = setups.get("Klein-first")
    assert setup.quotient_group.order == 2
    assert setup.r.image_of == (0, 1, 0, 1)


def test_setup_rejects_lift_that_does_not_generate():
    with pytest.raises(GroupError, match="generate"):
        make_setup(cyclic(4), [2], (2,))


def test_setup_rejects_non_normal_n():
    G = corpus.group("S3")
    t = next(x for x in range(6) if G.element_order(x) == 2)
    with pytest.raises(GroupError, match="normal"):
        make_setup(G, [t], (t,))


def test_setup_rejects_empty_sigma():
    with pytest.raises(GroupError, match="nonempty"):
        make_setup(cyclic(2), [1], ())


# -- s_lattice -------------------------------------------------------------


def test_lattice_z2_trivial_quotient():
    _, _, lat = setups.get("Z2-full")
    assert [H.elements for H in lat.members] == [(0,), (0, 1)]
    assert lat.n_maximal == 1


def test_lattice_klein_three_members():
    _, _, lat = setups.get("Klein-first")
    assert [H.elements for H in lat.members] == [(0, 1), (0, 3), (0, 1, 2, 3)]
    assert lat.n_maximal == 2


def test_lattice_z4_base_only():
    _, _, lat = setups.get("Z4-g")
    assert [H.elements for H in lat.members] == [(0, 1, 2, 3)]
    assert lat.n_maximal == 1


def test_lattice_rejects_disqualified_base():
    setup, _, _ = setups.get("Klein-first")
    with pytest.raises(GroupError, match="base"):
        s_lattice(setup, Subgroup(setup.group, (2,)))


def test_lattice_with_proper_base_subgroup():
    setup, K, lat = setups.get("C4xC2-subK")
    assert K.order == 4
    assert len(lat.members) == 1
    assert lat.members[0] == K
    assert lat.n_maximal == 1


# -- canonical order -------------------------------------------------------


@pytest.mark.parametrize("name", setups.NAMES)
def test_member_order_puts_containments_backwards(name):
    _, _, lat = setups.get(name)
    for i in range(len(lat.members)):
        for j in range(len(lat.members)):
            if lat.leq(i, j):
                # H_j inside H_i, so the field F_i sits below F_j
                assert i >= j or i == j
                assert (
                    lat.members[j].mask & lat.members[i].mask == lat.members[j].mask
                )


@pytest.mark.parametrize("name", setups.NAMES)
def test_member_list_shape(name):
    setup, K, lat = setups.get(name)
    assert lat.members[-1] == K
    assert all(setup.qualifies(H.mask) for H in lat.members)
    qualifying = {H.mask for H in lat.members}
    for i, H in enumerate(lat.members):
        minimal = not any(
            m != H.mask and m & H.mask == m for m in qualifying
        )
        assert minimal == lat.is_maximal(i)
    sizes = [H.order for H in lat.members]
    block1 = sizes[: lat.n_maximal]
    block2 = sizes[lat.n_maximal :]
    assert block1 == sorted(block1)
    assert block2 == sorted(block2)


@pytest.mark.parametrize("name", setups.NAMES)
def test_member_names_are_distinct(name):
    _, _, lat = setups.get(name)
    names = [lat.member_name(i) for i in range(len(lat.members))]
    assert len(set(names)) == len(names)


# -- maximal_fields --------------------------------------------------------


def test_unique_maximal_field_when_quotient_trivial():
    _, _, lat = setups.get("Z2-full")
    tops = maximal_fields(lat)
    assert len(tops) == 1
    assert tops[0].elements == (0,)


def test_klein_has_two_maximal_fields():
    _, _, lat = setups.get("Klein-first")
    assert [H.elements for H in maximal_fields(lat)] == [(0, 1), (0, 3)]


def test_s3_has_three_maximal_fields():
    setup, _, lat = setups.get("S3-A3")
    tops = maximal_fields(lat)
    assert len(tops) == 3
    G = setup.group
    for H in tops:
        assert H.order == 2
        assert G.element_order(H.elements[1]) == 2


@pytest.mark.parametrize("name", setups.NAMES)
def test_trivial_quotient_forces_trivial_top_subgroup(name):
    setup, _, lat = setups.get(name)
    if setup.quotient_group.order == 1:
        tops = maximal_fields(lat)
        assert len(tops) == 1
        assert tops[0].order == 1


@pytest.mark.parametrize("name", setups.NAMES)
def test_maximality_matches_frattini_restriction(name):
    setup, _, lat = setups.get(name)
    for i, H in enumerate(lat.members):
        assert lat.is_maximal(i) == is_frattini_restriction(H, setup.r)


@pytest.mark.parametrize("name", setups.NAMES)
def test_every_lift_into_a_maximal_member_generates_it(name):
    setup, _, lat = setups.get(name)
    G = setup.group
    r_img = setup.r.image_of
    for H in maximal_fields(lat):
        cosets = [
            [h for h in H.elements if r_img[h] == r_img[s]]
            for s in setup.sigma_prime
        ]
        count = 1
        for c in cosets:
            count *= len(c)
        assert count <= 10**5
        stack = [()]
        for c in cosets:
            stack = [t + (h,) for t in stack for h in c]
        for lift in stack:
            assert G.closure_mask(lift) == H.mask


@pytest.mark.parametrize("name", setups.NAMES)
def test_deterministic_lift_lands_in_the_right_cosets(name):
    setup, _, lat = setups.get(name)
    r_img = setup.r.image_of
    for H in lat.members:
        lift = setup.lift_into(H.mask)
        assert len(lift) == setup.n
        for h, s in zip(lift, setup.sigma_prime):
            assert h in H
            assert r_img[h] == r_img[s]


# -- fix_field ---------------------------------------------------------------


def test_fix_field_of_single_element():
    _, _, lat = setups.get("Klein-first")
    member = fix_field(lat, (1,))
    assert member is not None
    assert member.elements == (0, 1)


def test_fix_field_absent_when_subgroup_fails_to_qualify():
    _, _, lat = setups.get("Z4-g")
    assert fix_field(lat, (2,)) is None


def test_fix_field_of_base_generators():
    setup, K, lat = setups.get("C4xC2-N4")
    member = fix_field(lat, K.elements)
    assert member == lat.members[-1]


def test_fix_field_rejects_elements_outside_base():
    _, _, lat = setups.get("C4xC2-subK")
    with pytest.raises(GroupError, match="outside"):
        fix_field(lat, (1,))


# -- alternative constants validation ---------------------------------------


def test_confirm_n1_accepts_a_frattini_coarsening():
    G = corpus.group("C4xC2")
    setup = make_setup(G, [1], (2,))
    K = Subgroup(G, range(8))
    n1 = Subgroup(G, (4, 1))
    lat = s_lattice(setup, K, confirm_n1=n1)
    assert [H.elements for H in lat.members] == [
        (0, 2, 4, 6),
        (0, 3, 4, 7),
        (0, 1, 2, 3, 4, 5, 6, 7),
    ]


def test_confirm_n1_rejects_a_member_changing_coarsening():
    G = corpus.group("C2xC2")
    setup = make_setup(G, [2], (1,))
    K = Subgroup(G, range(4))
    with pytest.raises(GroupError, match="different member set"):
        s_lattice(setup, K, confirm_n1=Subgroup(G, range(4)))


def test_confirm_n1_must_contain_n():
    G = corpus.group("C4xC2")
    setup = make_setup(G, [2], (1,))
    K = Subgroup(G, range(8))
    with pytest.raises(GroupError, match="contain"):
        s_lattice(setup, K, confirm_n1=Subgroup(G, (1,)))
