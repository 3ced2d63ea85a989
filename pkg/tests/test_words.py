import pytest
from hypothesis import given
from hypothesis import strategies as st

from handlebody.words import (
    CATALOG, NOT_ZETA_FIXING, OK, PI, WordError, apply_endo, aut_F_lift, catalog, elem_d,
    elem_e, endo_from_json, endo_to_json, format_word, handle_slide, handle_swap, in_A,
    mul, parse_word, phi, reduce, twist_alpha, twist_boundary, twist_separating, varpi,
    verify_pair_automorphism, zeta,
)

from conftest import G, piwords


@given(st.lists(st.sampled_from([1, -1, 2, -2, 4, -4]), max_size=12))
def test_reduce_idempotent_and_shrinking(w):
    r = reduce(w)
    assert reduce(r) == r
    assert len(r) <= len(w)
    assert all(r[i] != -r[i + 1] for i in range(len(r) - 1))


@given(piwords(), piwords())
def test_endo_is_multiplicative(u, v):
    f = handle_slide(G, 1) @ twist_boundary(G)
    assert apply_endo(f, mul(u, v)) == mul(apply_endo(f, u), apply_endo(f, v))


@given(piwords(), piwords())
def test_varpi_is_homomorphism(u, v):
    assert varpi(G, mul(u, v)) == reduce(varpi(G, u) + varpi(G, v))


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_zeta_in_A_and_maps_to_one(g):
    assert in_A(g, zeta(g))
    assert varpi(g, zeta(g)) == ()


def test_zeta_genus_one():
    al = PI(1)
    assert format_word(al, zeta(1)) == "a1 b1^-1 a1^-1 b1"


def test_twist_boundary_genus_one_conjugates_by_zeta():
    f = twist_boundary(1)
    z = zeta(1)
    assert f((2,)) == mul(z, (2,), tuple(-a for a in reversed(z)))


def test_phi_image_of_beta():
    b = parse_word(PI(G), "b2 b3^-1")
    f = phi(G, 1, 2, b)
    assert f((G + 1,)) == mul(b, (2,), tuple(-a for a in reversed(b)), (G + 1,))
    assert f((G + 2,)) == (G + 2,) and f((G + 3,)) == (G + 3,)


@pytest.mark.parametrize("f", [
    twist_alpha(G, 1), twist_alpha(G, 3), twist_boundary(G), twist_separating(G, 1, 2),
    twist_separating(G, 1, 3), handle_swap(G, 1), handle_swap(G, 2), handle_slide(G, 1),
    handle_slide(G, 2), handle_slide(G, 1) @ handle_swap(G, 2).inverse(),
])
def test_handlebody_catalog_verifies(f):
    assert verify_pair_automorphism(f) == OK


@pytest.mark.parametrize("f", [
    elem_d(G, 1, -1, (G + 2,)), elem_e(G, 1, 2, (G + 3,)), phi(G, 1, 2, (G + 1,)),
    aut_F_lift(G, [(1, 2), (2,), (3,)], [(1, -2), (2,), (3,)]),
])
def test_group_of_pair_entries(f):
    assert verify_pair_automorphism(f, check_zeta=False) == OK


def test_elem_d_does_not_fix_zeta():
    assert verify_pair_automorphism(elem_d(G, 1, 1, (G + 2,))) == NOT_ZETA_FIXING


def test_catalog_lookup_and_errors():
    assert set(CATALOG) >= {"twist_alpha", "twist_boundary", "elem_d", "elem_e", "phi",
                            "aut_F_lift"}
    assert catalog("twist_alpha", G, 2) == twist_alpha(G, 2)
    with pytest.raises(WordError):
        catalog("nope", G)
    with pytest.raises(WordError):
        twist_alpha(G, 4)


@pytest.mark.parametrize("text", ["", "a1", "a1 b2^-1", "b3^2 a1^-3 b1"])
def test_word_text_roundtrip(text):
    assert format_word(PI(G), parse_word(PI(G), text)) == text


@pytest.mark.parametrize("bad", ["c1", "a4", "a1^x", "a0"])
def test_parse_word_rejects(bad):
    with pytest.raises(WordError):
        parse_word(PI(G), bad)


def test_endo_json_roundtrip():
    f = handle_slide(G, 2)
    g = endo_from_json(endo_to_json(f))
    assert g.images == f.images and g.inverse_images == f.inverse_images
