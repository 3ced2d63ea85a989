import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from handlebody.acceptance import gamma_word, random_tree
from handlebody.diagrams import (
    CommutatorError, DiagElt, TreeError, colour_trees, commutator_words, diag_to_sder,
    disk_twist_tau1, ell_n_tau1, ell_n_tau1_composite, ell_n_trees, eta_tree, format_laurent,
    format_trees, framed, kk_rhs, mccullough_m, milnor_mu, milnor_square_check,
    parse_commutator, parse_tree, parse_trees, project_mod_R, relation_residuals,
    sder_to_diag, tau_d, tau_d_braid, tree_bracket, tree_derivation_apply, tree_from_matrix,
    tree_present, two_leaf, words_with_exponents,
)
from handlebody.envelope import special_construct
from handlebody.foxcalc import mag01
from handlebody.johnson import sder_bracket, varrho
from handlebody.liefree import a, class_of, zeta_class
from handlebody.words import mul, twist_alpha, twist_boundary

from conftest import G, aelts

HALF = Fraction(-1, 2)


def trees(seed, k):
    return random_tree(random.Random(seed), G, k)


@pytest.mark.parametrize("name", ["AS", "IHX", "multilinearity", "hopf_unit", "hopf_product",
                                  "hopf_inversion", "hopf_coproduct", "bead_out"])
def test_relations_vanish(name):
    assert not relation_residuals(G)[name]


@given(st.integers(0, 10**6), st.integers(1, 2), st.integers(1, 2))
def test_tree_bracket_matches_derivation_bracket(seed, k, l):
    D, E = trees(seed, k), trees(seed + 1, l)
    got = eta_tree(tree_bracket([D], [E]), G)
    want = sder_to_diag(sder_bracket(diag_to_sder(eta_tree(D, G)), diag_to_sder(eta_tree(E, G))))
    assert got == want
    assert got.beta_ok()


@given(st.integers(0, 10**6))
def test_tree_bracket_jacobi(seed):
    D, E, H = ([trees(seed + i, 1)] for i in range(3))
    total = (eta_tree(tree_bracket(D, tree_bracket(E, H)), G)
             + eta_tree(tree_bracket(E, tree_bracket(H, D)), G)
             + eta_tree(tree_bracket(H, tree_bracket(D, E)), G))
    assert not total


@given(st.integers(0, 10**6), st.integers(1, 3))
def test_present_and_frame_preserve_eta(seed, k):
    t = trees(seed, k)
    d = eta_tree(t, G)
    assert eta_tree(framed(t), G) == d
    assert eta_tree(tree_present(d), G) == d


@given(st.integers(0, 10**6), aelts(max_terms=2))
def test_tree_derivation_apply(seed, u):
    t = trees(seed, 1)
    d = diag_to_sder(eta_tree(t, G)).with_trunc(4)
    assert tree_derivation_apply([t], u, G) == d.apply(u)


@given(st.integers(0, 10**6), st.integers(1, 3))
def test_text_roundtrip(seed, k):
    t = trees(seed, k)
    text = format_trees([t])
    assert format_trees(parse_trees(text)) == text
    assert eta_tree(parse_tree(text), G) == eta_tree(t, G)


@pytest.mark.parametrize("bad", ["(tree 1 (node (leaf () 1)))", "(tree 1 (node (leaf () 1) x))",
                                 "(tree 1 (node (bead (x1) (leaf () 1)) (leaf () 2)))",
                                 "(tree 1 (node (leaf () 1) (leaf () 2))"])
def test_parse_rejects(bad):
    with pytest.raises(TreeError):
        parse_tree(bad)


def test_disk_twist_values():
    assert tau_d(twist_alpha(G, 1), 1) == eta_tree(colour_trees(a(1), a(1), HALF), G)
    z = zeta_class(G)
    want = eta_tree(colour_trees(z, z, HALF), G)
    assert tau_d(twist_boundary(G), 1) == want
    assert tree_from_matrix(mag01(twist_boundary(G))) == want


@pytest.mark.parametrize("n", [0, 1, 2])
def test_meridian_classes(n):
    u = class_of(G, gamma_word(G, n), 1)
    assert u == a(1, (-1,)) - a(1, (2,) * n)
    assert disk_twist_tau1(G, gamma_word(G, n)) == eta_tree(colour_trees(u, u, HALF), G)
    assert mccullough_m(disk_twist_tau1(G, gamma_word(G, n))) == {-n - 1: -1, 0: 2, n + 1: -1}
    z = (G + 3,) * n
    ups = mul(z, (2,), tuple(-x for x in reversed(z)), (1,))
    assert class_of(G, ups, 1) == a(2, (3,) * n) + a(1)


def test_mccullough_text():
    assert format_laurent(mccullough_m(tau_d(twist_alpha(G, 1), 1))) == "1"
    assert format_laurent({-2: -1, 0: 2, 2: -1}) == "2 - t^2 - t^-2"


@pytest.mark.parametrize("n", [0, 1, 2, -1])
def test_ell_n_both_paths(n):
    assert ell_n_tau1(n) == ell_n_tau1_composite(n)


def test_ell_zero_is_plain_edge():
    assert ell_n_trees(0) == [two_leaf((2, ()), (1, ()))]


@pytest.mark.parametrize("m,n", [(0, 1), (0, 2), (1, 2), (2, 0)])
def test_infiniteness_projection(m, n):
    rooted, rest = project_mod_R(eta_tree(tree_bracket(ell_n_trees(m), ell_n_trees(n)), G))
    assert rooted == words_with_exponents((0, 1), (m, n))
    assert not any(rest)


def test_milnor_degree_one():
    assert eta_tree(milnor_mu((1, 2)), G) == eta_tree([two_leaf((1, ()), (2, ()))], G)
    assert eta_tree(tau_d_braid((1, 2)), G) == eta_tree([two_leaf((1, ()), (2, ()), (), -1)], G)


@pytest.mark.parametrize("w", [w for k in (1, 2, 3)
                               for w in commutator_words([(1, 2), (1, 3), (2, 3)], k)])
def test_milnor_square(w):
    assert milnor_square_check(w)


@pytest.mark.parametrize("bad", ["[t12,", "[t11,t12]", "t12 t13", "[t12;t13]"])
def test_commutator_parse_rejects(bad):
    with pytest.raises(CommutatorError):
        parse_commutator(bad)


def test_kk_small_genus():
    th = special_construct(2, 3)
    assert kk_rhs(th, (1,), 2) == varrho(twist_alpha(2, 1), th, 2)


def test_diag_zero():
    assert not DiagElt.zero(G)
